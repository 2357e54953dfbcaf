"""Value-relative restrictions on goals and operators."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Tuple

from .core import AgentProfile, Goal, Operator, PlanningProblem, World
from .vfr import prop_base_clean


class Cleaning(str, enum.Enum):
    POSITIVE = "positive"
    VACUOUS = "vacuous"
    VIOLATING = "violating"


@dataclass(frozen=True)
class GoalCheck:
    valid: bool
    outside_base: Tuple[str, ...] = ()
    incompatible_pairs: Tuple[Tuple[str, str], ...] = ()

    def __bool__(self):
        return self.valid

    def messages(self) -> List[str]:
        out = ["goal proposition %s is not acceptable to the agent" % p for p in self.outside_base]
        out += ["goal propositions %s and %s are incompatible" % pr for pr in self.incompatible_pairs]
        return out


def goal_valid(goal: Goal, profile: AgentProfile, world: World) -> GoalCheck:
    """Wanted propositions must all be acceptable to the agent and pairwise compatible.

    The must-be-false half of the goal is unconstrained.
    """
    base = prop_base_clean(profile, world)
    outside = tuple(sorted(goal.require_true - base))
    pairs = tuple(world.conflicts(goal.require_true))
    return GoalCheck(not outside and not pairs, outside, pairs)


def operator_admissible(op: Operator, profile: AgentProfile, world: World) -> bool:
    return op.add <= prop_base_clean(profile, world)


def classify_cleaning(op: Operator, profile: AgentProfile, world: World) -> Cleaning:
    bad = op.pre_true - prop_base_clean(profile, world)
    if not bad:
        return Cleaning.VACUOUS
    if bad <= op.delete:
        return Cleaning.POSITIVE
    return Cleaning.VIOLATING


@dataclass(frozen=True)
class OperatorClassification:
    operator: str
    admissible: bool
    cleaning: Cleaning


def classify_operator(op: Operator, profile: AgentProfile, world: World) -> OperatorClassification:
    return OperatorClassification(
        op.name, operator_admissible(op, profile, world), classify_cleaning(op, profile, world))


def admissible_operators(problem: PlanningProblem, profile: AgentProfile,
                         require_cleaning: bool = False) -> List[Operator]:
    """Operators the agent may use, in declaration order."""
    base = prop_base_clean(profile, problem.world)
    chosen = []
    for op in problem.operators:
        if not op.add <= base:
            continue
        bad = op.pre_true - base
        if require_cleaning and not bad <= op.delete:
            continue
        chosen.append(op)
    return chosen
