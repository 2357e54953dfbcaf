"""Successor semantics and depth-first enumeration of plans.

Search rules, applied to every branch:

* a move from ``s`` to ``s2`` is taken only when ``s2`` is not a subset of ``s``;
* no state repeats along the current path;
* a branch stops, emitting a plan, at the first state satisfying the goal;
* branches are cut at ``max_depth`` steps.

Operators are tried in declaration order, so plans come out ordered
lexicographically by step sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .core import (AgentProfile, Goal, InconsistentState, Operator, PlanningProblem, State,
                   VfrError, World, make_state)
from .ethics import GoalCheck, admissible_operators, goal_valid
from .vfr import prop_base_clean_complement


class Mode(str, enum.Enum):
    STANDARD = "standard"
    VFR = "vfr"


class NotApplicable(VfrError):
    pass


class InconsistentResult(VfrError):
    def __init__(self, op: str, state: State, pair: Tuple[str, str]):
        self.operator = op
        self.state = state
        self.pair = pair
        super().__init__("applying %s at %s makes %s and %s hold together" % ((op, state) + tuple(pair)))


class InvalidEthicalGoal(VfrError):
    def __init__(self, check: GoalCheck):
        self.check = check
        super().__init__("invalid ethical goal: " + "; ".join(check.messages()))


class PlanError(VfrError):
    """Replay failure. ``step`` is 0-based; ``trace`` holds the states reached so far."""

    def __init__(self, message: str, step: Optional[int] = None, trace: Sequence[State] = ()):
        self.step = step
        self.trace = tuple(trace)
        super().__init__(message)


class UnknownOperator(PlanError):
    def __init__(self, name: str, step: int):
        self.name = name
        super().__init__("unknown operator %s" % name, step)


class NotApplicableAt(PlanError):
    def __init__(self, name: str, step: int, trace):
        self.name = name
        super().__init__("operator %s not applicable at step %d" % (name, step + 1), step, trace)


class InadmissibleOperator(PlanError):
    def __init__(self, name: str, step: int, trace):
        self.name = name
        super().__init__("inadmissible operator %s at step %d" % (name, step + 1), step, trace)


class GoalNotSatisfied(PlanError):
    def __init__(self, trace):
        super().__init__("final state %s does not satisfy the goal" % trace[-1], None, trace)


@dataclass(frozen=True)
class SearchConfig:
    mode: Mode = Mode.STANDARD
    require_cleaning: bool = False
    max_depth: int = 32
    strict_goal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not isinstance(self.max_depth, int) or self.max_depth < 1:
            raise ValueError("max_depth must be a positive integer")


@dataclass(frozen=True)
class Plan:
    steps: Tuple[str, ...]
    trace: Tuple[State, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "trace", tuple(self.trace))
        if len(self.trace) != len(self.steps) + 1:
            raise ValueError("trace must hold one state more than there are steps")

    @property
    def final(self) -> State:
        return self.trace[-1]


def applicable(op: Operator, state: State) -> bool:
    return op.pre_true <= state.props and not (op.pre_false & state.props)


def succ(state: State, op: Operator, world: World) -> State:
    if not applicable(op, state):
        raise NotApplicable("operator %s is not applicable at %s" % (op.name, state))
    try:
        return make_state(world, (state.props - op.delete) | op.add)
    except InconsistentState as exc:
        raise InconsistentResult(op.name, state, exc.pair) from None


def satisfied(state: State, goal: Goal) -> bool:
    return goal.require_true <= state.props and not (goal.require_false & state.props)


def effective_goal(problem: PlanningProblem, profile: Optional[AgentProfile],
                   config: SearchConfig) -> Goal:
    """The problem's goal, widened with the agent's rejected propositions under ``strict_goal``."""
    goal = problem.goal
    if not config.strict_goal:
        return goal
    if profile is None:
        raise ValueError("strict_goal needs an agent profile")
    rejected = prop_base_clean_complement(profile, problem.world)
    return Goal(goal.require_true, goal.require_false | (rejected - goal.require_true))


def _operator_pool(problem, profile, config) -> List[Operator]:
    if config.mode is Mode.STANDARD:
        return list(problem.operators)
    if profile is None:
        raise ValueError("vfr mode needs an agent profile")
    return admissible_operators(problem, profile, config.require_cleaning)


def _check_goal(problem, profile, config) -> Goal:
    goal = effective_goal(problem, profile, config)
    if config.mode is Mode.VFR:
        check = goal_valid(goal, profile, problem.world)
        if not check:
            raise InvalidEthicalGoal(check)
    return goal


def find_plans(problem: PlanningProblem, profile: Optional[AgentProfile] = None,
               config: SearchConfig = SearchConfig()) -> List[Plan]:
    pool = _operator_pool(problem, profile, config)
    goal = _check_goal(problem, profile, config)
    world = problem.world
    plans: List[Plan] = []
    steps: List[str] = []
    trace: List[State] = [problem.initial]
    on_path = {problem.initial.props}

    def visit(state: State) -> None:
        if satisfied(state, goal):
            plans.append(Plan(tuple(steps), tuple(trace)))
            return
        if len(steps) >= config.max_depth:
            return
        for op in pool:
            if not applicable(op, state):
                continue
            nxt = succ(state, op, world)
            if nxt.props <= state.props or nxt.props in on_path:
                continue
            steps.append(op.name)
            trace.append(nxt)
            on_path.add(nxt.props)
            visit(nxt)
            on_path.discard(nxt.props)
            trace.pop()
            steps.pop()

    visit(problem.initial)
    return plans


def replay(problem: PlanningProblem, steps: Sequence[str],
           allowed: Optional[Sequence[Operator]] = None) -> Tuple[State, ...]:
    """Fold ``succ`` over named steps from the initial state, returning the trace.

    When ``allowed`` is given, any operator outside it raises InadmissibleOperator.
    """
    allowed_names = None if allowed is None else {op.name for op in allowed}
    trace = [problem.initial]
    for i, name in enumerate(steps):
        op = problem.operator(name)
        if op is None:
            raise UnknownOperator(name, i)
        if allowed_names is not None and name not in allowed_names:
            raise InadmissibleOperator(name, i, trace)
        if not applicable(op, trace[-1]):
            raise NotApplicableAt(name, i, trace)
        trace.append(succ(trace[-1], op, problem.world))
    return tuple(trace)


def validate_plan(problem: PlanningProblem, steps: Sequence[str],
                  profile: Optional[AgentProfile] = None,
                  config: SearchConfig = SearchConfig()) -> Plan:
    allowed = None
    if config.mode is Mode.VFR:
        allowed = _operator_pool(problem, profile, config)
    goal = effective_goal(problem, profile, config)
    trace = replay(problem, steps, allowed)
    if not satisfied(trace[-1], goal):
        raise GoalNotSatisfied(trace)
    return Plan(tuple(steps), trace)
