"""Value filter over propositions, and comparisons between two agents."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from .core import AgentProfile, State, World, lookup_prop_weight, lookup_value_weight

PassTest = Callable[[AgentProfile, str, str], bool]


def passes_value(profile: AgentProfile, value: str, prop: str) -> bool:
    """True unless the proposition's weight on ``value`` is strictly below the agent's threshold."""
    return not (lookup_prop_weight(profile, value, prop) < lookup_value_weight(profile, value))


def prop_base_clean(profile: AgentProfile, world: World, passes: PassTest = passes_value) -> frozenset:
    """Propositions that pass the agent's filter on every value of the world.

    ``passes`` is the per-value test; the default is the strict threshold test.
    """
    return frozenset(
        p for p in world.props if all(passes(profile, v, p) for v in world.values)
    )


def prop_base_clean_complement(profile: AgentProfile, world: World,
                               passes: PassTest = passes_value) -> frozenset:
    return world.props - prop_base_clean(profile, world, passes)


@dataclass(frozen=True)
class FilterVerdict:
    prop: str
    passed: bool
    failing_values: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "failing_values", frozenset(self.failing_values))
        if self.passed != (not self.failing_values):
            raise ValueError("passed must hold exactly when no value fails")


def explain_filter(profile: AgentProfile, world: World,
                   passes: PassTest = passes_value) -> List[FilterVerdict]:
    verdicts = []
    for p in world.sorted_props():
        failing = frozenset(v for v in world.values if not passes(profile, v, p))
        verdicts.append(FilterVerdict(p, not failing, failing))
    return verdicts


@dataclass(frozen=True)
class AgentComparison:
    both_accept: frozenset
    only_first: frozenset
    only_second: frozenset
    both_reject: frozenset


def compare_agents(a: AgentProfile, b: AgentProfile, world: World) -> AgentComparison:
    base_a = prop_base_clean(a, world)
    base_b = prop_base_clean(b, world)
    return AgentComparison(
        both_accept=base_a & base_b,
        only_first=base_a - base_b,
        only_second=base_b - base_a,
        both_reject=world.props - base_a - base_b,
    )


@dataclass(frozen=True)
class CooperationResult:
    """Outcome of a cooperation check.

    ``offenders`` holds ``(state_index, prop, agent)`` triples, sorted.
    """

    cooperative: bool
    offenders: Tuple[Tuple[int, str, str], ...] = ()

    def __bool__(self):
        return self.cooperative


def cooperation_check(a: AgentProfile, b: AgentProfile, world: World,
                      trace: Sequence[State]) -> CooperationResult:
    """Experimental: every proposition in every state of the trace must be acceptable to both agents."""
    if not trace:
        raise ValueError("cooperation check needs a non-empty trace")
    bases = [(a.agent, prop_base_clean(a, world)), (b.agent, prop_base_clean(b, world))]
    offenders = []
    for i, state in enumerate(trace):
        for p in state:
            for name, base in bases:
                if p not in base:
                    offenders.append((i, p, name))
    return CooperationResult(not offenders, tuple(offenders))
