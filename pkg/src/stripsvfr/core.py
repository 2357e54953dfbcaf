"""Shared vocabulary: weights, worlds, states, operators, goals, agent profiles.

Propositions and values are plain strings; identity is by name. Every type
here is immutable once built.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Tuple

PropId = str
ValueId = str


class VfrError(Exception):
    """Base class for all errors raised by this package."""


class UnknownProposition(VfrError):
    def __init__(self, names: Iterable[str]):
        self.names = tuple(sorted(names))
        super().__init__("unknown proposition(s): " + ", ".join(self.names))


class InconsistentState(VfrError):
    def __init__(self, first: str, second: str):
        self.pair = tuple(sorted((first, second)))
        super().__init__("inconsistent state: %s and %s are incompatible" % self.pair)


class InvalidOperator(VfrError, ValueError):
    pass


class InvalidGoal(VfrError, ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    """A scale level, or indeterminate when ``level`` is None.

    Order comparisons involving an indeterminate weight are always false,
    including ``<=`` and ``>=`` against another indeterminate weight.
    """

    level: Optional[int] = None

    def __post_init__(self):
        if self.level is not None and (not isinstance(self.level, int) or self.level < 0):
            raise ValueError("weight level must be a non-negative integer, got %r" % (self.level,))

    @property
    def determinate(self) -> bool:
        return self.level is not None

    def _compare(self, other, op):
        if not isinstance(other, Weight):
            return NotImplemented
        if self.level is None or other.level is None:
            return False
        return op(self.level, other.level)

    def __lt__(self, other):
        return self._compare(other, operator.lt)

    def __le__(self, other):
        return self._compare(other, operator.le)

    def __gt__(self, other):
        return self._compare(other, operator.gt)

    def __ge__(self, other):
        return self._compare(other, operator.ge)

    def __str__(self):
        return "?" if self.level is None else str(self.level)


INDETERMINATE = Weight(None)


@dataclass(frozen=True)
class Scale:
    levels: Tuple[int, ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise ValueError("scale must have at least one level")
        if any(not isinstance(x, int) or x < 0 for x in levels):
            raise ValueError("scale levels must be non-negative integers")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise ValueError("scale must be strictly increasing")

    def __contains__(self, weight) -> bool:
        if isinstance(weight, Weight):
            return weight.level is None or weight.level in self.levels
        return weight in self.levels


def _names(items: Iterable[str]) -> frozenset:
    if isinstance(items, str):
        raise TypeError("expected a collection of names, got a bare string %r" % items)
    return frozenset(items)


def pair(a: str, b: str) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class World:
    props: frozenset
    values: frozenset
    scale: Scale
    incompat: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "props", _names(self.props))
        object.__setattr__(self, "values", _names(self.values))
        pairs = frozenset(frozenset(p) for p in self.incompat)
        object.__setattr__(self, "incompat", pairs)
        for p in pairs:
            if len(p) != 2:
                raise ValueError("incompatibility pairs must name two distinct propositions")
        unknown = set().union(*pairs) - self.props if pairs else set()
        if unknown:
            raise UnknownProposition(unknown)

    def incompatible(self, a: str, b: str) -> bool:
        return a != b and frozenset((a, b)) in self.incompat

    def sorted_props(self) -> list:
        return sorted(self.props)

    def sorted_pairs(self) -> list:
        return sorted(tuple(sorted(p)) for p in self.incompat)

    def check_known(self, names: Iterable[str]) -> None:
        unknown = set(names) - self.props
        if unknown:
            raise UnknownProposition(unknown)

    def conflicts(self, names: Iterable[str]) -> list:
        """Incompatible pairs present in ``names``, sorted."""
        names = set(names)
        return [p for p in self.sorted_pairs() if p[0] in names and p[1] in names]


@dataclass(frozen=True)
class State:
    """A set of propositions. Use :func:`make_state` to get consistency checks."""

    props: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "props", _names(self.props))

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.props))

    def __len__(self):
        return len(self.props)

    def __contains__(self, p) -> bool:
        return p in self.props

    def sorted(self) -> list:
        return sorted(self.props)

    def __str__(self):
        return "{" + ", ".join(self) + "}"


def make_state(world: World, props: Iterable[str]) -> State:
    if isinstance(props, State):
        props = props.props
    props = _names(props)
    world.check_known(props)
    bad = world.conflicts(props)
    if bad:
        raise InconsistentState(*bad[0])
    return State(props)


@dataclass(frozen=True)
class Operator:
    """STRIPS operator: must-be-true, must-be-false, add and delete sets."""

    name: str
    pre_true: frozenset = frozenset()
    pre_false: frozenset = frozenset()
    add: frozenset = frozenset()
    delete: frozenset = frozenset()

    def __post_init__(self):
        for attr in ("pre_true", "pre_false", "add", "delete"):
            object.__setattr__(self, attr, _names(getattr(self, attr)))
        if not self.name:
            raise InvalidOperator("operator name must be non-empty")
        clash = self.pre_true & self.pre_false
        if clash:
            raise InvalidOperator(
                "operator %s requires %s both true and false" % (self.name, ", ".join(sorted(clash))))
        clash = self.add & self.delete
        if clash:
            raise InvalidOperator(
                "operator %s both adds and deletes %s" % (self.name, ", ".join(sorted(clash))))

    def mentions(self) -> frozenset:
        return self.pre_true | self.pre_false | self.add | self.delete


@dataclass(frozen=True)
class Goal:
    require_true: frozenset = frozenset()
    require_false: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "require_true", _names(self.require_true))
        object.__setattr__(self, "require_false", _names(self.require_false))
        clash = self.require_true & self.require_false
        if clash:
            raise InvalidGoal("goal requires %s both true and false" % ", ".join(sorted(clash)))


@dataclass(frozen=True)
class PlanningProblem:
    world: World
    operators: Tuple[Operator, ...]
    initial: State
    goal: Goal

    def __post_init__(self):
        ops = tuple(self.operators)
        object.__setattr__(self, "operators", ops)
        seen = set()
        for op in ops:
            if op.name in seen:
                raise InvalidOperator("duplicate operator name %s" % op.name)
            seen.add(op.name)
            self.world.check_known(op.mentions())
        self.world.check_known(self.goal.require_true | self.goal.require_false)
        make_state(self.world, self.initial.props)

    def operator(self, name: str) -> Optional[Operator]:
        for op in self.operators:
            if op.name == name:
                return op
        return None


def _frozen_map(m) -> Mapping:
    return MappingProxyType(dict(m))


@dataclass(frozen=True, eq=False)
class AgentProfile:
    """An agent's value thresholds and its per-(value, proposition) assessments.

    Absent entries read as indeterminate, so both maps behave as total functions.
    """

    agent: str
    value_weights: Mapping = field(default_factory=dict)
    prop_assessments: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "value_weights", _frozen_map(self.value_weights))
        object.__setattr__(self, "prop_assessments", _frozen_map(self.prop_assessments))
        for w in list(self.value_weights.values()) + list(self.prop_assessments.values()):
            if not isinstance(w, Weight):
                raise TypeError("profile entries must be Weight instances, got %r" % (w,))

    def __eq__(self, other):
        if not isinstance(other, AgentProfile):
            return NotImplemented
        return (self.agent == other.agent
                and dict(self.value_weights) == dict(other.value_weights)
                and dict(self.prop_assessments) == dict(other.prop_assessments))

    def __hash__(self):
        return hash((self.agent, frozenset(self.value_weights.items()),
                     frozenset(self.prop_assessments.items())))

    def replace(self, value_weights=None, prop_assessments=None) -> "AgentProfile":
        vw = dict(self.value_weights)
        vw.update(value_weights or {})
        pa = dict(self.prop_assessments)
        pa.update(prop_assessments or {})
        return AgentProfile(self.agent, vw, pa)


def lookup_value_weight(profile: AgentProfile, value: ValueId) -> Weight:
    return profile.value_weights.get(value, INDETERMINATE)


def lookup_prop_weight(profile: AgentProfile, value: ValueId, prop: PropId) -> Weight:
    return profile.prop_assessments.get((value, prop), INDETERMINATE)
