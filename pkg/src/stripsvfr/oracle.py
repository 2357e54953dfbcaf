"""Brute-force plan enumeration, used as a test oracle for the depth-first planner.

Every operator sequence up to the depth bound is generated and replayed on its
own; nothing is shared with the planner's search code. Only small instances
are accepted.
"""

from __future__ import annotations

import itertools
from typing import List, Optional

from .core import (AgentProfile, PlanningProblem, State, VfrError, lookup_prop_weight,
                   lookup_value_weight)
from .ethics import GoalCheck
from .planner import InconsistentResult, InvalidEthicalGoal, Mode, Plan, SearchConfig

MAX_PROPS = 12
MAX_OPERATORS = 10
MAX_DEPTH = 8


class BoundExceeded(VfrError):
    pass


def _acceptable(profile: AgentProfile, values, prop) -> bool:
    for v in values:
        if lookup_prop_weight(profile, v, prop) < lookup_value_weight(profile, v):
            return False
    return True


def oracle_plans(problem: PlanningProblem, profile: Optional[AgentProfile] = None,
                 config: SearchConfig = SearchConfig()) -> List[Plan]:
    world = problem.world
    if len(world.props) > MAX_PROPS or len(problem.operators) > MAX_OPERATORS \
            or config.max_depth > MAX_DEPTH:
        raise BoundExceeded("oracle handles at most %d props, %d operators, depth %d"
                            % (MAX_PROPS, MAX_OPERATORS, MAX_DEPTH))

    good = None
    if profile is not None:
        good = {p for p in world.props if _acceptable(profile, world.values, p)}

    want = set(problem.goal.require_true)
    avoid = set(problem.goal.require_false)
    if config.strict_goal:
        if good is None:
            raise ValueError("strict_goal needs an agent profile")
        avoid |= (set(world.props) - good) - want

    ops = list(problem.operators)
    if config.mode is Mode.VFR:
        if good is None:
            raise ValueError("vfr mode needs an agent profile")
        outside = tuple(sorted(p for p in want if p not in good))
        pairs = tuple(sorted((a, b) for a in want for b in want
                             if a < b and frozenset((a, b)) in world.incompat))
        if outside or pairs:
            raise InvalidEthicalGoal(GoalCheck(False, outside, pairs))
        kept = []
        for op in ops:
            if any(p not in good for p in op.add):
                continue
            if config.require_cleaning and any(
                    p not in good and p not in op.delete for p in op.pre_true):
                continue
            kept.append(op)
        ops = kept

    def is_goal(state):
        return want <= state and not (avoid & state)

    def run(seq):
        """Replay ``seq``; return the trace if it is a plan under the search rules, else None."""
        state = set(problem.initial.props)
        trace = [frozenset(state)]
        for k, op in enumerate(seq):
            if is_goal(state):
                return None
            if not (op.pre_true <= state) or (op.pre_false & state):
                return None
            nxt = (state - op.delete) | op.add
            for a in nxt:
                for b in nxt:
                    if a < b and frozenset((a, b)) in world.incompat:
                        raise InconsistentResult(op.name, _as_state(state), (a, b))
            if nxt <= state or frozenset(nxt) in trace:
                return None
            state = nxt
            trace.append(frozenset(state))
        return trace if is_goal(state) else None

    found = []
    for length in range(config.max_depth + 1):
        for idx in itertools.product(range(len(ops)), repeat=length):
            seq = [ops[i] for i in idx]
            trace = run(seq)
            if trace is not None:
                found.append((idx, seq, trace))
    found.sort(key=lambda item: item[0])
    return [Plan(tuple(op.name for op in seq), tuple(_as_state(s) for s in trace))
            for _, seq, trace in found]


def _as_state(props) -> State:
    return State(frozenset(props))
