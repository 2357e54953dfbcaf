"""Hypothesis strategies for random worlds, profiles, problems and documents."""

import functools
import itertools

from hypothesis import strategies as st

from stripsvfr.core import (INDETERMINATE, AgentProfile, Goal, Operator, PlanningProblem, Scale,
                            State, Weight, World)
from stripsvfr.dsl import Document


@st.composite
def scales(draw):
    levels = draw(st.sets(st.integers(0, 6), min_size=1, max_size=4))
    return Scale(tuple(sorted(levels)))


@st.composite
def worlds(draw, min_props=1, max_props=6, max_values=3, incompat=True):
    n = draw(st.integers(min_props, max_props))
    props = ["p%d" % i for i in range(n)]
    values = ["V%d" % i for i in range(draw(st.integers(0, max_values)))]
    pairs = []
    if incompat and n >= 2:
        pairs = draw(st.lists(st.sampled_from(list(itertools.combinations(props, 2))),
                              max_size=3, unique=True))
    return World(frozenset(props), frozenset(values), draw(scales()), frozenset(map(frozenset, pairs)))


def weights(scale):
    return st.one_of(st.just(INDETERMINATE), st.sampled_from(scale.levels).map(Weight))


@st.composite
def profiles(draw, world, name="A"):
    vw = {}
    for v in sorted(world.values):
        if draw(st.integers(0, 5)):
            vw[v] = draw(weights(world.scale))
    pa = {}
    for v in sorted(world.values):
        for p in world.sorted_props():
            if draw(st.integers(0, 5)):
                pa[(v, p)] = draw(weights(world.scale))
    return AgentProfile(name, vw, pa)


@st.composite
def operators(draw, world, name):
    x, y, z, t = set(), set(), set(), set()
    for p in world.sorted_props():
        pre = draw(st.sampled_from("..xy" if len(world.props) > 4 else ".xy"))
        eff = draw(st.sampled_from(".zt"))
        {"x": x, "y": y}.get(pre, set()).add(p)
        {"z": z, "t": t}.get(eff, set()).add(p)
    return Operator(name, frozenset(x), frozenset(y), frozenset(z), frozenset(t))


def consistent_subset(world, props):
    kept = []
    for p in sorted(props):
        if not any(world.incompatible(p, q) for q in kept):
            kept.append(p)
    return frozenset(kept)


@st.composite
def goals(draw, world):
    n, m = set(), set()
    for p in world.sorted_props():
        side = draw(st.sampled_from("...nm"))
        {"n": n, "m": m}.get(side, set()).add(p)
    return Goal(frozenset(n), frozenset(m))


@st.composite
def problems(draw, max_props=6, max_ops=5, incompat=True):
    world = draw(worlds(max_props=max_props, incompat=incompat))
    n_ops = draw(st.integers(0, max_ops))
    ops = [draw(operators(world, "O%d" % i)) for i in range(n_ops)]
    init = consistent_subset(world, draw(st.sets(st.sampled_from(world.sorted_props()))))
    return PlanningProblem(world, tuple(ops), State(init), draw(goals(world)))


@st.composite
def documents(draw):
    problem = draw(problems(max_props=5, max_ops=4))
    n_agents = draw(st.integers(0, 3))
    profs = {}
    for i in range(n_agents):
        name = "Ag%d" % i
        profs[name] = draw(profiles(problem.world, name))
    return Document(problem.world, profs, problem.operators, problem.initial, problem.goal)


@functools.lru_cache(maxsize=None)
def _subsets(names, min_size, max_size):
    return st.sets(st.sampled_from(names), min_size=min_size, max_size=max_size)


@st.composite
def sparse_operators(draw, world, name):
    """Operators touching only a few propositions, so they fire often in large worlds."""
    props = tuple(world.sorted_props())
    x = draw(_subsets(props, 0, 2))
    y = draw(_subsets(props, 0, 1)) - x
    z = draw(_subsets(props, 1, 3))
    t = draw(_subsets(props, 0, 2)) - z
    return Operator(name, frozenset(x), frozenset(y), frozenset(z), frozenset(t))


@functools.lru_cache(maxsize=None)
def _weight_maps(keys, levels, max_size):
    return st.dictionaries(st.sampled_from(keys), weights(Scale(levels)), max_size=max_size)


@st.composite
def sparse_profiles(draw, world, name="A"):
    if not world.values:
        return AgentProfile(name)
    values = tuple(sorted(world.values))
    pairs = tuple(itertools.product(values, world.sorted_props()))
    vw = draw(_weight_maps(values, world.scale.levels, None))
    pa = draw(_weight_maps(pairs, world.scale.levels, 2 * len(world.props)))
    return AgentProfile(name, vw, pa)
