"""Compare the depth-first planner against brute-force enumeration on random problems.

    python scripts/oracle_sweep.py --trials 300 --seed 1

Prints one line per mode with agreement counts and the mean number of plans.
"""

import argparse
import random
import sys
from dataclasses import dataclass

from stripsvfr.core import AgentProfile, Goal, Operator, PlanningProblem, Scale, State, Weight, World
from stripsvfr.oracle import oracle_plans
from stripsvfr.planner import InconsistentResult, InvalidEthicalGoal, Mode, SearchConfig, find_plans


@dataclass
class SweepConfig:
    trials: int = 300
    seed: int = 0
    props: int = 6
    operators: int = 5
    depth: int = 4
    values: int = 2


def random_problem(rng: random.Random, cfg: SweepConfig):
    props = ["p%d" % i for i in range(cfg.props)]
    values = ["V%d" % i for i in range(cfg.values)]
    scale = Scale((1, 2, 3))
    world = World(frozenset(props), frozenset(values), scale, frozenset())

    def some(k):
        return frozenset(rng.sample(props, rng.randint(0, k)))

    ops = []
    for i in range(cfg.operators):
        add, pre = some(2), some(2)
        delete = some(2) - add
        ops.append(Operator("o%d" % i, pre, frozenset(), add, delete))
    want = some(2) or frozenset(props[:1])
    initial = State(some(3) - want)
    problem = PlanningProblem(world, tuple(ops), initial, Goal(want, frozenset()))

    def w():
        return Weight(rng.choice((None, 1, 2, 3)))
    profile = AgentProfile("A", {v: w() for v in values},
                           {(v, p): w() for v in values for p in props if rng.random() < 0.3})
    return problem, profile


def outcome(fn, *args):
    try:
        return sorted(p.steps for p in fn(*args))
    except (InconsistentResult, InvalidEthicalGoal) as exc:
        return type(exc).__name__


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = SweepConfig()
    for name, value in vars(defaults).items():
        ap.add_argument("--" + name, type=int, default=value)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    rng = random.Random(cfg.seed)

    disagreements = 0
    for mode in Mode:
        agree = plans = 0
        conf = SearchConfig(mode=mode, max_depth=cfg.depth)
        for _ in range(cfg.trials):
            problem, profile = random_problem(rng, cfg)
            got = outcome(find_plans, problem, profile, conf)
            want = outcome(oracle_plans, problem, profile, conf)
            agree += got == want
            plans += len(got) if isinstance(got, list) else 0
        disagreements += cfg.trials - agree
        print("%-8s agree %d/%d  mean plans %.2f" % (mode.value, agree, cfg.trials, plans / cfg.trials))
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
