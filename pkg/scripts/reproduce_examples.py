"""Recompute the worked examples from the bundled fixtures and print each result.

    python scripts/reproduce_examples.py [--fixtures DIR]

Exits non-zero if any computed value differs from the expected one.
"""

import argparse
import sys
from pathlib import Path

from stripsvfr import (Mode, SearchConfig, classify_cleaning, explain_filter, find_plans,
                       operator_admissible, parse_file, prop_base_clean, validate_plan)

DEFAULT_FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _fmt(props):
    return "{" + ", ".join(sorted(props)) + "}"


class Report:
    def __init__(self):
        self.failures = 0

    def check(self, label, got, want):
        ok = got == want
        self.failures += not ok
        print("%-4s %s: %s" % ("ok" if ok else "FAIL", label, got if ok else "%r != %r" % (got, want)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures", type=Path, default=DEFAULT_FIXTURES)
    args = ap.parse_args(argv)
    fx = args.fixtures
    r = Report()

    doc = parse_file(fx / "table1.vfr")
    a = doc.profile("A")
    r.check("table 1 acceptable set", _fmt(prop_base_clean(a, doc.world)), "{p2, p3, p4}")
    failing = {v.prop: sorted(v.failing_values) for v in explain_filter(a, doc.world) if not v.passed}
    r.check("table 1 rejections", failing, {"p1": ["P"]})

    doc = parse_file(fx / "example2.vfr")
    a = doc.profile("A")
    r.check("example 2 admissible", {op.name: operator_admissible(op, a, doc.world)
                                     for op in doc.operators}, {"a1": True, "a2": False})

    vfr = SearchConfig(mode=Mode.VFR)
    doc = parse_file(fx / "example3.vfr")
    problem, a = doc.problem(), doc.profile("A")
    plans = find_plans(problem, a, vfr)
    r.check("example 3 vfr plans", [(list(p.steps), _fmt(p.final)) for p in plans],
            [(["O1", "O3"], "{p2, p3, p4}"), (["O2", "O3"], "{p1, p2, p3, p4}")])
    r.check("example 3 query [O1, O3]", _fmt(validate_plan(problem, ["O1", "O3"], a, vfr).final),
            "{p2, p3, p4}")

    doc = parse_file(fx / "example3_o3prime.vfr")
    problem, a = doc.problem(), doc.profile("A")
    r.check("with O3' standard count", len(find_plans(problem, a)), 4)
    plans = find_plans(problem, a, vfr)
    r.check("with O3' vfr plans", [list(p.steps) for p in plans], [["O1", "O3"], ["O2", "O3"]])
    strict = SearchConfig(mode=Mode.VFR, strict_goal=True)
    r.check("with O3' strict vfr plans", [list(p.steps) for p in find_plans(problem, a, strict)],
            [["O1", "O3"]])

    doc = parse_file(fx / "cleaning.vfr")
    a = doc.profile("A")
    r.check("cleaning", {op.name: classify_cleaning(op, a, doc.world).value for op in doc.operators},
            {"O1": "positive", "O2": "vacuous", "O3": "vacuous", "O1'": "violating"})

    print("%d mismatches" % r.failures)
    return 1 if r.failures else 0


if __name__ == "__main__":
    sys.exit(main())
