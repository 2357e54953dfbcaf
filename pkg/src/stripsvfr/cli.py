"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 unknown agent or operator, 4 invalid
ethical goal, 5 invalid plan. Finding no plans is not an error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .dsl import Document, ParseError, parse_file
from .ethics import classify_operator
from .planner import (InconsistentResult, InvalidEthicalGoal, Mode, PlanError, SearchConfig,
                      UnknownOperator, find_plans, replay, validate_plan)
from .vfr import (compare_agents, cooperation_check, explain_filter, prop_base_clean,
                  prop_base_clean_complement)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_GOAL = 4
EXIT_PLAN = 5


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _fmt(props) -> str:
    return "{" + ", ".join(sorted(props)) + "}"


def _load(path: str) -> Document:
    try:
        return parse_file(path)
    except OSError as exc:
        raise CliFailure(EXIT_PARSE, "cannot read %s: %s" % (path, exc.strerror)) from None
    except ParseError as exc:
        lines = ["%s:%s" % (path, d) for d in exc.diagnostics]
        raise CliFailure(EXIT_PARSE, "\n".join(lines)) from None


def _profile(doc: Document, name: Optional[str]):
    if name is None:
        return None
    if name not in doc.profiles:
        raise CliFailure(EXIT_UNKNOWN, "unknown agent: %s" % name)
    return doc.profiles[name]


def _split(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _two_agents(doc: Document, text: str):
    names = _split(text)
    if len(names) != 2:
        raise CliFailure(EXIT_UNKNOWN, "--agents needs exactly two names, got %r" % text)
    return _profile(doc, names[0]), _profile(doc, names[1])


def _config(args) -> SearchConfig:
    return SearchConfig(mode=Mode(args.mode), require_cleaning=args.require_cleaning,
                        max_depth=args.max_depth, strict_goal=args.strict_goal)


def _search_profile(doc, args):
    if args.mode == Mode.VFR.value and args.agent is None:
        raise CliFailure(EXIT_UNKNOWN, "--mode vfr needs --agent")
    if args.strict_goal and args.agent is None:
        raise CliFailure(EXIT_UNKNOWN, "--strict-goal needs --agent")
    return _profile(doc, args.agent)


# -- report builders: plain dicts, rendered as JSON or as text ----------------

def filter_report(doc: Document, agent: str) -> dict:
    prof = _profile(doc, agent)
    return {
        "agent": agent,
        "propBaseClean": sorted(prop_base_clean(prof, doc.world)),
        "complement": sorted(prop_base_clean_complement(prof, doc.world)),
        "verdicts": [{"prop": v.prop, "passed": v.passed, "failingValues": sorted(v.failing_values)}
                     for v in explain_filter(prof, doc.world)],
    }


def _filter_text(r: dict) -> List[str]:
    out = ["agent: %s" % r["agent"], "propBaseClean: %s" % _fmt(r["propBaseClean"]),
           "complement: %s" % _fmt(r["complement"])]
    for v in r["verdicts"]:
        if v["passed"]:
            out.append("%s: accepted" % v["prop"])
        else:
            out.append("%s: rejected (fails %s)" % (v["prop"], ", ".join(v["failingValues"])))
    return out


def plan_report(doc: Document, args) -> dict:
    prof = _search_profile(doc, args)
    plans = find_plans(doc.problem(), prof, _config(args))
    return {
        "mode": args.mode,
        "agent": args.agent,
        "plans": [{"steps": list(p.steps), "trace": [s.sorted() for s in p.trace]} for p in plans],
        "count": len(plans),
    }


def _trace_lines(steps, trace, indent="  ") -> List[str]:
    out = [indent + _fmt(trace[0])]
    for name, state in zip(steps, trace[1:]):
        out.append("%s%s -> %s" % (indent, name, _fmt(state)))
    return out


def _plan_text(r: dict) -> List[str]:
    out = ["mode: %s" % r["mode"]]
    if r["agent"] is not None:
        out.append("agent: %s" % r["agent"])
    for i, p in enumerate(r["plans"], start=1):
        out.append("plan %d: [%s]" % (i, ", ".join(p["steps"])))
        out.extend(_trace_lines(p["steps"], p["trace"]))
    out.append("plans: %d" % r["count"])
    return out


def validate_report(doc: Document, args) -> dict:
    prof = _search_profile(doc, args)
    steps = _split(args.steps)
    report = {"mode": args.mode, "agent": args.agent, "steps": steps,
              "valid": True, "trace": [], "error": None, "failedStep": None}
    try:
        plan = validate_plan(doc.problem(), steps, prof, _config(args))
    except UnknownOperator as exc:
        raise CliFailure(EXIT_UNKNOWN, "unknown operator: %s" % exc.name) from None
    except PlanError as exc:
        report.update(valid=False, trace=[s.sorted() for s in exc.trace], error=str(exc),
                      failedStep=None if exc.step is None else exc.step + 1)
        return report
    report["trace"] = [s.sorted() for s in plan.trace]
    return report


def _validate_text(r: dict) -> List[str]:
    out = ["mode: %s" % r["mode"]]
    if r["agent"] is not None:
        out.append("agent: %s" % r["agent"])
    out.append("steps: [%s]" % ", ".join(r["steps"]))
    if r["trace"]:
        out.extend(_trace_lines(r["steps"], r["trace"]))
    if r["valid"]:
        out.append("valid: final %s" % _fmt(r["trace"][-1]))
    else:
        out.append("invalid: %s" % r["error"])
    return out


def classify_report(doc: Document, agent: str) -> dict:
    prof = _profile(doc, agent)
    rows = [classify_operator(op, prof, doc.world) for op in doc.operators]
    return {"agent": agent,
            "operators": [{"operator": c.operator, "admissible": c.admissible,
                           "cleaning": c.cleaning.value} for c in rows]}


def _classify_text(r: dict) -> List[str]:
    out = ["agent: %s" % r["agent"]]
    width = max([len(row["operator"]) for row in r["operators"]] + [8])
    out.append("%-*s  %-11s  %s" % (width, "operator", "admissible", "cleaning"))
    for row in r["operators"]:
        out.append("%-*s  %-11s  %s" % (width, row["operator"], "yes" if row["admissible"] else "no",
                                        row["cleaning"]))
    return out


def compare_report(doc: Document, agents: str) -> dict:
    a, b = _two_agents(doc, agents)
    c = compare_agents(a, b, doc.world)
    return {"agents": [a.agent, b.agent], "bothAccept": sorted(c.both_accept),
            "onlyFirst": sorted(c.only_first), "onlySecond": sorted(c.only_second),
            "bothReject": sorted(c.both_reject)}


def _compare_text(r: dict) -> List[str]:
    a, b = r["agents"]
    return ["agents: %s, %s" % (a, b),
            "both accept: %s" % _fmt(r["bothAccept"]),
            "only %s: %s" % (a, _fmt(r["onlyFirst"])),
            "only %s: %s" % (b, _fmt(r["onlySecond"])),
            "both reject: %s" % _fmt(r["bothReject"])]


def coop_report(doc: Document, agents: str, steps_text: str) -> dict:
    a, b = _two_agents(doc, agents)
    steps = _split(steps_text)
    try:
        trace = replay(doc.problem(), steps)
    except UnknownOperator as exc:
        raise CliFailure(EXIT_UNKNOWN, "unknown operator: %s" % exc.name) from None
    except PlanError as exc:
        raise CliFailure(EXIT_PLAN, str(exc)) from None
    result = cooperation_check(a, b, doc.world, trace)
    return {"agents": [a.agent, b.agent], "steps": steps,
            "trace": [s.sorted() for s in trace],
            "offenders": [{"state": i, "prop": p, "agent": who} for i, p, who in result.offenders],
            "cooperative": result.cooperative}


def _coop_text(r: dict) -> List[str]:
    out = ["agents: %s, %s" % tuple(r["agents"]), "steps: [%s]" % ", ".join(r["steps"])]
    for i, state in enumerate(r["trace"]):
        via = "" if i == 0 else "%s -> " % r["steps"][i - 1]
        verdicts = []
        for agent in r["agents"]:
            bad = [o["prop"] for o in r["offenders"] if o["state"] == i and o["agent"] == agent]
            verdicts.append("%s %s" % (agent, "rejects " + ", ".join(bad) if bad else "ok"))
        out.append("state %d: %s%s  [%s]" % (i, via, _fmt(state), "; ".join(verdicts)))
    out.append("cooperative: %s" % ("yes" if r["cooperative"] else "no"))
    return out


# -- argument handling --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfr", description="Value-filtered STRIPS planning.")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="a .vfr domain file")
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--agent")
    search.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.STANDARD.value)
    search.add_argument("--max-depth", type=int, default=32)
    search.add_argument("--require-cleaning", action="store_true")
    search.add_argument("--strict-goal", action="store_true")

    p = sub.add_parser("filter", parents=[common], help="acceptable propositions for an agent")
    p.add_argument("--agent", required=True)
    sub.add_parser("plan", parents=[common, search], help="enumerate plans")
    p = sub.add_parser("validate", parents=[common, search], help="replay and check a plan")
    p.add_argument("--steps", required=True, help="comma-separated operator names")
    p = sub.add_parser("classify", parents=[common], help="admissibility and cleaning per operator")
    p.add_argument("--agent", required=True)
    p = sub.add_parser("compare", parents=[common], help="compare two agents' acceptable sets")
    p.add_argument("--agents", required=True, help="two comma-separated agent names")
    p = sub.add_parser("coop", parents=[common], help="check a trace against two agents")
    p.add_argument("--agents", required=True, help="two comma-separated agent names")
    p.add_argument("--steps", required=True, help="comma-separated operator names")
    return parser


_TEXT = {"filter": _filter_text, "plan": _plan_text, "validate": _validate_text,
         "classify": _classify_text, "compare": _compare_text, "coop": _coop_text}


def build_report(args) -> dict:
    doc = _load(args.file)
    if args.command == "filter":
        return filter_report(doc, args.agent)
    if args.command == "plan":
        return plan_report(doc, args)
    if args.command == "validate":
        return validate_report(doc, args)
    if args.command == "classify":
        return classify_report(doc, args.agent)
    if args.command == "compare":
        return compare_report(doc, args.agents)
    return coop_report(doc, args.agents, args.steps)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("plan", "validate") and args.max_depth < 1:
        parser.error("--max-depth must be at least 1")
    try:
        report = build_report(args)
    except CliFailure as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except InvalidEthicalGoal as exc:
        for line in exc.check.messages():
            print("invalid ethical goal: %s" % line, file=sys.stderr)
        return EXIT_GOAL
    except InconsistentResult as exc:
        # the file's operators break its own incompatibility declarations
        print("model error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE

    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_TEXT[args.command](report)))
    if args.command == "validate" and not report["valid"]:
        return EXIT_PLAN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
