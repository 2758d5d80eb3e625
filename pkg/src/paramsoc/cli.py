"""Batch command-line front end.

Every invocation prints one JSON record (or a short text rendering) on
standard output and exits with 0 (ok), 1 (no solution) or 2 (error). Indices
in records and files are 1-based.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Optional

from . import __version__
from .errors import ParamSocError, ParseError
from .hedonic import (
    FA, HedonicInstance, Partition, check_witness, ea_nash_exist_fas, fa_core_verify_bounded,
    fa_core_verify_colorcoded, fa_scc_partition, measure_parameters, nash_search_symmetric, verify,
)
from .hedonic.stability import CORE, NASH, STRICT_CORE, check_concept
from .io import (
    format_graph, format_hedonic, format_partition, format_profile, parse_graph, parse_hedonic,
    parse_partition, parse_profile,
)
from .multiwinner import (
    MultiWinnerInstance, evaluate, pav_kernelize, solve_by_committee_enumeration,
    solve_cc_by_voter_partition, solve_cc_xp_misrep, solve_mav_with_deletion_set, solve_pav_score_xp,
)
from .multiwinner.solvers import pav_greedy_small_score
from .oracles import SHAPES, GeneratorSpec, clique_to_cc_instance, generate
from .profiles import (
    PreferenceProfile, deletion_distance, is_single_crossing, is_single_peaked, recognize_sc, recognize_sp,
)

OK, NO_SOLUTION, ERROR = "ok", "no_solution", "error"
EXIT = {OK: 0, NO_SOLUTION: 1, ERROR: 2}
TIME_LIMIT_ENV = "PARAMSOC_TIME_LIMIT"
ENUM_LIMIT = 10**6
PARTITION_VOTERS = 10


class TimeLimitExceeded(Exception):
    pass


class VerificationFailed(Exception):
    pass


@contextmanager
def _time_limit(seconds: Optional[float]):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def fire(signum, frame):
        raise TimeLimitExceeded(f"time limit of {seconds} s exceeded")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _one(xs) -> list[int]:
    return [x + 1 for x in xs]


def _number(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise VerificationFailed(what)


# ---------------------------------------------------------------- multiwinner

def _auto_algo(inst: MultiWinnerInstance, rule: str) -> str:
    p, k = inst.profile, inst.k
    if rule == "pav" and inst.bound is not None:
        active = sum(1 for s in p.approval_sets if s)
        return "greedy" if inst.bound <= min(k, active) else "kernel"
    if comb(p.m, k) <= ENUM_LIMIT:
        return "enum"
    if rule == "cc" and p.n <= PARTITION_VOTERS:
        return "partition"
    if rule == "cc" and p.is_linear and inst.bound is not None:
        return "xp-misrep"
    return "enum"


def _solve_kernel(inst: MultiWinnerInstance, node_budget):
    out = pav_kernelize(inst)
    if out.verdict == "yes":
        return out.witness
    red = out.reduced_instance
    sol = solve_pav_score_xp(red, node_budget) if red.profile.n else None
    if sol is None:
        return None
    chosen = {out.alt_map[a] for a in sol.committee}
    for a in range(inst.profile.m):
        if len(chosen) >= inst.k:
            break
        chosen.add(a)
    return evaluate(inst.profile, "pav", sorted(chosen), "kernel")


def _meets(rule: str, objective, bound) -> bool:
    if bound is None:
        return True
    return objective >= bound if rule == "pav" else objective <= bound


def cmd_mw_solve(args) -> tuple[str, dict]:
    profile = parse_profile(_read(args.profile))
    rule = args.rule
    bound = args.bound if args.bound is not None else args.score
    inst = MultiWinnerInstance(profile, args.k, None if bound is None else Fraction(bound))
    algo = args.algo if args.algo != "auto" else _auto_algo(inst, rule)
    budget = args.node_budget
    if algo == "enum":
        sol = solve_by_committee_enumeration(inst, rule, budget)
    elif algo == "partition":
        sol = solve_cc_by_voter_partition(inst, budget)
    elif algo == "xp-misrep":
        sol = solve_cc_xp_misrep(inst, budget)
    elif algo == "greedy":
        sol = pav_greedy_small_score(inst)
    elif algo == "kernel":
        sol = _solve_kernel(inst, budget)
    elif algo == "xp-score":
        sol = solve_pav_score_xp(inst, budget)
    else:  # deletion-set
        deleted = [int(a) - 1 for a in (args.deleted or "").split(",") if a.strip()]
        sol = solve_mav_with_deletion_set(inst, deleted)
    payload = {"rule": rule, "k": inst.k, "algo": algo}
    if bound is not None:
        payload["bound"] = _number(inst.bound)
    if sol is None or not _meets(rule, sol.objective, inst.bound):
        return NO_SOLUTION, payload
    check = evaluate(profile, rule, sol.committee)
    _require(check.objective == sol.objective, "committee objective does not recompute")
    payload.update(committee=_one(sol.committee), objective=_number(sol.objective))
    if sol.assignment is not None:
        payload["assignment"] = _one(sol.assignment)
    return OK, payload


def _check_axis(profile: PreferenceProfile, structure: str, order) -> None:
    ok = is_single_peaked(profile, order) if structure == "sp" else is_single_crossing(profile, order)
    _require(ok, "axis does not re-validate")


def cmd_mw_recognize(args) -> tuple[str, dict]:
    profile = parse_profile(_read(args.profile))
    axis = (recognize_sp if args.structure == "sp" else recognize_sc)(profile)
    payload = {"structure": args.structure}
    if axis is None:
        return NO_SOLUTION, payload
    _check_axis(profile, args.structure, axis.order)
    payload.update(target=axis.target, axis=_one(axis.order))
    return OK, payload


def cmd_mw_delete(args) -> tuple[str, dict]:
    profile = parse_profile(_read(args.profile))
    universe = profile.n if args.mode == "voters" else profile.m
    budget = universe if args.budget is None else args.budget
    cert = deletion_distance(profile, args.structure, args.mode, budget)
    payload = {"structure": args.structure, "mode": args.mode, "budget": budget}
    if cert is None:
        return NO_SOLUTION, payload
    keep = [e for e in range(universe) if e not in set(cert.removed)]
    if args.mode == "voters":
        sub = profile.restrict(voters=keep)
    else:
        sub = profile.restrict(alternatives=keep)
    order = list(cert.axis.order)
    if cert.axis.target == args.mode:
        local = {e: i for i, e in enumerate(keep)}
        order = [local[e] for e in order]
    _check_axis(sub, args.structure, order)
    payload.update(removed=_one(cert.removed), distance=len(cert.removed),
                   target=cert.axis.target, axis=_one(cert.axis.order))
    return OK, payload


# ---------------------------------------------------------------- hedonic

def _witness_payload(w) -> dict:
    out = {"kind": w.kind, "agents": _one(sorted(w.agents))}
    if w.target is not None:
        out["target"] = _one(sorted(w.target))
    return out


def cmd_hg_verify(args) -> tuple[str, dict]:
    inst = parse_hedonic(_read(args.instance))
    part = parse_partition(_read(args.partition), inst.n)
    concept = check_concept(args.concept)
    payload = {"concept": concept, "algo": args.algo}
    budget = args.node_budget
    if args.algo == "exact":
        w = verify(inst, part, concept, node_budget=budget) if budget else verify(inst, part, concept)
    else:
        if inst.model != FA or concept not in (CORE, STRICT_CORE):
            raise ParamSocError("bounded and colorcode verification need an fa instance and concept core or score")
        if args.algo == "bounded":
            w = fa_core_verify_bounded(inst, part, "strict" if concept == CORE else "weak")
        else:
            if concept != CORE:
                raise ParamSocError("colorcode verification decides the core only")
            w = fa_core_verify_colorcoded(inst, part, args.delta, args.seed)
            payload.update(delta=args.delta, seed=args.seed)
    payload["stable"] = w is None
    if w is not None:
        _require(check_witness(inst, part, w), "witness does not re-verify")
        payload["witness"] = _witness_payload(w)
    return OK, payload


def cmd_hg_solve(args) -> tuple[str, dict]:
    inst = parse_hedonic(_read(args.instance))
    payload = {"concept": args.concept}
    if args.concept == "score-fa":
        part, check = fa_scc_partition(inst), STRICT_CORE
    elif args.concept == "nash-sym":
        ledger: list[int] = []
        part, check = nash_search_symmetric(inst, ledger=ledger), NASH
        payload["moves"] = len(ledger)
        payload["welfare"] = ledger[-1] if ledger else 0
    else:
        part, check = ea_nash_exist_fas(inst), NASH
    if part is None:
        return NO_SOLUTION, payload
    if inst.n <= 20:
        _require(verify(inst, part, check) is None, "partition does not re-verify")
    payload["partition"] = [_one(c) for c in part.as_lists()]
    return OK, payload


def cmd_hg_params(args) -> tuple[str, dict]:
    inst = parse_hedonic(_read(args.instance))
    part = parse_partition(_read(args.partition), inst.n) if args.partition else None
    rep = measure_parameters(inst, part)
    payload = rep.as_dict()
    payload["feedback_set"] = [_one(a) for a in rep.feedback_set]
    return OK, payload


# ---------------------------------------------------------------- generators

def _emit_text(text: str, out: Optional[str], payload: dict) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        payload["path"] = out
    else:
        payload["text"] = text


def cmd_gen_clique(args) -> tuple[str, dict]:
    graph = parse_graph(_read(args.graph), args.h)
    inst = clique_to_cc_instance(graph, literal_blockers=args.literal_blockers)
    payload = {"k": inst.k, "bound": _number(inst.bound), "m": inst.profile.m, "n": inst.profile.n,
               "graph": format_graph(graph).strip()}
    _emit_text(format_profile(inst.profile, f"clique-cc h={graph.h} k={inst.k} R={inst.bound}"),
               args.out, payload)
    return OK, payload


def cmd_gen_random(args) -> tuple[str, dict]:
    params = {}
    for item in args.param or []:
        key, _, value = item.partition("=")
        params[key.strip()] = value.strip()
    spec = GeneratorSpec(args.seed, args.shape, params)
    obj = generate(spec)
    if isinstance(obj, PreferenceProfile):
        text = format_profile(obj, spec.header())
    else:
        text = format_hedonic(obj, spec.header())
    payload = {"shape": spec.shape, "generator": spec.header()}
    _emit_text(text, args.out, payload)
    return OK, payload


# ---------------------------------------------------------------- replay

def _comparable(record: dict) -> dict:
    return {k: v for k, v in record.items() if k != "elapsed"}


def cmd_replay(args) -> tuple[str, dict]:
    """Re-run golden fixtures: JSON files with ``argv`` and ``expected`` record."""
    root = Path(args.fixtures)
    files = sorted(root.glob("*.json")) if root.is_dir() else [root]
    results = []
    for f in files:
        case = json.loads(f.read_text(encoding="utf-8"))
        base = Path(case.get("cwd", f.parent))
        argv = [a.replace("{dir}", str(base)) for a in case["argv"]]
        record, _ = run(argv)
        expected = case["expected"]
        got = _comparable(record)
        got["command"] = case["argv"]
        want = dict(_comparable(expected), command=case["argv"])
        results.append({"fixture": f.name, "match": got == want})
    bad = [r["fixture"] for r in results if not r["match"]]
    payload = {"fixtures": len(results), "mismatches": bad}
    return (OK if not bad else ERROR), payload


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", choices=("record", "text"), default="record")
    p.add_argument("--time-limit", type=float, default=None,
                   help=f"seconds; defaults to ${TIME_LIMIT_ENV} when set")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--omit-elapsed", action="store_true", help="drop wall time from the record")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paramsoc", description="Committee elections and hedonic games.")
    parser.add_argument("--version", action="version", version=f"paramsoc {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    mw = groups.add_parser("mw", help="multi-winner elections").add_subparsers(dest="cmd", required=True)
    p = mw.add_parser("solve")
    p.add_argument("--rule", choices=("monroe", "cc", "mav", "pav"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--profile", required=True)
    b = p.add_mutually_exclusive_group()
    b.add_argument("--bound", type=Fraction, help="misrepresentation bound R")
    b.add_argument("--score", type=Fraction, help="PAV score bound S")
    p.add_argument("--algo", default="auto",
                   choices=("auto", "enum", "partition", "xp-misrep", "greedy", "kernel", "xp-score", "deletion-set"))
    p.add_argument("--deleted", help="comma-separated alternatives for --algo deletion-set")
    _common(p)
    p.set_defaults(func=cmd_mw_solve)
    p = mw.add_parser("recognize")
    p.add_argument("--structure", choices=("sp", "sc"), required=True)
    p.add_argument("--profile", required=True)
    _common(p)
    p.set_defaults(func=cmd_mw_recognize)
    p = mw.add_parser("delete")
    p.add_argument("--structure", choices=("sp", "sc"), required=True)
    p.add_argument("--mode", choices=("voters", "alternatives"), required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--profile", required=True)
    _common(p)
    p.set_defaults(func=cmd_mw_delete)

    hg = groups.add_parser("hg", help="hedonic games").add_subparsers(dest="cmd", required=True)
    p = hg.add_parser("verify")
    p.add_argument("--concept", choices=("nash", "is", "core", "score"), required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--algo", choices=("exact", "bounded", "colorcode"), default="exact")
    p.add_argument("--delta", type=float, default=1e-3)
    _common(p)
    p.set_defaults(func=cmd_hg_verify)
    p = hg.add_parser("solve")
    p.add_argument("--concept", choices=("score-fa", "nash-sym", "nash-ea"), required=True)
    p.add_argument("--instance", required=True)
    _common(p)
    p.set_defaults(func=cmd_hg_solve)
    p = hg.add_parser("params")
    p.add_argument("--instance", required=True)
    p.add_argument("--partition")
    _common(p)
    p.set_defaults(func=cmd_hg_params)

    gen = groups.add_parser("gen", help="instance generators").add_subparsers(dest="cmd", required=True)
    p = gen.add_parser("clique-cc")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--literal-blockers", action="store_true",
                   help="use n and m dummies per blocker set instead of at least R - 1")
    p.add_argument("--out")
    _common(p)
    p.set_defaults(func=cmd_gen_clique)
    p = gen.add_parser("random")
    p.add_argument("--shape", choices=sorted(SHAPES), required=True)
    p.add_argument("--param", action="append", help="shape parameter key=value (repeatable)")
    p.add_argument("--out")
    _common(p)
    p.set_defaults(func=cmd_gen_random)

    p = groups.add_parser("replay", help="re-run golden fixtures")
    p.add_argument("fixtures", help="fixture JSON file or directory")
    _common(p)
    p.set_defaults(func=cmd_replay, cmd=None)
    return parser


def run(argv: list[str]) -> tuple[dict, str]:
    """Execute one command; returns the result record and the output style."""
    args = build_parser().parse_args(argv)
    limit = args.time_limit
    if limit is None and os.environ.get(TIME_LIMIT_ENV):
        limit = float(os.environ[TIME_LIMIT_ENV])
    start = time.perf_counter()
    try:
        with _time_limit(limit):
            status, payload = args.func(args)
    except (ParamSocError, VerificationFailed, TimeLimitExceeded, OSError) as exc:
        status = ERROR
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            payload.update(code=exc.code, line=exc.line)
    record = {"command": list(argv), "status": status, "payload": payload, "seed": args.seed}
    if not args.omit_elapsed:
        record["elapsed"] = round(time.perf_counter() - start, 6)
    return record, args.output


def render_text(record: dict) -> str:
    lines = [f"status: {record['status']}"]
    for key, value in record["payload"].items():
        if key == "text":
            lines.append(value.rstrip("\n"))
        else:
            lines.append(f"{key}: {json.dumps(value) if isinstance(value, (list, dict)) else value}")
    if "elapsed" in record:
        lines.append(f"elapsed: {record['elapsed']}")
    return "\n".join(lines)


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    record, style = run(argv)
    if record["status"] == ERROR:
        print(record["payload"].get("message", ""), file=sys.stderr)
    if style == "text":
        print(render_text(record))
    else:
        print(json.dumps(record, sort_keys=True))
    return EXIT[record["status"]]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
