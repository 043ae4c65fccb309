"""Command-line entry point.

Exit codes: 0 when the check or suite passes, 1 when it fails, 2 on usage or
parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .algebra import (
    BoundExceeded,
    DEFAULT_CONGRUENCE_BOUND,
    DEFAULT_PREORDER_BOUND,
    FiniteAlgebra,
    enumerate_congruences,
    enumerate_stable_preorders,
    find_incompatibility,
    syntactic_congruence,
    syntactic_preorder,
)
from .arith import (
    DEFAULT_WINDOW,
    WindowTooSmall,
    check_clause_a,
    check_clause_b,
    check_clause_c,
    check_cp_nat,
    check_spp_nat,
    floor_e_factorial,
    zigzag_f,
    zigzag_g,
)
from .closure import FiniteUniverse, PreconditionError, latt
from .harness import (
    MAX_TABLE1_SIZE,
    SuiteReport,
    run_group_suite,
    run_ring_suite,
    run_table1_suite,
    verify_nat_suite,
)
from .nat import latt_suc, lasso_quotient, syntactic_cong_up
from .textio import ParseError, format_algebra, load_algebra, parse_function, parse_subset, parse_upset
from .upset import describe_upset, format_upset


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, payload: dict[str, Any], lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _load(target: str) -> FiniteAlgebra | None:
    return None if target == "nat" else load_algebra(target)


def _relation_rows(rows: Sequence[int], n: int) -> list[str]:
    return ["".join("1" if r >> y & 1 else "." for y in range(n)) for r in rows]


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> int:
    alg = load_algebra(args.algebra)
    cong = enumerate_congruences(alg, args.bound or DEFAULT_CONGRUENCE_BOUND)
    pres = enumerate_stable_preorders(alg, args.bound or DEFAULT_PREORDER_BOUND)
    payload = {
        "command": "analyze",
        "ok": True,
        "result": {
            "carrier": alg.size,
            "operations": [{"name": o.name, "arity": o.arity} for o in alg.operations],
            "congruences": [str(c) for c in cong],
            "stable_preorders": [_relation_rows(p.rows, alg.size) for p in pres],
            "counts": {"congruences": len(cong), "stable_preorders": len(pres),
                       "symmetric_preorders": sum(p.is_symmetric() for p in pres)},
        },
    }
    lines = [f"carrier {alg.size}, {len(alg.operations)} operation(s)",
             f"congruences: {len(cong)}"]
    lines += [f"  {c}" for c in cong]
    lines.append(f"stable preorders: {len(pres)}")
    for p in pres:
        lines.append("  " + " ".join(_relation_rows(p.rows, alg.size)))
    _emit(args, payload, lines)
    return 0


def cmd_syntactic(args: argparse.Namespace) -> int:
    alg = _load(args.target)
    if alg is None:
        L = parse_upset(args.set)
        c = syntactic_cong_up(L)
        payload = {"command": "syntactic", "ok": True,
                   "result": {"set": format_upset(L), "congruence": {"a": c.a, "k": c.k}, "display": str(c)}}
        _emit(args, payload, [str(c)])
        return 0
    mask = parse_subset(args.set, alg.size)
    c = syntactic_congruence(alg, mask)
    p = syntactic_preorder(alg, mask)
    payload = {"command": "syntactic", "ok": True,
               "result": {"set": hex(mask), "congruence": str(c), "index": c.index,
                          "preorder": _relation_rows(p.rows, alg.size)}}
    _emit(args, payload, [f"congruence: {c} (index {c.index})", "preorder:"]
          + ["  " + r for r in _relation_rows(p.rows, alg.size)])
    return 0


def cmd_lattice(args: argparse.Namespace) -> int:
    kind = "boolean" if args.boolean else "bounded" if args.bounded else "plain"
    alg = _load(args.target)
    if alg is None:
        fam = latt_suc(parse_upset(args.set), kind)
        shown = [describe_upset(m) for m in fam]
    else:
        kinds = {"plain": "lattice", "bounded": "bounded-lattice", "boolean": "boolean"}
        fam = latt(alg, parse_subset(args.set, alg.size), kinds[kind])
        shown = [FiniteUniverse(alg.size).show(m) for m in fam]
    payload = {"command": "lattice", "ok": True, "result": {**fam.to_json(), "size": len(fam)}}
    _emit(args, payload, [f"{len(fam)} member(s) ({fam.kind})"] + [f"  {s}" for s in shown])
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    alg = _load(args.target)
    if alg is None:
        f = parse_function(args.fn, args.window)
        if args.what == "cp":
            v = check_cp_nat(f, args.a_max, args.k_max)
            res = {"cp": v.ok, "witness": v.witness, "detail": v.detail}
        elif args.what == "spp":
            v = check_spp_nat(f, args.a_max, args.k_max)
            res = {"spp": v.ok, "witness": v.witness, "detail": v.detail}
        else:
            a, b, bf, c = check_clause_a(f), check_clause_b(f), check_clause_b(f, flat=True), check_clause_c(f)
            res = {"clause_a": a.ok, "clause_b": b.ok, "clause_b_flat": bf.ok, "clause_c": c.ok}
            v = a if not a else bf if not bf else c
        ok = v.ok
        res["window"] = f.N
        lines = [f"{args.what}: {str(ok).lower()} (window {f.N})"] + ([v.detail] if v.detail else [])
    else:
        try:
            table = [int(t) for t in args.fn.split(",")]
        except ValueError:
            raise UsageError(f"--fn needs comma-separated integers, got {args.fn!r}") from None
        if len(table) != alg.size or any(not 0 <= t < alg.size for t in table):
            raise UsageError(f"--fn needs {alg.size} values in [0, {alg.size})")
        if args.what == "cp":
            rels = enumerate_congruences(alg, args.bound or DEFAULT_CONGRUENCE_BOUND)
        elif args.what == "spp":
            rels = enumerate_stable_preorders(alg, args.bound or DEFAULT_PREORDER_BOUND)
        else:
            raise UsageError("--what arith only applies to nat")
        bad = next(((r, w) for r in rels if (w := find_incompatibility(r, table)) is not None), None)
        ok = bad is None
        res = {args.what: ok, "witness": None if ok else {"pair": bad[1], "relation": str(bad[0])}}
        lines = [f"{args.what}: {str(ok).lower()}"] + ([] if ok else [f"breaks {bad[0]} at {bad[1]}"])
    _emit(args, {"command": "check", "ok": ok, "result": res}, lines)
    return 0 if ok else 1


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "table1":
        bound = args.bound or MAX_TABLE1_SIZE
        if bound > MAX_TABLE1_SIZE:
            raise UsageError(f"table1 bound is at most {MAX_TABLE1_SIZE}")
        rep = run_table1_suite(args.seed, bound, args.count)
    elif args.suite == "group":
        rep = run_group_suite()
    elif args.suite == "ring":
        rep = run_ring_suite(args.bound or 6)
    else:
        rep = verify_nat_suite(window=args.window, seed=args.seed)
    _emit_report(args, rep)
    return 0 if rep.passed else 1


def _emit_report(args: argparse.Namespace, rep: SuiteReport) -> None:
    d = rep.to_dict(timing=args.timing)
    lines = [f"{rep.name}: {'PASS' if rep.passed else 'FAIL'} "
             f"({len(rep.instances)} instances, {len(rep.failures)} failures, "
             f"{len(rep.converse_failures)} converse failures)"]
    for fail in rep.failures[:10]:
        lines.append(f"  FAILURE {fail.get('key')}: {fail.get('violated')}")
    if args.timing and rep.wall_time is not None:
        lines.append(f"  wall time {rep.wall_time:.2f}s")
    _emit(args, {"command": "verify", "ok": rep.passed, "result": d}, lines)


def cmd_examples(args: argparse.Namespace) -> int:
    N = args.window
    g = zigzag_g(N)
    zig = [{"x": x, "f": zigzag_f(x), "g": g(x)} for x in range(N)]
    fe = [{"x": x, "value": floor_e_factorial(x)} for x in range(N)]
    lassos = []
    for a, k in [(0, 3), (2, 2), (3, 3)]:
        q = lasso_quotient(a, k)
        lassos.append({"a": a, "k": k, "algebra": format_algebra(q)})
    payload = {"command": "examples", "ok": True,
               "result": {"zigzag": zig, "floor_e_fact": fe, "lasso": lassos}}
    lines = ["zigzag f and its lcm approximant g:"]
    lines += [f"  {r['x']:>3} {r['f']:>30} {r['g']:>30}" for r in zig]
    lines.append("floor(e * x!):")
    lines += [f"  {r['x']:>3} {r['value']}" for r in fe]
    for r in lassos:
        lines.append(f"lasso quotient a={r['a']} k={r['k']}:")
        lines += ["  " + ln for ln in r["algebra"].splitlines()]
    _emit(args, payload, lines)
    return 0


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    common.add_argument("--bound", type=int, default=None, help="carrier-size bound for enumerations")

    parser = argparse.ArgumentParser(prog="congpres", description="Congruence and stable-preorder preservation toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="congruences and stable preorders of an algebra file")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("syntactic", parents=[common], help="syntactic congruence (and preorder) of a set")
    p.add_argument("target", help="algebra file, or 'nat'")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_syntactic)

    p = sub.add_parser("lattice", parents=[common], help="lattice or Boolean closure of the preimages of a set")
    p.add_argument("target", help="algebra file, or 'nat'")
    p.add_argument("--set", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--bounded", action="store_true")
    g.add_argument("--boolean", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("check", parents=[common], help="does a function preserve congruences / stable preorders")
    p.add_argument("target", help="algebra file, or 'nat'")
    p.add_argument("--fn", required=True, help="nat: id, const:c, zigzag_g, floor_e_fact, poly:c0,c1,... or a file; "
                                               "algebra: comma-separated table")
    p.add_argument("--what", choices=["cp", "spp", "arith"], default="cp")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--a-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=6)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["table1", "group", "ring", "nat"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200, help="random algebras for table1")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", parents=[common], help="print the named example objects")
    p.add_argument("--window", type=int, default=12)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, BoundExceeded, WindowTooSmall, PreconditionError, OSError) as exc:
        print(f"congpres: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
