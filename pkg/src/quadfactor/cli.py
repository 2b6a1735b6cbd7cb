"""Command-line front end.

Every subcommand prints either plain text or, with ``--json``, one JSON
object carrying ``"schema": "quadfactor/1"``.  Rationals are always
rendered as ``"u"`` or ``"u/v"`` strings.

Exit codes: 0 success, 1 internal error, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from ._parse import PolynomialSyntaxError
from .arith import as_rational, fmt
from .curves import SCHEMA, get_curve, load_curve_file, points_to_solutions
from .families import (family_members, get_case, isolated_solutions,
                       verify_paper)
from .solver import (Pattern, SearchIncomplete, describe_solution, eliminate,
                     excluded_loci, find_quadratic_factors, pattern_sweep)
from .upoly import parse_poly


class UsageError(Exception):
    pass


def _exponents(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise UsageError(f"exponents must be three integers n,m,k, got {text!r}") from None
    if len(parts) != 3:
        raise UsageError(f"exponents must be three integers n,m,k, got {text!r}")
    return parts


def _pattern(text: str) -> Pattern:
    try:
        return Pattern.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _product(factor, cofactor) -> str:
    return f"({factor})({cofactor})"


# -- subcommands ----------------------------------------------------------------------

def cmd_factor(args) -> tuple[dict, list[str]]:
    f = parse_poly(args.poly)
    diagnostics = {"incomplete": False}
    try:
        found = find_quadratic_factors(f)
    except SearchIncomplete as exc:
        found = exc.partial
        diagnostics["incomplete"] = True
    rows = [{"p": fmt(r.factor.p), "q": fmt(r.factor.q), "factor": str(r.factor),
             "multiplicity": r.multiplicity, "cofactor": str(r.cofactor)} for r in found]
    lines = [f"f = {f}"]
    if not rows:
        lines.append("no quadratic factor over Q")
    for r in found:
        lines.append(f"  p = {fmt(r.factor.p)}, q = {fmt(r.factor.q)}:  f = {_product(r.factor, r.cofactor)}")
    if diagnostics["incomplete"]:
        lines.append("warning: integer factoring budget exhausted, list may be incomplete")
    return {"inputs": {"poly": str(f)}, "results": {"factors": rows}, "diagnostics": diagnostics}, lines


def cmd_sweep(args) -> tuple[dict, list[str]]:
    pattern = _pattern(args.pattern)
    n, m, k = _exponents(args.exponents)
    if args.height < 1:
        raise UsageError("height must be positive")
    res = pattern_sweep(pattern, n, m, k, args.height, threads=args.threads)
    sols = [describe_solution(pattern, (n, m, k), fac, a) for fac, a in res.solutions]
    und = [{"p": fmt(g.p), "q": fmt(g.q), "factor": str(g)} for g in res.undetermined]
    diagnostics = {"undetermined": und,
                   "zero_a": [{"p": fmt(g.p), "q": fmt(g.q)} for g in res.zero_a],
                   "pairs_scanned": res.pairs, "exact_checks": res.candidates,
                   "a_from_constant_equation": res.a_from_constant_equation}
    lines = [f"{pattern.label} ({n},{m},{k}), height {args.height}: {len(sols)} solutions"]
    for s in sols:
        lines.append(f"  p = {s['p']}, q = {s['q']}, a = {s['a']}:  {s['polynomial']} = "
                     f"({s['factor']})({s['cofactor']})")
    for g in res.undetermined:
        lines.append(f"  {g} divides the quadrinomial for every a")
    inputs = {"pattern": pattern.value, "exponents": [n, m, k], "height": args.height}
    return {"inputs": inputs, "results": {"solutions": sols}, "diagnostics": diagnostics}, lines


def cmd_eliminate(args) -> tuple[dict, list[str]]:
    pattern = _pattern(args.pattern)
    n, m, k = _exponents(args.exponents)
    E = eliminate(pattern, n, m, k)
    loci = {name: str(v) for name, v in excluded_loci(pattern, n, m, k).items()}
    lines = [f"{pattern.label} ({n},{m},{k}):  {E} = 0",
             f"  a-coefficient of the linear equation: {loci['linear']}",
             f"  a-coefficient of the constant equation: {loci['constant']}"]
    inputs = {"pattern": pattern.value, "exponents": [n, m, k]}
    return {"inputs": inputs, "results": {"condition": str(E)}, "diagnostics": {"a_coefficients": loci}}, lines


def cmd_family(args) -> tuple[dict, list[str]]:
    try:
        case = get_case(args.id)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    head = f"{case.id}: {case.pattern.label} ({','.join(map(str, case.exponents))}), {case.kind}"
    lines = [head]
    info = {"id": case.id, "pattern": case.pattern.value, "exponents": list(case.exponents), "kind": case.kind}
    if case.branches:
        info["branches"] = [{"label": b.label, "formula": b.formula,
                             "excluded": [fmt(v) for v in sorted(b.excluded)]} for b in case.branches]
        for b in case.branches:
            ex = f"  ({b.param} != {', '.join(fmt(v) for v in sorted(b.excluded))})" if b.excluded else ""
            lines.append(f"  branch {b.label}: {b.formula}{ex}")
    if args.param is not None:
        members = family_members(args.id, as_rational(args.param))
        if not members:
            lines.append(f"  no member at parameter {args.param}")
    elif case.kind in ("isolated", "conjectural", "empty") or (
            case.kind == "reduction" and get_case(case.source).kind != "parametric"):
        members = isolated_solutions(case.id)
        if case.kind == "empty":
            lines.append("  no solutions")
    else:
        members = []
        lines.append("  pass --param to instantiate a member")
    rows = [mb.to_json() for mb in members]
    for mb in members:
        tag = f"branch {mb.branch}: " if mb.branch else ""
        lines.append(f"  {tag}p = {fmt(mb.factor.p)}, q = {fmt(mb.factor.q)}, a = {fmt(mb.a)}:  "
                     f"{mb.f} = {_product(mb.factor, mb.cofactor)}")
    if case.conjectural:
        lines.append("  (solution list complete only up to the searched height)")
    inputs = {"id": args.id, "param": None if args.param is None else fmt(as_rational(args.param))}
    return {"inputs": inputs, "results": {"case": info, "members": rows},
            "diagnostics": {"conjectural": case.conjectural}}, lines


def cmd_curve(args) -> tuple[dict, list[str]]:
    if (args.id is None) == (args.file is None):
        raise UsageError("give exactly one of --id or --file")
    if args.height < 1:
        raise UsageError("height must be positive")
    if args.file is not None:
        try:
            found = load_curve_file(args.file)
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise UsageError(f"cannot load {args.file}: {exc}") from None
        if args.curve_id:
            if args.curve_id not in found:
                raise UsageError(f"no curve {args.curve_id!r} in {args.file}")
            curves = [found[args.curve_id]]
        else:
            curves = list(found.values())
    else:
        try:
            curves = [get_curve(args.id)]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    rows, lines = [], []
    for curve in curves:
        points = curve.search(args.height, threads=args.threads)
        row = {"id": curve.id, "equation": curve.equation, "status": curve.status,
               "points": [pt.as_strings() for pt in points]}
        lines.append(f"{curve.id}: {curve.equation}  [{curve.status}]")
        lines.append(f"  {len(points)} points of height <= {args.height}: "
                     + ", ".join(f"({', '.join(pt.as_strings())})" for pt in points))
        if curve.case is not None and (curve.map is not None or curve.form == "plane"):
            sols = points_to_solutions(curve, points)
            row["solutions"] = [[fmt(v) for v in s] for s in sols]
            for p, q, a in sols:
                lines.append(f"  p = {fmt(p)}, q = {fmt(q)}, a = {fmt(a)}")
        issues = [{"printed": i["printed"].as_strings(),
                   "corrected": None if i["corrected"] is None else i["corrected"].as_strings()}
                  for i in curve.point_issues]
        if issues:
            row["point_issues"] = issues
        rows.append(row)
    inputs = {"id": args.id, "file": args.file, "height": args.height}
    return {"inputs": inputs, "results": {"curves": rows}, "diagnostics": {}}, lines


def cmd_verify(args) -> tuple[dict, list[str]]:
    report = verify_paper(threads=args.threads)
    lines = []
    for e in report.entries:
        extra = f"  [{', '.join(e.discrepancy)}]" if e.discrepancy else ""
        lines.append(f"{e.status:<22} {e.id}{extra}")
        for msg in e.failures:
            lines.append(f"    {msg}")
    if report.discrepancies:
        lines.append("")
        lines.append("discrepancies:")
        for d in report.discrepancies:
            lines.append(f"  {d.id} ({d.kind}): printed {d.printed}; computed {d.computed}")
    if report.notes:
        lines.append("")
        lines.append("notes:")
        lines.extend(f"  {n}" for n in report.notes)
    s = report.summary()
    lines.append("")
    lines.append(", ".join(f"{k}: {v}" for k, v in s.items()))
    return {"inputs": {}, "results": report.to_json(), "diagnostics": {"failures": report.failures}}, lines


COMMANDS = {"factor": cmd_factor, "sweep": cmd_sweep, "eliminate": cmd_eliminate,
            "family": cmd_family, "curve": cmd_curve, "verify-paper": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--threads", type=int, default=1, help="worker threads for sweep/curve/verify")
    common.add_argument("--seed", type=int, default=None, help="accepted and ignored; output is deterministic")
    common.add_argument("--timing", action="store_true", help="report wall-clock time")

    parser = argparse.ArgumentParser(prog="quadfactor",
                                     description="Quadratic factors of quadrinomials x^n + a x^m + b x^k + c.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", parents=[common], help="quadratic factors of a polynomial")
    p.add_argument("--poly", required=True, help='e.g. "x^5 - 3x^2 + x + 1"')

    patterns = [pt.value for pt in Pattern]
    p = sub.add_parser("sweep", parents=[common], help="height-bounded search over (p, q)")
    p.add_argument("--pattern", required=True, choices=patterns)
    p.add_argument("--exponents", required=True, help="n,m,k")
    p.add_argument("--height", type=int, default=50)

    p = sub.add_parser("eliminate", parents=[common], help="condition on (p, q) with a eliminated")
    p.add_argument("--pattern", required=True, choices=patterns)
    p.add_argument("--exponents", required=True, help="n,m,k")

    p = sub.add_parser("family", parents=[common], help="catalogued families and solutions")
    p.add_argument("--id", required=True, help="case id, optionally with a branch letter")
    p.add_argument("--param", default=None, help="family parameter, e.g. 2 or -3/4")

    p = sub.add_parser("curve", parents=[common], help="rational points on a catalogued curve")
    p.add_argument("--id", default=None)
    p.add_argument("--file", default=None, help="curve file in the catalog schema")
    p.add_argument("--curve-id", default=None, help="select one curve from --file")
    p.add_argument("--height", type=int, default=1000)

    sub.add_parser("verify-paper", parents=[common], help="re-verify the whole catalog")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    start = time.perf_counter()
    try:
        payload, lines = COMMANDS[args.command](args)
    except PolynomialSyntaxError as exc:
        return _fail(args, 2, str(exc), position=exc.position)
    except (UsageError, ValueError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return _fail(args, 2, msg)
    except Exception as exc:  # invariant violations end up here
        return _fail(args, 1, f"internal error: {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    code = 0
    if args.command == "verify-paper" and payload["diagnostics"]["failures"]:
        code = 1
    if args.json:
        out = {"schema": SCHEMA, "command": args.command, **payload}
        if args.timing:
            out["timing"] = {"seconds": round(elapsed, 3)}
        print(json.dumps(out, indent=2))
    else:
        print("\n".join(lines))
        if args.timing:
            print(f"({elapsed:.3f} s)")
    return code


def _fail(args, code: int, message: str, position: Optional[int] = None) -> int:
    if args.json:
        err = {"message": message}
        if position is not None:
            err["position"] = position
        print(json.dumps({"schema": SCHEMA, "command": args.command, "error": err}, indent=2))
    print(f"quadfactor {args.command}: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
