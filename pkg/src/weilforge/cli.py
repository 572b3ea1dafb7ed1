"""Command-line front end: ``weilforge run|check|scan|dims``.

Exit codes: 0 when every check holds, 1 when some check fails, 2 on errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import dsl
from .algebra import algebra_from_json
from .criteria import scan_csv
from .points import tangent_dimensions
from .reporting import report_document

_SHORT_ALGEBRA = re.compile(r"^R\^(\d+)_(\d+)$")
_SHORT_IDEAL = re.compile(r"^m\^(\d+)$")


def _algebra_binding(spec: str):
    """Return (script prefix, predefined env) binding the algebra to ``A``."""
    if spec.endswith(".json"):
        with open(spec, encoding="utf-8") as fh:
            return "", {"A": algebra_from_json(json.load(fh))}
    m = _SHORT_ALGEBRA.match(spec.strip())
    if m:
        spec = f"truncated(m={m.group(2)}, l={m.group(1)})"
    return f"A = {spec};\n", {}


def _ideal_expr(spec: str) -> str:
    m = _SHORT_IDEAL.match(spec.strip())
    return f"mpow(A, {m.group(1)})" if m else spec


def _emit(result: dsl.ExecutionResult, as_json: bool, csv_path: Optional[str]) -> int:
    if csv_path and result.scans:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(scan_csv([r for rows in result.scans for r in rows]))
    if as_json:
        print(json.dumps(result.document(), indent=2))
    else:
        if result.text:
            print(result.text)
        table = dsl.summary_table(result)
        if table and len(result.results) > 1:
            print()
            print(table)
        if result.error is not None:
            print(f"error: {result.error}", file=sys.stderr)
    return result.exit_code


def _run_text(text: str, env=None, as_json=False, csv_path=None, workers=1) -> int:
    env = env or {}
    predefined = {k: "algebra" for k in env}  # the CLI only pre-binds algebras
    try:
        prog = dsl.parse_program(text, predefined)
    except dsl.ScriptError as err:
        if as_json:
            print(json.dumps(report_document([], 2, err.to_json()), indent=2))
        else:
            print(f"error: {err}", file=sys.stderr)
        return 2
    return _emit(dsl.execute(prog, env, workers), as_json, csv_path)


def cmd_run(args) -> int:
    with open(args.script, encoding="utf-8") as fh:
        text = fh.read()
    return _run_text(text, as_json=args.json, csv_path=args.csv, workers=args.workers)


def cmd_check(args) -> int:
    prefix, env = _algebra_binding(args.algebra)
    text = f"{prefix}check {args.kind} A {_ideal_expr(args.ideal)};\n"
    return _run_text(text, env, as_json=args.json)


def cmd_scan(args) -> int:
    text = f"scan truncated m<={args.m_max} l<={args.l_max};\n"
    return _run_text(text, as_json=args.json, csv_path=args.csv, workers=args.workers)


def cmd_dims(args) -> int:
    prefix, env = _algebra_binding(args.algebra)
    try:
        prog = dsl.parse_program(prefix, {k: "algebra" for k in env})
        interp = dsl.Interpreter(env)
        res = interp.run(prog)
        if res.error is not None:
            raise res.error
        A = interp.env["A"]
        dims = tangent_dimensions(A, args.ambient)
    except (dsl.ScriptError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    doc = {"statement": "dims", "algebra": args.algebra, "ambient": args.ambient,
           "dim_MA_tangent": dims.dim_MA_tangent, "dim_DerAA": dims.dim_DerAA,
           "dim_jet_tangent": dims.dim_jet_tangent, "has_regular_points": dims.has_regular_points}
    if args.json:
        print(json.dumps(report_document([doc], 0), indent=2))
    else:
        print(f"dim T(M^A)   = {dims.dim_MA_tangent}")
        print(f"dim Der(A,A) = {dims.dim_DerAA}")
        print(f"dim T(J^A)   = {dims.dim_jet_tangent}")
        if not dims.has_regular_points:
            print("note: ambient dimension below the width, no regular points")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weilforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="execute a script")
    r.add_argument("script")
    r.add_argument("--json", action="store_true", help="machine-readable report")
    r.add_argument("--csv", metavar="PATH", help="write scan rows as CSV")
    r.add_argument("--workers", type=int, default=1)
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", help="run one affine-structure check")
    c.add_argument("--kind", choices=dsl.KINDS, required=True)
    c.add_argument("--algebra", required=True, help="e.g. 'R^3_1', 'truncated(m=1, l=3)' or a JSON file")
    c.add_argument("--ideal", required=True, help="e.g. 'm^2' or an expression over A such as 'ideal(A; xi^2)'")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("scan", help="threshold scan over truncated algebras")
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--l-max", type=int, required=True)
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("--json", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_scan)

    d = sub.add_parser("dims", help="tangent-space dimensions")
    d.add_argument("--algebra", required=True)
    d.add_argument("--ambient", type=int, required=True)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_dims)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
