"""Command-line surface: evaluate families, run verification, print tables.

Exit codes: 0 success, 1 verification failure, 2 parameter problems,
3 genuinely divergent requests.  Identical invocations print identical
bytes, so outputs can be frozen as goldens.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import evaluators as ev
from . import exact
from .errors import (DivergentAtOne, DivergentValue, NonIntegrable,
                     ParameterError, PlintError)
from .eulersums import K_base, reduce_S
from .numerics import numeric_eval
from .verification import SUITES, all_passed, format_value, run_suite

FAMILIES = ("A", "B", "C", "J0", "J1", "J", "K", "L", "M", "S", "Kbase")

_PARAMS = {
    "A": ("m", "n"),
    "B": ("m", "n"),
    "C": ("m", "n"),
    "J0": ("m", "p"),
    "J1": ("m", "p"),
    "J": ("m", "p", "q"),
    "K": ("m", "p", "q"),
    "L": ("n", "m"),
    "M": ("n", "m"),
    "S": ("p", "q"),
    "Kbase": ("m", "q"),
}

# families whose integral depends on the endpoint --x; the rest are
# fixed-interval objects where anything but the default 1 is a mistake
_POINTED = frozenset({"A", "B", "C", "J0", "J1", "L", "M"})

DEFAULT_DIGITS = 30


def _resolve_digits(flag_value: int | None, fallback: int = DEFAULT_DIGITS) -> int:
    if flag_value is not None:
        digits = flag_value
    else:
        text = os.environ.get("PLINT_DIGITS")
        if text is None:
            return fallback
        try:
            digits = int(text)
        except ValueError:
            raise ParameterError(f"PLINT_DIGITS must be an integer, got {text!r}")
    if digits < 5:
        raise ParameterError(f"digits must be at least 5, got {digits}")
    return digits


def _parse_point(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"--x must be a decimal like 0.75, got {text!r}")
    if not 0 < x <= 1:
        raise ParameterError(f"--x must lie in (0, 1], got {text}")
    return x


def _evaluate(family: str, p: dict[str, int], x: Fraction) -> exact.ClosedForm:
    if family == "A":
        return ev.A_general(p["m"], p["n"], x)
    if family == "B":
        return ev.B_general(p["m"], p["n"], x)
    if family == "C":
        return ev.C_general(p["m"], p["n"], x)
    if family == "J0":
        return ev.J0_eval(p["m"], p["p"], x)
    if family == "J1":
        return ev.J1_eval(p["m"], p["p"], x)
    if family == "J":
        return ev.J_eval(p["m"], p["p"], p["q"])
    if family == "K":
        return ev.K_eval(p["m"], p["p"], p["q"])
    if family == "L":
        return ev.L_integral(p["n"], p["m"], at=x)
    if family == "M":
        return ev.M_integral(p["n"], p["m"], frm=x)
    if family == "S":
        return reduce_S(p["p"], p["q"])
    return K_base(p["m"], p["q"])


def cmd_eval(args: argparse.Namespace) -> int:
    family = args.family
    names = _PARAMS[family]
    params: dict[str, int] = {}
    for name in ("m", "n", "p", "q"):
        value = getattr(args, name)
        if name in names:
            if value is None:
                flags = " ".join(f"--{k}" for k in names)
                raise ParameterError(f"family {family} requires {flags}")
            params[name] = value
        elif value is not None:
            raise ParameterError(f"--{name} is not a parameter of family {family}")
    x = _parse_point(args.x)
    if family not in _POINTED and x != 1:
        raise ParameterError(f"family {family} has no evaluation point; drop --x")
    digits = _resolve_digits(args.digits)

    form = _evaluate(family, params, x)
    feed = None if x == 1 or form.is_constant else x
    value = numeric_eval(form, x=feed, digits=digits)
    rendered = format_value(value)
    if args.format == "json":
        payload = {
            "family": family,
            "params": [params[name] for name in names],
            "x": "1" if x == 1 else str(float(x)),
            "form": exact.to_dict(form),
            "compact": exact.compact(form),
            "value": rendered,
        }
        print(json.dumps(payload))
    else:
        print(f"{exact.compact(form)} = {rendered}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.jobs < 1:
        raise ParameterError(f"--jobs must be at least 1, got {args.jobs}")
    digits = _resolve_digits(args.digits, fallback=20)
    records = run_suite(args.suite, tol=args.tol, grid=args.grid,
                        digits=digits, jobs=args.jobs)
    print(json.dumps(records))
    passed = sum(1 for r in records if r["pass"])
    print(f"{passed}/{len(records)} pass", file=sys.stderr)
    return 0 if all_passed(records) else 1


def _table_rows(args: argparse.Namespace) -> tuple[tuple[str, ...], list[tuple[int, ...]]]:
    family = args.family
    names = _PARAMS[family]

    def cap(flag: str) -> int:
        value = getattr(args, f"max_{flag}")
        if value is None:
            raise ParameterError(f"family {family} needs --max-{flag}")
        if value < 1:
            raise ParameterError(f"--max-{flag} must be at least 1, got {value}")
        return value

    if family == "S":
        if args.max_weight is None:
            raise ParameterError("family S needs --max-weight")
        if args.max_weight < 3:
            raise ParameterError(
                f"--max-weight must be at least 3, got {args.max_weight}")
        rows = [(p, w - p)
                for w in range(3, args.max_weight + 1, 2)
                for p in range(1, w - 1)]
        return names, rows
    caps = [cap(name) for name in names]
    if family in ("A", "B", "C"):
        rows = [(m, n) for m in range(1, caps[0] + 1)
                for n in range(1, min(m, caps[1]) + 1)]
    else:
        grids = [range(1, c + 1) for c in caps]
        rows = [(i,) for i in grids[0]]
        for grid in grids[1:]:
            rows = [r + (j,) for r in rows for j in grid]
    return names, rows


def cmd_table(args: argparse.Namespace) -> int:
    family = args.family
    digits = _resolve_digits(args.digits)
    names, rows = _table_rows(args)
    # tables are families of constants: x pinned to 1, and M printed from 0
    # (its value at the default endpoint 1 is identically zero)
    x = Fraction(0) if family == "M" else Fraction(1)
    body = []
    for row in rows:
        params = dict(zip(names, row))
        if family == "M":
            form = ev.M_integral(params["n"], params["m"], frm=0)
        else:
            form = _evaluate(family, params, x)
        body.append((row, exact.compact(form),
                     format_value(numeric_eval(form, digits=digits))))

    if args.format == "json":
        print(json.dumps([
            {**dict(zip(names, row)), "symbolic": sym, "value": val}
            for row, sym, val in body
        ]))
    elif args.format == "csv":
        sink = io.StringIO()
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(list(names) + ["symbolic", "value"])
        for row, sym, val in body:
            writer.writerow(list(row) + [sym, val])
        sys.stdout.write(sink.getvalue())
    else:
        header = list(names) + ["symbolic", "value"]
        table = [[str(v) for v in row] + [sym, val] for row, sym, val in body]
        widths = [max(len(line[i]) for line in [header] + table)
                  for i in range(len(header))]
        for line in [header] + table:
            print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plint",
        description="Exact closed forms for polylogarithm integrals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one family member")
    p_eval.add_argument("--family", required=True, choices=FAMILIES)
    for name in ("m", "n", "p", "q"):
        p_eval.add_argument(f"--{name}", type=int)
    p_eval.add_argument("--x", default="1",
                        help="endpoint in (0,1] as an exact decimal; for M it is"
                             " the lower endpoint (default 1)")
    p_eval.add_argument("--format", choices=("json", "text"), default="text")
    p_eval.add_argument("--digits", type=int)
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", default="all", choices=SUITES)
    p_verify.add_argument("--tol", default="1e-9")
    p_verify.add_argument("--grid", default="full", choices=("small", "full"))
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--digits", type=int)
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="tabulate a family over a grid")
    p_table.add_argument("--family", required=True, choices=FAMILIES)
    for name in ("m", "n", "p", "q", "weight"):
        p_table.add_argument(f"--max-{name}", type=int, dest=f"max_{name}")
    p_table.add_argument("--format", choices=("text", "csv", "json"),
                         default="text")
    p_table.add_argument("--digits", type=int)
    p_table.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DivergentAtOne, DivergentValue, NonIntegrable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PlintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
