"""Command-line front door.

    ramsmooth csum   --q 1..6 --a 0..6
    ramsmooth coeffs --fn omega --kind p-wintner --prime 5 --q 1..30
    ramsmooth wod    --fn one --prime 3 --a 1..10 --cutoff 4096
    ramsmooth verify --suite lemmas --seed 1

Output formats: text (default), json, csv.  Rationals serialize as exact
strings like ``3/4`` -- never floats; ``--approx K`` adds a K-digit decimal
column alongside.  When ``--out`` is given, report commands also render a
matplotlib figure next to the output file (disable with ``--no-plot``).

Exit codes: 0 all assertions/tolerances met; 1 a mathematical assertion
failed; 2 usage or configuration error.  ``RAMSMOOTH_THREADS`` caps the
parallelism of per-cell computations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .arith import smooth_context, smooth_part
from .decomp import decompose_function, decompose_transform
from .funclib import builtin, builtin_names, load_table
from .ramanujan import csum_definition, csum_kluyver, ramanujan_sum
from .transforms import ArithFn, coefficient_table
from .verify import SUITES, run_suite


class ConfigError(Exception):
    pass


def _parse_range(text: str, name: str) -> list[int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"--{name}: expected 'A..B' or 'A', got {text!r}") from None
    if hi < lo:
        raise ConfigError(f"--{name}: empty range {text!r}")
    return list(range(lo, hi + 1))


def _parse_prime_list(text: str) -> list[int]:
    try:
        primes = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise ConfigError(f"--primes: expected comma-separated integers, got {text!r}") from None
    if primes != sorted(primes):
        raise ConfigError("--primes must be ascending")
    return primes


def _load_function(args) -> ArithFn:
    if args.fn and args.table:
        raise ConfigError("give either --fn or --table, not both")
    if args.fn:
        try:
            return builtin(args.fn)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if args.table:
        path = Path(args.table)
        if not path.exists():
            raise ConfigError(f"table file not found: {path}")
        return load_table(path)
    raise ConfigError("a function is required: --fn NAME or --table PATH")


def _threads() -> int:
    env = os.environ.get("RAMSMOOTH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"RAMSMOOTH_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def frac_str(v) -> str:
    return str(Fraction(v))


def _approx(v, digits: int) -> str:
    return f"{float(v):.{digits}f}"


def _emit(args, payload: dict, columns: list[str], rows: list[dict]) -> None:
    if args.approx:
        columns = columns + [f"approx_{c}" for c in payload.get("approx_columns", [])]
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c) for c in columns}
        lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
        for r in rows:
            lines.append("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _figure_path(args) -> Optional[Path]:
    if args.out and not args.no_plot:
        return Path(args.out).with_suffix(".png")
    return None


def cmd_csum(args) -> int:
    qs = _parse_range(args.q or "1..10", "q")
    a_values = _parse_range(args.a or "0..10", "a")
    if min(qs) < 1:
        raise ConfigError("--q must be >= 1")

    def row_for(q: int) -> list[dict]:
        out = []
        for a in a_values:
            value = ramanujan_sum(q, a)
            if csum_definition(q, a) != value or csum_kluyver(q, a) != value:
                raise ArithmeticError(f"formula disagreement at (q={q}, a={a})")
            cell = {"q": q, "a": a, "value": value}
            if args.approx:
                cell["approx_value"] = _approx(value, args.approx)
            out.append(cell)
        return out

    try:
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            rows = [cell for chunk in pool.map(row_for, qs) for cell in chunk]
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {
        "command": "csum",
        "q": [min(qs), max(qs)],
        "a": [min(a_values), max(a_values)],
        "rows": rows,
    }
    columns = ["q", "a", "value"] + (["approx_value"] if args.approx else [])
    _emit(args, payload, columns, rows)
    fig = _figure_path(args)
    if fig:
        from .report import render_csum_heatmap

        table = {(r["q"], r["a"]): r["value"] for r in rows}
        render_csum_heatmap(qs, a_values, table, fig)
        print(f"figure: {fig}", file=sys.stderr)
    return 0


KINDS = ("wintner", "carmichael", "p-wintner", "p-carmichael", "pflat-wintner")


def cmd_coeffs(args) -> int:
    F = _load_function(args)
    if args.kind not in KINDS:
        raise ConfigError(f"--kind must be one of {', '.join(KINDS)}")
    if args.kind.startswith("p") and not args.prime:
        raise ConfigError(f"--kind {args.kind} requires --prime")
    qs = _parse_range(args.q or "1..10", "q")
    x = args.cutoff or (1 << 16)

    def one(q: int):
        return coefficient_table(args.kind, F, [q], x, args.prime).partials[q]

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        partials = dict(zip(qs, pool.map(one, qs)))
    rows = []
    for q in qs:
        p = partials[q]
        row = {
            "q": q,
            "value": frac_str(p.value),
            "exact": p.exact,
            "cutoff": p.cutoff,
            "diagnostic": p.convergence_diagnostic(),
        }
        if args.approx:
            row["approx_value"] = _approx(p.value, args.approx)
        rows.append(row)
    payload = {
        "command": "coeffs",
        "kind": args.kind,
        "function": F.name,
        "prime": args.prime,
        "cutoff": x,
        "rows": rows,
        "traces": {
            str(q): {
                "cutoffs": [c for c, _v in partials[q].trace],
                "values": [frac_str(v) for _c, v in partials[q].trace],
            }
            for q in qs
        },
    }
    columns = ["q", "value", "exact", "cutoff", "diagnostic"] + (
        ["approx_value"] if args.approx else []
    )
    _emit(args, payload, columns, rows)
    fig = _figure_path(args)
    if fig:
        from .report import render_traces

        render_traces(
            {f"q={q}": partials[q].trace for q in qs},
            fig,
            title=f"{args.kind} coefficients of {F.name}",
        )
        print(f"figure: {fig}", file=sys.stderr)
    return 0


def cmd_wod(args) -> int:
    F = _load_function(args)
    if not args.prime:
        raise ConfigError("wod requires --prime")
    if bool(args.a) == bool(args.d):
        raise ConfigError("give exactly one of --a (function split) or --d (transform split)")
    x = args.cutoff or (1 << 12)
    tolerance = Fraction(args.tolerance) if args.tolerance else None
    rows = []
    failed = False
    if args.a:
        ctx = smooth_context(args.prime)
        for a in _parse_range(args.a, "a"):
            if smooth_part(a, args.prime) != a:
                rows.append({"a": a, "note": f"skipped: not {args.prime}-smooth"})
                continue
            r = decompose_function(F, args.prime, a, x)
            rows.append(
                {
                    "a": a,
                    "lhs": frac_str(r.lhs),
                    "smooth": frac_str(r.smooth_component),
                    "irregular": frac_str(r.irregular_component),
                    "residual": frac_str(r.residual),
                    "exact": r.exact,
                    "note": "",
                }
            )
            if r.exact and r.residual != 0:
                failed = True
            if not r.exact and tolerance is not None and abs(r.residual) > tolerance:
                failed = True
        columns = ["a", "lhs", "smooth", "irregular", "residual", "exact", "note"]
        label_key = "a"
    else:
        for d in _parse_range(args.d, "d"):
            r = decompose_transform(F, args.prime, d, x)
            rows.append(
                {
                    "d": d,
                    "lhs": frac_str(r.lhs),
                    "regular": frac_str(r.regular),
                    "irregular": frac_str(r.irregular.value),
                    "residual": frac_str(r.residual),
                    "exact": r.exact,
                    "note": "",
                }
            )
            if r.exact and r.residual != 0:
                failed = True
            if not r.exact and tolerance is not None and abs(r.residual) > tolerance:
                failed = True
        columns = ["d", "lhs", "regular", "irregular", "residual", "exact", "note"]
        label_key = "d"
    payload = {
        "command": "wod",
        "function": F.name,
        "prime": args.prime,
        "cutoff": x,
        "rows": rows,
    }
    _emit(args, payload, columns, rows)
    fig = _figure_path(args)
    if fig:
        from .report import render_residuals

        plotted = [r for r in rows if "residual" in r]
        render_residuals(
            [str(r[label_key]) for r in plotted],
            [Fraction(r["residual"]) for r in plotted],
            fig,
            title=f"decomposition residuals: {F.name}, P={args.prime}",
        )
        print(f"figure: {fig}", file=sys.stderr)
    return 1 if failed else 0


def cmd_verify(args) -> int:
    if not args.suite:
        raise ConfigError(f"--suite is required; available: {', '.join(sorted(SUITES))}")
    try:
        results = run_suite(args.suite, seed=args.seed or 0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rows = [
        {
            "suite": r.suite,
            "property": r.name,
            "status": "PASS" if r.passed else "FAIL",
            "detail": r.detail,
        }
        for r in results
    ]
    payload = {"command": "verify", "suite": args.suite, "seed": args.seed or 0, "rows": rows}
    _emit(args, payload, ["suite", "property", "status", "detail"], rows)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramsmooth",
        description="Exact computations with Ramanujan sums and smooth expansions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("csum", "tables of Ramanujan sums with cross-formula verification"),
        ("coeffs", "Wintner/Carmichael coefficient tables with traces"),
        ("wod", "orthogonal decomposition reports with residuals"),
        ("verify", "run a named verification suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--fn", help=f"built-in function name ({', '.join(builtin_names())})")
        p.add_argument("--table", help="path to a function table file")
        p.add_argument("--prime", type=int, help="prime bound P")
        p.add_argument("--q", help="modulus range A..B")
        p.add_argument("--a", help="argument range A..B")
        p.add_argument("--d", help="divisor range A..B")
        p.add_argument("--cutoff", type=int, help="series truncation cutoff x")
        p.add_argument("--primes", help="ascending prime list P1,P2,...")
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--tolerance", help="tolerance for truncated residuals (rational)")
        p.add_argument("--seed", type=int, help="seed for randomized fixtures")
        p.add_argument("--approx", type=int, help="add a K-digit decimal column")
        p.add_argument("--no-plot", action="store_true", help="skip figure rendering")
        if name == "coeffs":
            p.add_argument("--kind", help=f"coefficient kind: {', '.join(KINDS)}")
        if name == "verify":
            p.add_argument("--suite", help=f"suite name: {', '.join(sorted(SUITES))}")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.primes:
        args.prime_list = _parse_prime_list(args.primes)
    handlers = {
        "csum": cmd_csum,
        "coeffs": cmd_coeffs,
        "wod": cmd_wod,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
