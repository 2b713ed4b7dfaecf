"""Command line: ``umbralbb number | polynomial | table | verify``.

Exit status: 0 when everything requested succeeded (and every identity
passed), 1 when at least one identity failed, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .algebra import MultiPoly
from .barnes import (
    BarnesContext,
    bb_number_multinomial,
    bb_number_series,
    bb_number_umbral,
    bb_polynomial,
    norlund_polynomial,
)
from .suite import CHECKERS, SuiteRanges, parse_ranges, read_config, run_suite
from .umbral import bernoulli_number

METHODS = {
    "umbral": bb_number_umbral,
    "multinomial": bb_number_multinomial,
    "series": lambda k, ctx: bb_number_series(k, ctx),
}


class UsageError(Exception):
    pass


def _fmt(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _tex_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return rf"{sign}\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _context(args) -> BarnesContext:
    if args.a is not None:
        try:
            values = [Fraction(v) for v in args.a.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--a expects a comma list of rationals: {exc}") from None
        if any(v == 0 for v in values):
            raise UsageError("--a entries must be nonzero")
        return BarnesContext.numeric(values)
    if args.n is None or args.n < 1:
        raise UsageError("give parameters with --a v1,v2,... or a symbolic size with --n N >= 1")
    return BarnesContext.symbolic(args.n)


def _ctx_fields(ctx: BarnesContext) -> dict:
    if ctx.is_symbolic:
        return {"n": ctx.n}
    return {"a": ",".join(_fmt(v) for v in ctx.values)}


def _poly_out(p: MultiPoly, fmt: str) -> str:
    if fmt == "latex":
        return p.to_latex()
    if p.is_constant():
        return _fmt(p.constant_value())
    return str(p)


def _emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(record))
        w.writerow(list(record.values()))
    elif fmt == "latex":
        out.write(record["tex"] + "\n")
    else:
        out.write(record["value"] + "\n")


# --------------------------------------------------------------------------
# subcommands

def cmd_number(args, out) -> int:
    if args.k is None or args.k < 0:
        raise UsageError("--k must be a nonnegative integer")
    if args.method not in METHODS:
        raise UsageError(f"unknown method {args.method!r}")
    ctx = _context(args)
    value = METHODS[args.method](args.k, ctx)
    record = {"kind": "number", "method": args.method, "k": args.k, **_ctx_fields(ctx),
              "cleared": ctx.is_symbolic, "value": _poly_out(value, "text")}
    if args.format == "latex":
        record["tex"] = _poly_out(value, "latex")
    _emit_record(record, args.format, out)
    return 0


def cmd_polynomial(args, out) -> int:
    if args.j is None or args.j < 0:
        raise UsageError("--j must be a nonnegative integer")
    if args.norlund is not None:
        if args.norlund < 0:
            raise UsageError("--norlund order must be nonnegative")
        value = norlund_polynomial(args.j, args.norlund)
        fields = {"norlund": args.norlund}
        cleared = False
    else:
        ctx = _context(args)
        value = bb_polynomial(args.j, ctx)
        fields = _ctx_fields(ctx)
        cleared = ctx.is_symbolic
    record = {"kind": "polynomial", "j": args.j, **fields, "cleared": cleared,
              "value": _poly_out(value, "text")}
    if args.format == "latex":
        record["tex"] = _poly_out(value, "latex")
    _emit_record(record, args.format, out)
    return 0


def _table(args):
    kind = args.kind
    if kind == "bernoulli":
        kmax = 12 if args.k is None else args.k
        header = ["k", "B_k"]
        rows = [[k, bernoulli_number(k)] for k in range(kmax + 1)]
    elif kind == "norlund":
        jmax = 4 if args.j is None else args.j
        nmax = 4 if args.n is None else args.n
        header = ["j"] + [f"n={n}" for n in range(nmax + 1)]
        rows = [[j] + [norlund_polynomial(j, n) for n in range(nmax + 1)] for j in range(jmax + 1)]
    elif kind == "bb":
        kmax = 8 if args.k is None else args.k
        ctx = _context(args)
        header = ["k", "P_k(a)" if ctx.is_symbolic else "B_k(a)"]
        rows = [[k, bb_number_umbral(k, ctx)] for k in range(kmax + 1)]
    else:
        raise UsageError(f"unknown table kind {kind!r}")
    return header, rows


def _cell(v, fmt):
    if isinstance(v, int):
        return str(v)
    if isinstance(v, MultiPoly):
        if fmt == "latex":
            return v.to_latex()
        return _fmt(v.constant_value()) if v.is_constant() else str(v)
    return _tex_rational(v) if fmt == "latex" else _fmt(v)


def cmd_table(args, out) -> int:
    header, rows = _table(args)
    cells = [[_cell(v, args.format) for v in row] for row in rows]
    if args.format == "json":
        out.write(json.dumps({"kind": "table", "table": args.kind, "header": header,
                              "rows": cells}) + "\n")
    elif args.format == "latex":
        out.write("\\begin{tabular}{" + "c" * len(header) + "}\n")
        out.write(" & ".join(f"${h}$" for h in header) + " \\\\\n\\hline\n")
        for row in cells:
            out.write(" & ".join(f"${c}$" for c in row) + " \\\\\n")
        out.write("\\end{tabular}\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)
    return 0


def _ranges(args) -> SuiteRanges:
    if args.config and not args.default_ranges:
        ranges = read_config(args.config)
    else:
        ranges = SuiteRanges()
    if args.ranges:
        ranges = parse_ranges(args.ranges, ranges)
    single = {key: (getattr(args, key), getattr(args, key))
              for key in ("m", "l", "n", "N", "p", "r") if getattr(args, key) is not None}
    return ranges.override(**single)


def _report_rows(reports, fmt, out):
    if fmt == "json":
        for rep in reports:
            out.write(json.dumps(rep.to_record()) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["identity", "params", "passed", "lhs", "rhs", "witness"])
        for rep in reports:
            rec = rep.to_record()
            params = ";".join(f"{k}={v}" for k, v in rec["params"].items())
            wit = rec.get("witness")
            wtxt = f"{wit['monomial']}:{wit['lhs']}!={wit['rhs']}" if wit else ""
            w.writerow([rec["identity"], params, rec["passed"], rec["lhs"], rec["rhs"], wtxt])
    else:
        out.write("\\begin{tabular}{llcl}\n")
        out.write("identity & parameters & passed & $\\mathrm{LHS}$ \\\\\n\\hline\n")
        for rep in reports:
            params = ", ".join(f"{k}={v}" for k, v in rep.to_record()["params"].items())
            ident = rep.identity_id.replace("_", r"\_")
            mark = r"\checkmark" if rep.passed else r"$\times$"
            out.write(f"{ident} & {params} & {mark} & ${rep.lhs.to_latex()}$ \\\\\n")
        out.write("\\end{tabular}\n")


def cmd_verify(args, out) -> int:
    if args.identity == "all":
        selected = None
    elif args.identity in CHECKERS:
        selected = [args.identity]
    else:
        raise UsageError(f"unknown identity {args.identity!r}; choose 'all' or one of: "
                         + ", ".join(sorted(CHECKERS)))
    try:
        ranges = _ranges(args)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    reports = run_suite(ranges, identities=selected, seed=args.seed,
                        spot_checks=args.spot_checks, workers=args.workers)
    fmt = "json" if args.format == "text" else args.format
    _report_rows(reports, fmt, out)
    return 0 if all(r.passed for r in reports) else 1


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umbralbb",
        description="Exact Bernoulli-Barnes numbers, polynomials and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--format", choices=["text", "json", "csv", "latex"], default=default_format)

    p = sub.add_parser("number", help="Bernoulli-Barnes number B_k(a)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", help="comma list of nonzero rationals, e.g. 1,2/3")
    p.add_argument("--n", type=int, help="symbolic parameter count (cleared output)")
    p.add_argument("--method", default="umbral", help="umbral, multinomial or series")
    common(p, "text")
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("polynomial", help="Bernoulli-Barnes or Nörlund polynomial in x")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--a")
    p.add_argument("--n", type=int)
    p.add_argument("--norlund", type=int, metavar="ORDER")
    common(p, "text")
    p.set_defaults(func=cmd_polynomial)

    p = sub.add_parser("table", help="table of exact values")
    p.add_argument("kind", choices=["bernoulli", "norlund", "bb"])
    p.add_argument("--k", type=int, help="largest index (bernoulli, bb)")
    p.add_argument("--j", type=int, help="largest degree (norlund)")
    p.add_argument("--n", type=int, help="largest order (norlund) or symbolic size (bb)")
    p.add_argument("--a")
    common(p, "csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check identities as exact polynomial identities")
    p.add_argument("identity", help="identity id or 'all'")
    for key in ("m", "l", "n", "N", "r", "p"):
        p.add_argument(f"--{key}", type=int, help=f"fix {key} to a single value")
    p.add_argument("--ranges", help="e.g. 'm=0..6,n=1..4,N=0..10,p=1..8'")
    p.add_argument("--default-ranges", action="store_true",
                   help="use the default ranges (m,l <= 6; n <= 4; N <= 10; p <= 8)")
    p.add_argument("--config", help="file of 'key = lo..hi' lines giving default ranges")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="seed for numeric spot-check vectors")
    p.add_argument("--spot-checks", type=int, default=3,
                   help="numeric instances per identity (0 disables)")
    common(p, "json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"umbralbb: error: {exc}", file=sys.stderr)
        return 2


def run(argv=None) -> tuple:
    """Run the CLI and return (exit status, stdout text)."""
    buf = io.StringIO()
    status = main(argv, buf)
    return status, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
