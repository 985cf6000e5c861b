"""Command-line entry point: ``pivotal {power,figure,allocate,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 exact evaluation refused (resource cap).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from fractions import Fraction

import numpy as np

from . import oracle
from . import power as pw
from .allocation import (
    PopulationTable,
    TableError,
    invariance_report,
    load_population_table,
    power_based_weights,
    sqrt_weights,
)
from .power import ResourceLimitError, Strategy, VotingScheme

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

POWER_FIELDS = ["n", "scheme", "method", "power", "approx", "rel_dev"]
FIGURE_FIELDS = ["population", "scheme", "method", "power", "approx", "rel_dev"]
ALLOCATE_FIELDS = ["name", "population", "weight"]
REPORT_FIELDS = [
    "name", "population", "binary_power", "ternary_power", "ratio",
    "sqrt_weight", "binary_weight", "ternary_weight", "max_dev",
]


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _precision(text: str) -> int:
    value = _nonneg_int(text)
    if not 1 <= value <= 15:
        raise argparse.ArgumentTypeError("precision must be between 1 and 15")
    return value


def fmt(x: float | None, precision: int) -> str:
    if x is None:
        return ""
    return f"{x:.{precision - 1}e}"


def _rounded(x, precision):
    # JSON keeps the same significant digits as the text forms
    if isinstance(x, float):
        return float(fmt(x, precision))
    return x


def emit(records: list[dict], fields: list[str], fmt_name: str, precision: int, out) -> None:
    if fmt_name == "json":
        rows = [{k: _rounded(r[k], precision) for k in r} for r in records]
        json.dump(rows, out, indent=2)
        out.write("\n")
        return

    def cell(v):
        return fmt(v, precision) if isinstance(v, float) or v is None else str(v)

    if fmt_name == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(fields)
        for r in records:
            writer.writerow([cell(r[f]) for f in fields])
        return
    table = [fields] + [[cell(r[f]) for f in fields] for r in records]
    widths = [max(len(row[i]) for row in table) for i in range(len(fields))]
    for row in table:
        out.write("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _approx(n_others: int, scheme: VotingScheme) -> float | None:
    if n_others < 1:
        return None
    return float(pw.power_asymptotic(n_others, scheme).value)


def _record(result: pw.PowerResult, key: str, key_value: int) -> dict:
    value = float(result.value)
    approx = _approx(result.n_others, result.scheme)
    rec = {
        key: key_value,
        "scheme": result.scheme.value,
        "method": result.method.value,
        "power": value,
        "approx": approx,
        "rel_dev": None if approx is None else abs(value / approx - 1),
    }
    return rec


def cmd_power(args, out) -> int:
    config = pw.PowerConfig(exact_threshold=args.threshold, two_term=args.two_term)
    result = pw.power(args.n, VotingScheme(args.scheme), Strategy(args.strategy), config)
    rec = _record(result, "n", args.n)
    if isinstance(result.value, Fraction):
        rec["exact"] = str(result.value)
    precision = args.precision or 6
    if args.format == "text" and "exact" in rec:
        emit([rec], POWER_FIELDS + ["exact"], "text", precision, out)
    else:
        emit([rec], POWER_FIELDS + (["exact"] if "exact" in rec else []), args.format, precision, out)
    return EXIT_OK


def figure_populations(pop_min: int, pop_max: int, points: int) -> list[int]:
    """Log-spaced integer populations including both endpoints."""
    raw = np.logspace(np.log10(pop_min), np.log10(pop_max), points)
    pops = [int(round(x)) for x in raw]
    pops[0], pops[-1] = pop_min, pop_max
    return pops


def figure_records(pop_min=10**5, pop_max=10**8, points=25, strategy=Strategy.FLOAT) -> list[dict]:
    scheme = VotingScheme.TERNARY
    return [
        _record(pw.power(p - 1, scheme, strategy), "population", p)
        for p in figure_populations(pop_min, pop_max, points)
    ]


GNUPLOT_TEMPLATE = """\
set datafile separator ','
set logscale xy
set xlabel 'Population'
set ylabel 'Voting power'
set key top right
plot '{data}' using 1:4 every ::1 with points pt 2 title 'voting power', \\
     '{data}' using 1:5 every ::1 with lines title 'square root law'
"""


def cmd_figure(args, out) -> int:
    if args.pop_min < 2:
        raise UsageError("--pop-min must be at least 2")
    if args.pop_max <= args.pop_min:
        raise UsageError("--pop-max must exceed --pop-min")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    records = figure_records(args.pop_min, args.pop_max, args.points, Strategy(args.strategy))
    emit(records, FIGURE_FIELDS, args.format, args.precision or 6, out)
    if args.gnuplot:
        with open(args.gnuplot, "w", encoding="utf-8") as fh:
            fh.write(GNUPLOT_TEMPLATE.format(data=args.data_name))
    return EXIT_OK


def cmd_allocate(args, out) -> int:
    try:
        with open(args.csv_path, "rb") as fh:
            table = load_population_table(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.csv_path}: {exc.strerror}") from None
    except TableError as exc:
        raise UsageError(f"{args.csv_path}: {exc}") from None
    machine = args.format in ("csv", "json")
    precision = args.precision or (12 if machine else 6)
    strategy = Strategy(args.strategy)
    if args.report:
        report = invariance_report(table, strategy)
        emit([asdict(r) for r in report.rows], REPORT_FIELDS, args.format, precision, out)
        if args.format == "text":
            for pair, dev in report.max_deviation.items():
                out.write(f"max deviation {pair}: {fmt(dev, precision)}\n")
        return EXIT_OK
    if args.basis == "sqrt":
        alloc = sqrt_weights(table)
    else:
        alloc = power_based_weights(table, VotingScheme(args.basis), strategy)
    records = [
        {"name": name, "population": pop, "weight": w}
        for (name, pop), w in zip(table.entries, alloc.weights)
    ]
    emit(records, ALLOCATE_FIELDS, args.format, precision, out)
    return EXIT_OK


MC_CHECK_N = (1, 100, 10_000)


def run_verification(max_n_binary: int, max_n_ternary: int, samples: int, seed: int, out) -> int:
    """Enumeration and Monte Carlo against the exact path; returns the exit code."""
    failures = []
    for scheme, max_n in ((VotingScheme.BINARY, max_n_binary), (VotingScheme.TERNARY, max_n_ternary)):
        for n in range(max_n + 1):
            enumerated = oracle.enumerate_pivot_probability(n, scheme)
            exact = pw.power(n, scheme, Strategy.EXACT).value
            ok = enumerated == exact
            out.write(f"{'PASS' if ok else 'FAIL'} enumeration {scheme.value} N={n}: "
                      f"enumerated {enumerated}, exact {exact}\n")
            if not ok:
                failures.append(f"enumeration {scheme.value} N={n}")
    if samples > 0:
        for scheme in VotingScheme:
            for n in MC_CHECK_N:
                exact = float(pw.power(n, scheme, Strategy.EXACT).value)
                est = oracle.monte_carlo_pivot(n, scheme, samples, seed)
                se = (exact * (1 - exact) / samples) ** 0.5
                z = abs(est.mean - exact) / se
                ok = z <= 4
                out.write(f"{'PASS' if ok else 'FAIL'} monte-carlo {scheme.value} N={n}: "
                          f"estimate {est.mean:.6f}, exact {exact:.6f}, z={z:.2f}\n")
                if not ok:
                    failures.append(f"monte-carlo {scheme.value} N={n}")
    if failures:
        out.write(f"first divergence: {failures[0]}\n")
        return EXIT_VERIFY
    out.write("all checks passed\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.max_n_binary > oracle.ENUMERATION_CAP[VotingScheme.BINARY]:
        raise UsageError(f"--max-n-binary above {oracle.ENUMERATION_CAP[VotingScheme.BINARY]}")
    if args.max_n_ternary > oracle.ENUMERATION_CAP[VotingScheme.TERNARY]:
        raise UsageError(f"--max-n-ternary above {oracle.ENUMERATION_CAP[VotingScheme.TERNARY]}")
    return run_verification(args.max_n_binary, args.max_n_ternary, args.samples, args.seed, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pivotal", description="A-priori voting power and square-root weights")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, strategy_default="auto"):
        p.add_argument("--format", choices=["csv", "json", "text"], default="text")
        p.add_argument("--precision", type=_precision, default=None,
                       help="significant digits (default 6; 12 for machine-readable weights)")
        p.add_argument("--strategy", choices=[s.value for s in Strategy], default=strategy_default)

    p = sub.add_parser("power", help="voting power of one voter among N+1")
    p.add_argument("--n", type=_nonneg_int, required=True, help="number of other voters")
    p.add_argument("--scheme", choices=["binary", "ternary"], default="ternary")
    p.add_argument("--threshold", type=_nonneg_int, default=pw.DEFAULT_CONFIG.exact_threshold,
                   help="largest N evaluated exactly under --strategy auto")
    p.add_argument("--two-term", action="store_true", help="use the averaged two-term approximation")
    common(p)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("figure", help="ternary power vs square-root law over a population range")
    p.add_argument("--pop-min", type=_nonneg_int, default=10**5)
    p.add_argument("--pop-max", type=_nonneg_int, default=10**8)
    p.add_argument("--points", type=_nonneg_int, default=25)
    p.add_argument("--gnuplot", metavar="PATH", help="also write a gnuplot script to PATH")
    p.add_argument("--data-name", default="figure.csv", help="data file the gnuplot script reads")
    common(p, strategy_default="float")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("allocate", help="voting weights from a name,population CSV")
    p.add_argument("csv_path")
    p.add_argument("--basis", choices=["sqrt", "binary", "ternary"], default="sqrt")
    p.add_argument("--report", action="store_true", help="compare all three bases")
    common(p)
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("verify", help="check exact formulas against enumeration and Monte Carlo")
    p.add_argument("--max-n-binary", type=_nonneg_int, default=20)
    p.add_argument("--max-n-ternary", type=_nonneg_int, default=13)
    p.add_argument("--samples", type=_nonneg_int, default=100_000, help="Monte Carlo samples (0 skips)")
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"pivotal: error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        err.write(f"pivotal: {exc}\n")
        return EXIT_RESOURCE


def run(argv=None) -> tuple[int, str, str]:
    """Run the CLI in-process, returning (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()
