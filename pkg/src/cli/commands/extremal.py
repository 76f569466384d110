"""extremal: build an extremal pair, export it and compare measured against predicted values."""
import argparse
from pathlib import Path
from src.circle.base import CircleGrid
from src.circle.io import write_circle_function
from src.cli.options import add_common_options
from src.cli.output import emit_model, write_text
from src.core.config import settings
from src.extremal.base import ExtremalPairFactory, convergence_table, sidecar
from src.schemas.reports import ExtremalReport, VerificationReport
from src.verify.base import PAIR_TOLERANCE, check_pair


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "extremal",
        help="Build the slit (p1) or strip (p2) extremal pair",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--kind", choices=["p1", "p2"], required=True, help="p1: slit domain, p2: strip")
    parser.add_argument("--c", type=float, required=True, help="Domain parameter in (0, 1)")
    parser.add_argument("--n", type=int, default=settings.grid_size, help="Grid size, a power of two")
    parser.add_argument("--radius", type=float, default=settings.eval_radius, help="Evaluation radius r < 1")
    parser.add_argument("--export", default=None, help="Write PREFIX_f.csv, PREFIX_g.csv and PREFIX.json")
    parser.add_argument("--table", action="store_true", help="Add the convergence table over n = 2^12..2^16")
    parser.add_argument("--residual", action="store_true", help="Report max |Hf - g| off the singular angles")
    parser.add_argument("--tolerance", type=float, default=PAIR_TOLERANCE, help="Near-equality tolerance")
    add_common_options(parser, threads=False)
    parser.set_defaults(handler=run)


def _table_text(report: ExtremalReport) -> str:
    meta = report.sidecar
    lines = [
        f"{meta.kind} c={meta.c} n={meta.n} r={meta.eval_radius}",
        f"{'quantity':<10}  {'measured':>14}  {'predicted':>14}",
        f"{'measure r':<10}  {meta.measure:>14.8f}  {meta.predicted_measure:>14.8f}",
        f"{'measure':<10}  {meta.limit_measure:>14.8f}  {meta.predicted_measure:>14.8f}",
        f"{'exact arc':<10}  {meta.exact_measure:>14.8f}  {meta.predicted_measure:>14.8f}",
        f"{'norm':<10}  {meta.norm_refined:>14.8f}  {meta.predicted_norm:>14.8f}",
    ]
    if meta.conjugacy_residual is not None:
        lines.append(f"conjugacy residual {meta.conjugacy_residual:.3e} at r={meta.conjugacy_radius}")
    if report.convergence:
        lines.append("")
        lines.append(f"{'n':>7}  {'r':>12}  {'measure err':>12}  {'norm err':>12}  {'raw norm':>12}")
        for row in report.convergence:
            lines.append(
                f"{row.n:>7}  {row.eval_radius:>12.8f}  {row.measure_error:>12.3e}  "
                f"{row.norm_error:>12.3e}  {row.norm_raw:>12.8f}"
            )
    lines.append("")
    lines.append(report.verification.to_text())
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    pair = ExtremalPairFactory.create(args.kind, args.c, CircleGrid(args.n), args.radius)
    meta = sidecar(pair, with_residual=args.residual)

    if args.export:
        prefix = Path(args.export)
        write_circle_function(pair.f, prefix.with_name(prefix.name + "_f.csv"))
        write_circle_function(pair.g, prefix.with_name(prefix.name + "_g.csv"))
        emit_model(meta, prefix.with_name(prefix.name + ".json"))

    report = ExtremalReport(
        sidecar=meta,
        verification=VerificationReport(entries=check_pair(pair, tolerance=args.tolerance)),
        convergence=convergence_table(args.kind, args.c) if args.table else None,
    )
    if args.format == "text":
        write_text(_table_text(report), args.output)
    else:
        emit_model(report, args.output)
    return 0 if report.verification.passed else 1
