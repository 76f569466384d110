"""verify: the full inequality report."""
import argparse
from typing import List, Tuple
import numpy as np
from src.circle.base import CircleGrid
from src.circle.io import read_circle_function
from src.cli.options import add_common_options, workers
from src.cli.output import emit_report, write_plot_data
from src.core.config import settings
from src.extremal.base import build_p1, build_p2
from src.schemas.reports import VerificationReport
from src.verify.base import (
    check_all,
    check_pair,
    constant_entries,
    identity_entries,
    run_corpus,
)
from src.verify.bounds import r_functions, rhs_optimal_l1


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "verify",
        help="Check every inequality on a random corpus, the identities and the constants",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--corpus", type=int, default=200, help="Number of random trig polynomials")
    parser.add_argument("--seed", type=int, default=1, help="Corpus seed")
    parser.add_argument("--n", type=int, default=1024, help="Corpus grid size")
    parser.add_argument("--input", default=None, help="Also check a sampled function from a CSV/JSON file")
    parser.add_argument(
        "--pairs", action="store_true", help="Also check the c = 1/2 extremal pairs at n = settings.grid_size"
    )
    parser.add_argument("--plot-data", default=None, help="CSV series,x,lhs,rhs of R1, R2 and corpus points")
    add_common_options(parser)
    parser.set_defaults(handler=run)


def _plot_rows(report: VerificationReport) -> List[Tuple[str, float, float, float]]:
    rows = []
    for x in np.linspace(0.0, 10.0, 201):
        r1, r2 = r_functions(float(x))
        rows.append(("r_functions", float(x), r2, r1))
    for entry in report.entries:
        if entry.name.startswith("corpus[") and entry.name.endswith(".weak_l1_optimal"):
            norm = entry.params["norm"]
            rows.append(("corpus", norm, entry.params["measure"], rhs_optimal_l1(norm)))
    return rows


def run(args: argparse.Namespace) -> int:
    report = VerificationReport(entries=identity_entries() + constant_entries())
    if args.corpus > 0:
        report = report.extend(run_corpus(args.corpus, args.seed, args.n, workers=workers(args)))
    if args.input:
        f = read_circle_function(args.input)
        report = report.extend(VerificationReport(entries=check_all(f, prefix="input.")))
    if args.pairs:
        grid = CircleGrid(settings.grid_size)
        entries = check_pair(build_p1(0.5, grid)) + check_pair(build_p2(0.5, grid))
        report = report.extend(VerificationReport(entries=entries))

    if args.plot_data:
        write_plot_data(args.plot_data, _plot_rows(report), header=("series", "x", "lhs", "rhs"))
    return emit_report(report, args.output, args.format)
