"""simulate: Monte Carlo exit statistics and the martingale bound they satisfy."""
import argparse
from src.cli.options import add_common_options, workers
from src.cli.output import emit_model, write_text
from src.core.config import settings
from src.martingale.base import bias_table, simulate, verify_martingale_bound
from src.schemas.reports import SimulationReport
from src.schemas.specs import build_sim_spec


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "simulate",
        help="Run Brownian motion from i in the slit or strip domain",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--domain", choices=["slit", "strip"], required=True)
    parser.add_argument("--c", type=float, required=True, help="Domain parameter in (0, 1]")
    parser.add_argument("--paths", type=int, default=settings.sim_paths)
    parser.add_argument("--step", type=float, default=settings.sim_step, help="Time step, at most 1e-2")
    parser.add_argument("--seed", type=int, default=settings.sim_seed)
    parser.add_argument("--max-time", type=float, default=settings.sim_max_time, help="Censoring time")
    parser.add_argument(
        "--bias-allowance",
        type=float,
        default=settings.bias_allowance,
        help="Step-bias allowance for attainment",
    )
    parser.add_argument("--bias-table", action="store_true", help="Repeat with the step quartered twice")
    parser.add_argument("--progress", action="store_true", help="Write paths_done,p_hat,p_se lines to stderr")
    add_common_options(parser)
    parser.set_defaults(handler=run)


def _text(report: SimulationReport) -> str:
    r = report.result
    moment, moment_se = r.moment
    label = "E|X|" if r.spec.domain == "slit" else "E X^2"
    lines = [
        f"{r.spec.domain} c={r.spec.c} paths={r.spec.paths} step={r.spec.step} seed={r.spec.seed}",
        f"p_hat = {r.p_hat:.6f} +- {r.p_se:.6f}",
        f"{label} = {moment:.6f} +- {moment_se:.6f}",
        f"censored = {r.censored_fraction:.4%}",
    ]
    if report.bias_table:
        lines.append("")
        lines.append(f"{'step':>10}  {'p error':>12}  {'moment error':>12}  {'censored':>10}")
        for row in report.bias_table:
            lines.append(
                f"{row.step:>10.3e}  {row.p_error:>12.3e}  {row.moment_error:>12.3e}  "
                f"{row.censored_fraction:>10.4%}"
            )
    lines.append("")
    lines.append(report.verification.to_text())
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    spec = build_sim_spec(
        args.domain, args.c, paths=args.paths, step=args.step, seed=args.seed, max_time=args.max_time
    )
    n_workers = workers(args)
    result = simulate(spec, workers=n_workers, progress=args.progress)
    report = SimulationReport(
        result=result,
        verification=verify_martingale_bound(spec, result, args.bias_allowance, workers=n_workers),
        bias_table=bias_table(spec, workers=n_workers) if args.bias_table else None,
    )
    if args.format == "text":
        write_text(_text(report), args.output)
    else:
        emit_model(report, args.output)
    return 0 if report.verification.passed else 1
