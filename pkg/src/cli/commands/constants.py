"""constants: the power-type weak constants c(1,q) and c(2,q)."""
import argparse
import numpy as np
from src.cli.options import add_common_options
from src.cli.output import emit_model, write_plot_data, write_text
from src.verify.constants import constant_c1q, constant_c2q, objective_curve


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "constants",
        help="Best constant C in |{Hf >= 1}|^(1/q) <= C ||f||_p for p = 1, 2",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--p", type=int, choices=[1, 2], required=True)
    parser.add_argument("--q", type=float, required=True, help="q in (0, 1] for p = 1, (0, 2] for p = 2")
    parser.add_argument("--plot-data", default=None, help="CSV of the objective curve x,lhs,rhs")
    add_common_options(parser, threads=False)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    const = constant_c1q(args.q) if args.p == 1 else constant_c2q(args.q)
    if args.plot_data:
        xs = np.geomspace(1e-3, 20.0, 400)
        write_plot_data(args.plot_data, objective_curve(args.p, args.q, xs))
    if args.format == "text":
        where = f"x = {const.argmax_x:.10g}" if const.attained else "x -> 0 (not attained)"
        lines = [f"c({args.p},{args.q:g}) = {const.value:.12g} at {where}"]
        if const.witness_c is not None:
            lines.append(f"witness c = {const.witness_c:.12g}, residual {const.witness_residual:.3e}")
        write_text("\n".join(lines), args.output)
    else:
        emit_model(const, args.output)
    return 0
