"""certify: grid certificate of the special function U."""
import argparse
from src.cli.options import add_common_options, workers
from src.cli.output import emit_model, write_text
from src.core.config import settings
from src.schemas.specs import GridSpec, SpecialFnConfig, build_model
from src.special.certificate import certify_special_function


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "certify",
        help="Check majorization, concavity in x and superharmonicity of U on a grid",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    defaults = GridSpec()
    parser.add_argument("--x-min", type=float, default=defaults.x_min)
    parser.add_argument("--x-max", type=float, default=defaults.x_max)
    parser.add_argument("--y-min", type=float, default=defaults.y_min)
    parser.add_argument("--y-max", type=float, default=defaults.y_max)
    parser.add_argument("--h", type=float, default=defaults.h, help="Grid spacing")
    parser.add_argument("--abs-tol", type=float, default=settings.abs_tol, help="Quadrature tolerance")
    parser.add_argument("--max-subdivisions", type=int, default=settings.max_subdivisions)
    add_common_options(parser)
    parser.set_defaults(handler=run)


def _text(report) -> str:
    lines = [f"{'property':<22}  {'pass':>4}  {'worst slack':>12}  {'at':>20}  {'points':>8}"]
    for check in report.checks:
        at = f"({check.worst_point[0]:.3f}, {check.worst_point[1]:.3f})"
        lines.append(
            f"{check.name:<22}  {'yes' if check.passed else 'NO':>4}  {check.worst_slack:>12.3e}  "
            f"{at:>20}  {check.checked_points:>8}"
        )
    lines.append(f"max |U + |x|| = {report.bound_max:.6f}; excluded points: {report.excluded_points}")
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    grid_spec = build_model(
        GridSpec, x_min=args.x_min, x_max=args.x_max, y_min=args.y_min, y_max=args.y_max, h=args.h
    )
    cfg = build_model(SpecialFnConfig, abs_tol=args.abs_tol, max_subdivisions=args.max_subdivisions)
    report = certify_special_function(cfg, grid_spec, workers=workers(args), raise_on_failure=False)
    if args.format == "text":
        write_text(_text(report), args.output)
    else:
        emit_model(report, args.output)
    return 0 if report.passed else 1
