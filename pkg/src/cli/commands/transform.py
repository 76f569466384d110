"""transform: conjugate function of a sampled circle function, with its norms and superlevel measure."""
import argparse
import sys
import numpy as np
from src.circle.base import CircleFunction, hilbert_multiplier, hilbert_pv_direct, norm_p, superlevel_measure
from src.circle.io import detect_format, format_circle_function, read_circle_function, write_circle_function
from src.cli.output import write_text
from src.utils.logger import app_logger


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "transform",
        help="Apply the conjugate-function operator to a CSV/JSON sample file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("input", help="Input file (header 't,value' CSV, or JSON {n, values})")
    parser.add_argument("--output", "-o", default=None, help="Output file; stdout when omitted")
    parser.add_argument("--format", choices=["csv", "json"], default=None, help="Input/output format")
    parser.add_argument(
        "--method",
        choices=["fft", "pv", "punctured"],
        default="fft",
        help="Fourier multiplier, or the direct principal-value sum with the given rule",
    )
    parser.set_defaults(handler=run)


def summary_text(f: CircleFunction, h: CircleFunction) -> str:
    """norm1, norm2 of f and the measure of {Hf >= 1}, one `name=value` per line."""
    return "\n".join(
        [
            f"norm1={norm_p(f, 1.0)!r}",
            f"norm2={norm_p(f, 2.0)!r}",
            f"superlevel_measure={superlevel_measure(h, 1.0)!r}",
        ]
    )


def run(args: argparse.Namespace) -> int:
    f = read_circle_function(args.input, args.format)
    if args.method == "fft":
        h = hilbert_multiplier(f)
    else:
        rule = "alternating" if args.method == "pv" else "punctured"
        values = [hilbert_pv_direct(f, float(t), rule=rule) for t in f.grid.nodes]
        h = CircleFunction(f.grid, np.array(values))
    app_logger.info(f"Transformed n={f.grid.n} samples with method={args.method}")

    summary = summary_text(f, h)
    if args.output is None:
        # stdout carries the samples
        write_text(format_circle_function(h, args.format or detect_format(args.input)))
        sys.stderr.write(summary + "\n")
    else:
        write_circle_function(h, args.output, args.format)
        write_text(summary)
    return 0
