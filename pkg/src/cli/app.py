"""Command-line entry point: parser and dispatcher."""
import argparse
import sys
from typing import List, Optional
from src.cli.commands import certify, constants, extremal, schema, simulate, transform, verify
from src.core.config import settings
from src.core.exceptions import SharpHilbertException
from src.utils.logger import app_logger, set_console_level

COMMANDS = [transform, extremal, certify, simulate, constants, verify, schema]


def create_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one sub-command per module in COMMANDS.

    Returns:
        Configured parser
    """
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Sharp one-sided weak-type bounds for the conjugate function on the circle.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.version}")
    parser.add_argument("--log-level", default=None, help="Console log level (default: settings.log_level)")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one command.

    Returns:
        0 on success, 1 on verification failure or unexpected error, 2 on usage or I/O error
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.log_level:
        set_console_level(args.log_level)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: --threads must be at least 1\n")
        return 2

    try:
        return int(args.handler(args))
    except SharpHilbertException as e:
        app_logger.error(f"{type(e).__name__}: {e.message}")
        return e.exit_code
    except Exception as e:
        app_logger.opt(exception=e).error(f"Unhandled exception: {str(e)}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
