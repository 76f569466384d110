"""Options shared by several sub-commands."""
import argparse
from typing import Optional
from src.core.config import settings


def add_common_options(parser: argparse.ArgumentParser, fmt: bool = True, threads: bool = True) -> None:
    """--output, and optionally --format and --threads."""
    parser.add_argument("--output", "-o", default=None, help="Report path; stdout when omitted")
    if fmt:
        parser.add_argument("--format", choices=["json", "text"], default="json", help="Report format")
    if threads:
        parser.add_argument(
            "--threads",
            type=int,
            default=None,
            help=f"Worker processes, overrides SHARP_HILBERT_THREADS (default: {settings.threads})",
        )


def workers(args: argparse.Namespace) -> Optional[int]:
    return getattr(args, "threads", None) or settings.threads
