"""Writing reports and plot data for the command line."""
import csv
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union
from pydantic import BaseModel
from src.core.exceptions import IoError
from src.schemas.reports import VerificationReport
from src.utils.logger import app_logger


def write_text(text: str, path: Optional[Union[str, Path]] = None) -> None:
    """Write text to path, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as e:
        app_logger.error(f"Cannot write {path}: {e}")
        raise IoError(f"Cannot write {path}: {e.strerror}")
    app_logger.info(f"Wrote {path}")


def emit_model(model: BaseModel, path: Optional[Union[str, Path]] = None) -> None:
    """Serialize a report model as JSON, field aliases included."""
    write_text(model.model_dump_json(by_alias=True, indent=2), path)


def emit_report(report: VerificationReport, path: Optional[Union[str, Path]], fmt: str) -> int:
    """
    Write a verification report and return the exit code it implies.

    Args:
        report: Report to write
        path: Output file, stdout when None
        fmt: "json" or "text"

    Returns:
        0 if every entry passed, else 1
    """
    if fmt == "text":
        write_text(report.to_text(), path)
    else:
        emit_model(report, path)
    if not report.passed:
        for entry in report.failures:
            app_logger.warning(f"FAILED {entry.name}: lhs={entry.lhs:.8g} rhs={entry.rhs:.8g}")
    return 0 if report.passed else 1


def write_plot_data(
    path: Union[str, Path], rows: Iterable[Sequence[object]], header: Sequence[str] = ("x", "lhs", "rhs")
) -> None:
    """CSV for external plotting."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        app_logger.error(f"Cannot write {path}: {e}")
        raise IoError(f"Cannot write {path}: {e.strerror}")
    app_logger.info(f"Wrote plot data to {path}")
