"""CSV and JSON formats for CircleFunction."""
import json
from pathlib import Path
from typing import Literal, Optional, Union
import numpy as np
from src.circle.base import CircleFunction, CircleGrid
from src.core.exceptions import DomainError, IoError, ParseError
from src.utils.logger import app_logger

CSV_HEADER = "t,value"

Format = Literal["csv", "json"]


def detect_format(path: Union[str, Path], fmt: Optional[str] = None) -> Format:
    """Pick the format from an explicit flag or the file suffix."""
    if fmt:
        if fmt not in ("csv", "json"):
            raise ParseError(f"Unknown format: {fmt}")
        return fmt  # type: ignore[return-value]
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix == ".csv":
        return "csv"
    raise ParseError(f"Cannot infer format from '{path}', pass csv or json explicitly")


def _parse_csv(text: str) -> CircleFunction:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise ParseError(f"expected header '{CSV_HEADER}'", line=1)

    values = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 2 columns, got {len(parts)}", line=lineno)
        try:
            float(parts[0])
            value = float(parts[1])
        except ValueError:
            raise ParseError(f"non-numeric field in '{raw.strip()}'", line=lineno)
        if not np.isfinite(value):
            raise ParseError("value must be finite", line=lineno)
        values.append(value)

    try:
        grid = CircleGrid(len(values))
    except DomainError as e:
        raise ParseError(e.message)
    return CircleFunction(grid, np.array(values))


def _parse_json(text: str) -> CircleFunction:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno)
    if not isinstance(payload, dict) or "n" not in payload or "values" not in payload:
        raise ParseError("expected an object with keys 'n' and 'values'")
    values = payload["values"]
    if not isinstance(values, list) or len(values) != payload["n"]:
        raise ParseError(f"'values' must be a list of length n={payload['n']}")
    try:
        grid = CircleGrid(int(payload["n"]))
        return CircleFunction(grid, np.array(values, dtype=float))
    except (DomainError, TypeError, ValueError) as e:
        raise ParseError(str(e))


def read_circle_function(path: Union[str, Path], fmt: Optional[str] = None) -> CircleFunction:
    """
    Read a CircleFunction from disk.

    Args:
        path: Input file
        fmt: "csv" or "json"; inferred from the suffix when omitted

    Returns:
        Parsed function on a grid of the file's length

    Raises:
        IoError: if the file cannot be read
        ParseError: on malformed content, with the offending line when known
    """
    fmt = detect_format(path, fmt)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        app_logger.error(f"Cannot read {path}: {e}")
        raise IoError(f"Cannot read {path}: {e.strerror}")
    f = _parse_csv(text) if fmt == "csv" else _parse_json(text)
    app_logger.debug(f"Read n={f.grid.n} samples from {path}")
    return f


def format_circle_function(f: CircleFunction, fmt: Format) -> str:
    """Render f as text; floats use repr so reading back is exact."""
    if fmt == "json":
        return json.dumps({"n": f.grid.n, "values": [float(v) for v in f.values]})
    rows = [CSV_HEADER]
    rows.extend(f"{float(t)!r},{float(v)!r}" for t, v in zip(f.grid.nodes, f.values))
    return "\n".join(rows) + "\n"


def write_circle_function(f: CircleFunction, path: Union[str, Path], fmt: Optional[str] = None) -> None:
    """Write f to path in CSV or JSON."""
    fmt = detect_format(path, fmt)
    try:
        Path(path).write_text(format_circle_function(f, fmt), encoding="utf-8")
    except OSError as e:
        app_logger.error(f"Cannot write {path}: {e}")
        raise IoError(f"Cannot write {path}: {e.strerror}")
    app_logger.debug(f"Wrote n={f.grid.n} samples to {path}")
