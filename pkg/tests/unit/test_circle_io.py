"""Unit tests for the CSV/JSON sample formats."""
import json
import numpy as np
import pytest
from src.circle.base import CircleFunction
from src.circle.io import detect_format, read_circle_function, write_circle_function
from src.core.exceptions import IoError, ParseError


def test_read_csv(sample_csv, grid_64):
    """Test a well-formed CSV is read onto the matching grid."""
    f = read_circle_function(sample_csv)
    assert f.grid.n == 64
    assert np.allclose(f.values, np.cos(grid_64.nodes))


def test_csv_write_read_is_exact(tmp_path, grid_64):
    """Test floats written with repr come back bit-identical."""
    rng = np.random.default_rng(3)
    f = CircleFunction(grid_64, rng.standard_normal(64))
    path = tmp_path / "f.csv"
    write_circle_function(f, path)
    assert np.array_equal(read_circle_function(path).values, f.values)


def test_json_write_read(tmp_path, grid_64):
    """Test the JSON object format."""
    f = CircleFunction.from_callable(grid_64, np.sin)
    path = tmp_path / "f.json"
    write_circle_function(f, path)
    payload = json.loads(path.read_text())
    assert payload["n"] == 64
    assert np.array_equal(read_circle_function(path).values, f.values)


def test_malformed_row_names_line(tmp_path):
    """Test a bad row is reported with its 1-based line number."""
    rows = ["t,value"] + [f"{k},{k}" for k in range(8)]
    rows[4] = "0.3,abc"
    path = tmp_path / "bad.csv"
    path.write_text("\n".join(rows))
    with pytest.raises(ParseError) as exc:
        read_circle_function(path)
    assert exc.value.line == 5
    assert "line 5" in exc.value.message


def test_missing_header(tmp_path):
    """Test the header is required."""
    path = tmp_path / "nohead.csv"
    path.write_text("0,1\n1,2\n")
    with pytest.raises(ParseError) as exc:
        read_circle_function(path)
    assert exc.value.line == 1


def test_non_power_of_two_length(tmp_path):
    """Test a row count that is not a power of two is a parse error."""
    path = tmp_path / "short.csv"
    path.write_text("t,value\n" + "".join(f"{k},0\n" for k in range(10)))
    with pytest.raises(ParseError):
        read_circle_function(path)


def test_json_length_mismatch(tmp_path):
    """Test n must match the number of values."""
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"n": 8, "values": [0.0] * 7}))
    with pytest.raises(ParseError):
        read_circle_function(path)


def test_missing_file(tmp_path):
    """Test an unreadable path raises IoError."""
    with pytest.raises(IoError):
        read_circle_function(tmp_path / "absent.csv")


def test_detect_format():
    """Test suffix and explicit format handling."""
    assert detect_format("a.csv") == "csv"
    assert detect_format("a.JSON") == "json"
    assert detect_format("a.txt", "csv") == "csv"
    with pytest.raises(ParseError):
        detect_format("a.txt")
