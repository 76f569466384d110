"""Unit tests for settings, exceptions, helpers and the report schema."""
import json
from pathlib import Path
import numpy as np
import pytest
from pydantic import ValidationError
from src.cli.commands.schema import report_schema
from src.core.config import Settings
from src.core.exceptions import (
    CertificateFailure,
    ConfigError,
    DomainError,
    IoError,
    NonRealResult,
    ParseError,
    SharpHilbertException,
)
from src.schemas.reports import VerificationEntry, VerificationReport
from src.schemas.specs import GridSpec, SimSpec, build_model
from src.utils.helpers import circular_index_distance, is_power_of_two, mean_and_se, wrap_angle

SHIPPED_SCHEMA = Path(__file__).resolve().parents[2] / "schemas" / "verification_report.schema.json"


def test_settings_environment_override(monkeypatch):
    """Test SHARP_HILBERT_THREADS is read from the environment."""
    monkeypatch.setenv("SHARP_HILBERT_THREADS", "3")
    assert Settings().threads == 3


@pytest.mark.parametrize("value", ["0", "-2"])
def test_settings_reject_threads(monkeypatch, value):
    """Test a thread cap below 1 is rejected."""
    monkeypatch.setenv("SHARP_HILBERT_THREADS", value)
    with pytest.raises(ValidationError):
        Settings()


def test_settings_reject_grid_size():
    """Test grid_size must be a power of two."""
    with pytest.raises(ValidationError):
        Settings(grid_size=1000)


def test_provenance_keys(test_settings):
    """Test reports echo the numerical defaults."""
    provenance = test_settings.provenance()
    assert {"grid_size", "sim_step", "abs_tol", "eval_radius"} <= provenance.keys()


@pytest.mark.parametrize(
    "exc, code",
    [
        (DomainError("x"), 2),
        (ConfigError("x"), 2),
        (ParseError("x"), 2),
        (IoError("x"), 2),
        (NonRealResult("x"), 1),
        (CertificateFailure("x"), 1),
    ],
)
def test_exit_codes(exc, code):
    """Test every error carries the exit code the CLI returns."""
    assert isinstance(exc, SharpHilbertException)
    assert exc.exit_code == code


def test_build_model_maps_validation_errors():
    """Test pydantic errors become ConfigError naming the field."""
    with pytest.raises(ConfigError) as exc:
        build_model(GridSpec, h=-1.0)
    assert "h" in exc.value.message
    assert build_model(SimSpec, domain="strip", c=0.5, seed=None).seed >= 0


def test_mean_and_se():
    """Test the mean and standard error of a small sample."""
    mean, se = mean_and_se(np.array([1.0, 2.0, 3.0, 4.0]))
    assert mean == 2.5
    assert se == pytest.approx(np.std([1.0, 2.0, 3.0, 4.0], ddof=1) / 2.0)
    assert mean_and_se(np.array([5.0])) == (5.0, 0.0)


def test_angle_helpers():
    """Test wrapping into [-pi, pi) and cyclic index distance."""
    assert wrap_angle(np.pi) == pytest.approx(-np.pi)
    assert wrap_angle(-3.0 * np.pi / 2.0) == pytest.approx(np.pi / 2.0)
    assert circular_index_distance(np.array([0, 63]), 1, 64).tolist() == [1, 2]
    assert is_power_of_two(1024)
    assert not is_power_of_two(0)


def test_entry_serializes_pass_alias():
    """Test entries are written with the `pass` key."""
    entry = VerificationEntry.from_sides("x", 1.0, 2.0)
    payload = json.loads(entry.model_dump_json(by_alias=True))
    assert payload["pass"] is True
    assert payload["slack"] == 1.0


def test_report_passed_and_text():
    """Test `passed` is the conjunction of the entries and the text table marks failures."""
    report = VerificationReport(
        entries=[VerificationEntry.from_sides("ok", 0.0, 1.0), VerificationEntry.from_sides("bad", 2.0, 1.0)]
    )
    assert not report.passed
    assert [e.name for e in report.failures] == ["bad"]
    assert report.to_text().splitlines()[-1].endswith("NO")
    assert json.loads(report.model_dump_json(by_alias=True))["passed"] is False


def test_shipped_schema_matches_models():
    """Test the schema file lists the same properties and required keys as the models."""
    shipped = json.loads(SHIPPED_SCHEMA.read_text(encoding="utf-8"))
    generated = report_schema()
    assert set(shipped["properties"]) == set(generated["properties"])
    assert set(shipped["required"]) == set(generated.get("required", []))
    entry_shipped = shipped["$defs"]["VerificationEntry"]
    entry_generated = generated["$defs"]["VerificationEntry"]
    assert set(entry_shipped["properties"]) == set(entry_generated["properties"])
    assert set(entry_shipped["required"]) == set(entry_generated["required"])
