"""Unit tests for the weak-type constants and the scalar maximizer."""
import math
import numpy as np
import pytest
from src.core.exceptions import DomainError, OptimizationFailure
from src.verify.constants import (
    c1q_objective,
    constant_c1q,
    constant_c2q,
    constant_c2q_numeric,
    objective_curve,
)
from src.verify.optimize import bracket_maximum, golden_section_max


def test_golden_section_finds_parabola_peak():
    """Test the argmax of -(s - 0.3)^2."""
    assert golden_section_max(lambda s: -((s - 0.3) ** 2), -2.0, 2.0) == pytest.approx(0.3, abs=1e-9)


def test_bracket_walks_right_and_left():
    """Test brackets contain the peak in either direction."""
    right = bracket_maximum(lambda s: -((s - 5.0) ** 2)).bracket
    assert right.lo < 5.0 < right.hi
    left = bracket_maximum(lambda s: -((s + 5.0) ** 2)).bracket
    assert left.lo < -5.0 < left.hi


def test_bracket_escape_and_unbounded():
    """Test escape past left_limit and failure on an objective rising to the right."""
    escaped = bracket_maximum(lambda s: -s, left_limit=-10.0)
    assert escaped.bracket is None
    assert escaped.escaped_left
    with pytest.raises(OptimizationFailure):
        bracket_maximum(lambda s: s)


def test_c2q_at_one():
    """Test c(2,1) = 1/2 at x = 1, witnessed by the c = 1/2 strip."""
    const = constant_c2q(1.0)
    assert const.value == pytest.approx(0.5, abs=1e-15)
    assert const.argmax_x == pytest.approx(1.0)
    assert const.witness_c == pytest.approx(0.5)
    assert const.witness_residual < 1e-12


def test_c2q_at_two_is_unattained():
    """Test q = 2 gives the limit 1 with no maximizer."""
    const = constant_c2q(2.0)
    assert const.value == 1.0
    assert not const.attained
    assert const.witness_c is None


@pytest.mark.parametrize("q", [0.25, 0.5, 1.0, 1.5, 1.9])
def test_c2q_closed_form_matches_numeric(q):
    """Test the closed form against golden-section maximization."""
    assert constant_c2q_numeric(q) == pytest.approx(constant_c2q(q).value, abs=1e-8)


def test_c1q_at_one_is_boundary_supremum():
    """Test c(1,1) = 1, approached only as x -> 0."""
    const = constant_c1q(1.0)
    assert const.value == 1.0
    assert not const.attained
    assert const.argmax_x == 0.0


@pytest.mark.parametrize("q", [0.25, 0.5, 0.75])
def test_c1q_matches_dense_scan(q):
    """Test the maximizer against a dense geometric scan of the objective."""
    const = constant_c1q(q)
    xs = np.geomspace(1e-3, 20.0, 200_001)
    scan = max(c1q_objective(float(x), q) for x in xs)
    assert const.attained
    assert 0.0 < const.value < 1.0
    assert const.value == pytest.approx(scan, abs=1e-6)
    assert const.value >= scan - 1e-12
    assert const.witness_residual < 1e-8


@pytest.mark.parametrize("q", [0.0, 1.5, -1.0])
def test_c1q_rejects_q(q):
    """Test q outside (0, 1] is rejected."""
    with pytest.raises(DomainError):
        constant_c1q(q)


def test_c2q_rejects_q():
    """Test q outside (0, 2] is rejected."""
    with pytest.raises(DomainError):
        constant_c2q(2.5)
    with pytest.raises(DomainError):
        constant_c2q_numeric(2.0)


def test_objective_curve_rows():
    """Test each row carries the constant and never exceeds it."""
    rows = objective_curve(2, 1.0, np.array([0.5, 1.0, 2.0]))
    assert [r[0] for r in rows] == [0.5, 1.0, 2.0]
    assert all(r[1] <= r[2] + 1e-15 for r in rows)
    assert rows[1][1] == pytest.approx(0.5)
    assert math.isclose(rows[0][2], 0.5)
