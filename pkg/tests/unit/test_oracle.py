"""Unit tests for the quadrature oracle."""
import pytest
from src.core.exceptions import DomainError
from src.martingale.oracle import (
    oracle_harmonic_measure,
    slit_exit_abs_moment,
    slit_exit_probability,
    strip_exit_second_moment,
)
from src.schemas.specs import SlitDomainSpec, StripSpec, build_sim_spec
from src.special.base import expected_abs_exit, prob_real_axis


@pytest.mark.parametrize("c", [0.2, 0.5, 0.8])
def test_slit_probability_closed_form_and_quadrature(c):
    """Test both routes agree with P(c)."""
    assert slit_exit_probability(c) == pytest.approx(prob_real_axis(c), abs=1e-12)
    assert slit_exit_probability(c, by_quadrature=True) == pytest.approx(prob_real_axis(c), abs=1e-8)


@pytest.mark.parametrize("c", [0.2, 0.5, 0.8])
def test_slit_abs_moment(c):
    """Test E|X| at exit equals E(c)."""
    assert slit_exit_abs_moment(c) == pytest.approx(expected_abs_exit(c), abs=1e-8)


@pytest.mark.parametrize("c", [0.25, 0.5, 0.75])
def test_strip_quantities(c):
    """Test P = 1 - c and E X^2 = (1 - c)/c through the strip's Poisson kernel."""
    spec = StripSpec(c=c)
    assert oracle_harmonic_measure(spec, "probability") == pytest.approx(1.0 - c, abs=1e-8)
    assert strip_exit_second_moment(c, by_quadrature=True) == pytest.approx((1.0 - c) / c, abs=1e-8)


def test_degenerate_c():
    """Test c = 1 gives zero probability and zero moment."""
    assert slit_exit_probability(1.0) == 0.0
    assert slit_exit_abs_moment(1.0) == 0.0
    assert strip_exit_second_moment(1.0) == 0.0


def test_sim_spec_dispatch():
    """Test a SimSpec is routed to its domain."""
    spec = build_sim_spec("slit", 0.5, paths=10)
    assert oracle_harmonic_measure(spec, "moment") == pytest.approx(expected_abs_exit(0.5), abs=1e-8)
    assert oracle_harmonic_measure(SlitDomainSpec(c=0.5), by_quadrature=False) == pytest.approx(2.0 / 3.0)


def test_unsupported_domain():
    """Test other objects are rejected."""
    with pytest.raises(DomainError):
        oracle_harmonic_measure("strip")
