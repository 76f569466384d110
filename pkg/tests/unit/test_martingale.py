"""Unit tests for the exit-time simulation and the martingale bound."""
import math
import numpy as np
import pytest
from src.core.config import settings
from src.core.exceptions import ConfigError
from src.martingale.base import (
    BOTTOM,
    CENSORED,
    SLIT,
    TOP,
    DomainFactory,
    SlitDomain,
    StripDomain,
    martingale_bound,
    path_generator,
    simulate,
    verify_martingale_bound,
    walk,
)
from src.schemas.specs import build_sim_spec


@pytest.fixture(scope="module")
def strip_run():
    spec = build_sim_spec("strip", 0.5, paths=2000, step=1e-3, seed=11)
    return spec, simulate(spec, workers=1)


def test_domain_factory():
    """Test known domains are built and unknown ones rejected."""
    assert isinstance(DomainFactory.create("slit", 0.5), SlitDomain)
    assert isinstance(DomainFactory.create("strip", 0.5), StripDomain)
    with pytest.raises(ConfigError):
        DomainFactory.create("disk", 0.5)


def test_slit_crossing_is_interpolated():
    """Test a segment through x = 0 above the tip exits on the slit, below it does not."""
    domain = SlitDomain(0.5)
    hit = domain.first_exit(np.array([-1.0, 1.0]), np.array([3.0, 3.0]))
    assert hit is not None
    assert hit.kind == SLIT
    assert hit.position == pytest.approx(0.5)
    assert domain.first_exit(np.array([-1.0, 1.0]), np.array([1.5, 1.5])) is None


def test_bottom_exit_takes_earliest_crossing():
    """Test the bottom crossing wins when it comes first and x is interpolated."""
    domain = SlitDomain(0.5)
    xs = np.array([0.2, 0.4, -0.4])
    ws = np.array([0.5, -0.5, 3.0])
    hit = domain.first_exit(xs, ws)
    assert hit.kind == BOTTOM
    assert hit.x == pytest.approx(0.3)


def test_strip_top_exit():
    """Test crossing w = 1/c exits through the top."""
    hit = StripDomain(0.5).first_exit(np.array([0.0, 1.0]), np.array([1.5, 2.5]))
    assert hit.kind == TOP
    assert hit.x == pytest.approx(0.5)


def test_path_streams_are_counter_based():
    """Test a path's stream depends only on (seed, index)."""
    a = path_generator(3, 17).standard_normal(8)
    b = path_generator(3, 17).standard_normal(8)
    c = path_generator(3, 18).standard_normal(8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_c_equal_one_exits_at_start():
    """Test (0, 1) is already on the boundary when c = 1."""
    assert walk(SlitDomain(1.0), 0, 0, 1e-3, 10) == (SLIT, 0.0)
    assert walk(StripDomain(1.0), 0, 0, 1e-3, 10) == (TOP, 0.0)


def test_censoring():
    """Test paths still inside after max_steps are censored with x = nan."""
    kind, x = walk(SlitDomain(0.5), 0, 0, 1e-3, 1)
    assert kind == CENSORED
    assert math.isnan(x)


def test_strip_estimates(strip_run):
    """Test p_hat is near 1 - c and E X^2 near (1 - c)/c."""
    spec, result = strip_run
    assert sum(result.exit_counts.values()) == spec.paths
    assert result.censored_fraction == 0.0
    assert result.p_hat == pytest.approx(0.5, abs=0.06)
    moment, moment_se = result.moment
    assert moment == pytest.approx(1.0, abs=0.15)
    assert moment_se > 0.0


def test_strip_bound_and_attainment(strip_run):
    """Test both report entries for the strip pass."""
    spec, result = strip_run
    rhs, se = martingale_bound(spec, result)
    assert rhs == pytest.approx(0.25 * result.moment[0] + 0.25)
    assert se >= result.p_se
    report = verify_martingale_bound(spec, result)
    assert [e.name for e in report.entries] == ["martingale_strip", "martingale_strip_attainment"]
    assert report.passed


def test_result_independent_of_workers(monkeypatch):
    """Test the aggregate is bit-identical for one and two workers."""
    monkeypatch.setattr(settings, "progress_every", 100)
    spec = build_sim_spec("strip", 0.5, paths=400, step=1e-2, seed=5, max_time=10.0)
    one = simulate(spec, workers=1)
    two = simulate(spec, workers=2)
    assert one.model_dump() == two.model_dump()


def test_slit_short_run_counts():
    """Test a short slit run accounts for every path."""
    spec = build_sim_spec("slit", 0.5, paths=200, step=1e-2, seed=2, max_time=10.0)
    result = simulate(spec, workers=1)
    assert sum(result.exit_counts.values()) == 200
    assert 0.0 <= result.p_hat <= 1.0
    assert result.m1_hat is not None


def test_degenerate_slit_bound():
    """Test c = 1: every path stops at the start and the bound is 0 <= 0."""
    spec = build_sim_spec("slit", 1.0, paths=50, step=1e-3, seed=0)
    result = simulate(spec, workers=1)
    assert result.p_hat == 0.0
    assert result.exit_counts["slit"] == 50
    report = verify_martingale_bound(spec, result)
    assert report.entries[0].rhs == pytest.approx(0.0, abs=1e-15)
    assert report.passed


def test_invalid_spec_is_config_error():
    """Test out-of-range spec values raise ConfigError."""
    with pytest.raises(ConfigError):
        build_sim_spec("strip", 0.5, step=0.5)
    with pytest.raises(ConfigError):
        build_sim_spec("strip", 0.0)
