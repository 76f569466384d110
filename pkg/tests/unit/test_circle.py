"""Unit tests for the circle module."""
import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st
from src.circle.base import (
    CircleFunction,
    CircleGrid,
    SpectralCoeffs,
    analyze,
    hilbert_multiplier,
    hilbert_pv_direct,
    norm_p,
    superlevel_measure,
    synthesize,
)
from src.core.exceptions import DomainError, NonRealResult
from src.verify.base import corpus_function


@pytest.mark.parametrize("n", [0, 4, 12, 100, 1000])
def test_grid_rejects_bad_sizes(n):
    """Test grid sizes must be powers of two, at least 8."""
    with pytest.raises(DomainError):
        CircleGrid(n)


def test_grid_nodes_cover_half_open_interval(grid_64):
    """Test nodes start at -pi and stop one spacing short of pi."""
    nodes = grid_64.nodes
    assert nodes[0] == pytest.approx(-np.pi)
    assert nodes[-1] == pytest.approx(np.pi - grid_64.spacing)
    assert grid_64.node_index(float(nodes[5])) == 5


def test_node_index_rejects_off_grid_angle(grid_64):
    """Test a non-node angle is rejected."""
    with pytest.raises(DomainError):
        grid_64.node_index(0.01)


def test_circle_function_values_read_only(grid_64):
    """Test the sample array cannot be mutated."""
    f = CircleFunction(grid_64, np.zeros(64))
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_circle_function_rejects_wrong_length_and_nan(grid_64):
    """Test shape and finiteness checks."""
    with pytest.raises(DomainError):
        CircleFunction(grid_64, np.zeros(63))
    values = np.zeros(64)
    values[3] = np.nan
    with pytest.raises(DomainError):
        CircleFunction(grid_64, values)


def test_analyze_single_mode(grid_64):
    """Test cos 3t has coefficients 1/2 at m = +-3 and nothing else."""
    f = CircleFunction.from_callable(grid_64, lambda t: np.cos(3 * t))
    s = analyze(f)
    assert s.coefficient(3) == pytest.approx(0.5, abs=1e-14)
    assert s.coefficient(-3) == pytest.approx(0.5, abs=1e-14)
    others = [abs(s.coefficient(m)) for m in range(-31, 33) if abs(m) != 3]
    assert max(others) < 1e-14


def test_nyquist_reported_at_positive_frequency(grid_64):
    """Test the alternating sequence is the +n/2 coefficient."""
    f = CircleFunction(grid_64, (-1.0) ** np.arange(64))
    s = analyze(f)
    assert abs(s.coefficient(32)) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        s.coefficient(-32)


def test_synthesize_inverts_analyze(trig_poly):
    """Test the inverse transform restores the samples."""
    f, _ = trig_poly
    back = synthesize(analyze(f), f.grid)
    assert np.max(np.abs(back.values - f.values)) < 1e-13


def test_synthesize_rejects_non_real(grid_64):
    """Test a one-sided spectrum has an imaginary residue."""
    coeffs = np.zeros(64, dtype=complex)
    coeffs[1] = 1.0
    with pytest.raises(NonRealResult):
        synthesize(SpectralCoeffs(grid_64, coeffs), grid_64)


def test_hilbert_multiplier_on_trig_poly(trig_poly):
    """Test Hf matches the conjugate series exactly."""
    f, expected = trig_poly
    assert np.max(np.abs(hilbert_multiplier(f).values - expected)) < 1e-13


def test_hilbert_kills_constants_and_nyquist(grid_64):
    """Test constants and the alternating sequence map to zero."""
    f = CircleFunction(grid_64, 2.0 + (-1.0) ** np.arange(64))
    assert np.max(np.abs(hilbert_multiplier(f).values)) < 1e-13


def test_hilbert_twice_is_minus_identity_on_mean_zero(trig_poly):
    """Test H(Hf) = -(f - mean f) away from the Nyquist mode."""
    f, _ = trig_poly
    twice = hilbert_multiplier(hilbert_multiplier(f))
    assert np.max(np.abs(twice.values + (f.values - f.mean))) < 1e-13


@hsettings(max_examples=30, deadline=None)
@given(
    a=st.floats(-5.0, 5.0),
    b=st.floats(-5.0, 5.0),
    seed=st.integers(0, 2 ** 32 - 1),
)
def test_hilbert_is_linear(a, b, seed):
    """Test H(a f + b g) = a Hf + b Hg."""
    grid = CircleGrid(64)
    rng = np.random.default_rng(seed)
    f = CircleFunction(grid, rng.standard_normal(64))
    g = CircleFunction(grid, rng.standard_normal(64))
    lhs = hilbert_multiplier(f.scaled(a) + g.scaled(b)).values
    rhs = a * hilbert_multiplier(f).values + b * hilbert_multiplier(g).values
    assert np.max(np.abs(lhs - rhs)) < 1e-11


def test_pv_alternating_rule_exact_on_trig_poly(trig_poly):
    """Test the alternating principal-value sum reproduces Hf at every node."""
    f, expected = trig_poly
    direct = np.array([hilbert_pv_direct(f, float(t)) for t in f.grid.nodes])
    assert np.max(np.abs(direct - expected)) < 1e-12


def test_pv_punctured_rule_is_first_order():
    """Test the punctured rule error shrinks roughly like 1/n."""
    errors = []
    for n in (256, 512):
        grid = CircleGrid(n)
        f = CircleFunction.from_callable(grid, np.cos)
        t = float(grid.nodes[n // 4])
        errors.append(abs(hilbert_pv_direct(f, t, rule="punctured") - np.sin(t)))
    assert errors[1] < errors[0]
    assert errors[0] / errors[1] == pytest.approx(2.0, rel=0.1)


def test_pv_unknown_rule(grid_64):
    """Test an unknown rule is rejected."""
    f = CircleFunction(grid_64, np.zeros(64))
    with pytest.raises(DomainError):
        hilbert_pv_direct(f, float(grid_64.nodes[0]), rule="midpoint")


def test_norms_of_cosine(grid_1024):
    """Test ||cos||_1 = 2/pi and ||cos||_2 = 1/sqrt 2."""
    f = CircleFunction.from_callable(grid_1024, np.cos)
    assert norm_p(f, 1) == pytest.approx(2.0 / np.pi, abs=1e-5)
    assert norm_p(f, 2) == pytest.approx(np.sqrt(0.5), abs=1e-12)
    with pytest.raises(DomainError):
        norm_p(f, 3)


def test_superlevel_measure_counts_nodes(grid_64):
    """Test the measure is the fraction of nodes at or above the level."""
    f = CircleFunction(grid_64, np.where(np.arange(64) < 16, 1.0, 0.0))
    assert superlevel_measure(f, 1.0) == 0.25
    assert superlevel_measure(f, 2.0) == 0.0
    assert superlevel_measure(f, -1.0) == 1.0


@pytest.mark.parametrize("index", range(50))
def test_pv_matches_multiplier_on_corpus(index):
    """Test the alternating sum and the FFT multiplier agree on random trig polynomials at n = 4096."""
    f = corpus_function(index, seed=11, n=4096)
    h = hilbert_multiplier(f)
    scale = max(1.0, float(np.max(np.abs(f.values))))
    nodes = f.grid.nodes[::4]
    direct = np.array([hilbert_pv_direct(f, float(t)) for t in nodes])
    assert np.max(np.abs(direct - h.values[::4])) < 1e-6 * scale

    twice = hilbert_multiplier(h)
    assert np.max(np.abs(twice.values + (f.values - f.mean))) < 1e-10 * scale
