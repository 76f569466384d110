"""Unit tests for the extremal pairs."""
import numpy as np
import pytest
from src.circle.base import CircleGrid
from src.core.exceptions import DomainError
from src.extremal.base import (
    ExtremalKind,
    ExtremalPairFactory,
    SlitPairBuilder,
    build_p1,
    build_p2,
    builder_for,
    conjugacy_residual,
    convergence_table,
    limit_measure,
    locate_singularities,
    measured_measure,
    refined_norm,
    resolved_radius,
    sidecar,
)
from src.special.base import expected_abs_exit


@pytest.fixture(scope="module")
def p1_half():
    return build_p1(0.5, CircleGrid(2 ** 14))


@pytest.fixture(scope="module")
def p2_half():
    return build_p2(0.5, CircleGrid(2 ** 14))


@pytest.mark.parametrize("c", [0.0, 1.0, 1.5])
def test_builders_reject_c(c):
    """Test c must lie in the open interval (0, 1)."""
    with pytest.raises(DomainError):
        build_p1(c, CircleGrid(64))
    with pytest.raises(DomainError):
        build_p2(c, CircleGrid(64))


def test_builders_reject_radius():
    """Test the evaluation radius must be close to 1 but below it."""
    with pytest.raises(DomainError):
        build_p1(0.5, CircleGrid(64), eval_radius=0.5)
    with pytest.raises(DomainError):
        build_p2(0.5, CircleGrid(64), eval_radius=1.0)


def test_p1_structure(p1_half):
    """Test singular angles, exact arc and predictions of the c = 1/2 slit pair."""
    assert p1_half.kind == ExtremalKind.P1_SLIT
    assert p1_half.p == 1
    assert p1_half.singular_angles == pytest.approx((-np.pi / 6, np.pi / 2), abs=1e-12)
    assert p1_half.exact_measure == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert p1_half.predicted_measure == pytest.approx(2.0 / 3.0)
    assert p1_half.predicted_norm == pytest.approx(expected_abs_exit(0.5))


def test_p1_measure_and_refined_norm(p1_half):
    """Test the measure of {g >= 1 - delta} at the radius and in the radial limit, and the refined L1 norm."""
    assert measured_measure(p1_half) == pytest.approx(2.0 / 3.0, abs=5e-3)
    assert limit_measure(p1_half) == pytest.approx(2.0 / 3.0, abs=2e-3)
    refined = refined_norm(p1_half)
    assert refined.converged
    assert refined.value == pytest.approx(0.8384, abs=5e-3)
    assert len(refined.windows) == 2


def test_p1_singularities_are_the_preimages(p1_half):
    """Test no extra blow-up clusters are found away from the preimages."""
    found = locate_singularities(p1_half)
    assert len(found) == 2
    assert found == pytest.approx(list(p1_half.singular_angles))


def test_p2_structure_and_measure(p2_half):
    """Test the c = 1/2 strip pair: measure 1/2, L2 norm 1."""
    assert p2_half.kind == ExtremalKind.P2_STRIP
    assert p2_half.exact_measure == pytest.approx(0.5, abs=1e-12)
    assert p2_half.predicted_norm == pytest.approx(1.0)
    assert measured_measure(p2_half) == pytest.approx(0.5, abs=2e-3)
    assert refined_norm(p2_half).value == pytest.approx(1.0, abs=5e-3)


@pytest.mark.parametrize("kind", ["p1", "p2"])
def test_g_is_conjugate_of_f(kind):
    """Test Hf = g and mean g = 0 once the grid resolves the radius."""
    pair = ExtremalPairFactory.create(kind, 0.5, CircleGrid(2 ** 16), eval_radius=1.0 - 1e-3)
    assert abs(pair.g.mean) < 1e-9
    assert resolved_radius(pair) == pair.eval_radius
    assert conjugacy_residual(pair) < 1e-8


@pytest.mark.parametrize("fixture", ["p1_half", "p2_half"])
def test_conjugacy_at_default_radius(fixture, request):
    """Test Hf = g - mean g within 1e-3 off the singular angles for pairs built at the default radius."""
    pair = request.getfixturevalue(fixture)
    assert pair.eval_radius == pytest.approx(1.0 - 1e-6)
    assert resolved_radius(pair) == pytest.approx(1.0 - 64.0 / 2 ** 14)
    assert conjugacy_residual(pair) < 1e-3


@pytest.mark.parametrize("c", [0.25, 0.5, 0.75])
def test_slit_radial_limits(c):
    """Test g -> 1 on the arc over the real axis and g <= 1 - 1/c over the slit."""
    grid = CircleGrid(4096)
    pair = build_p1(c, grid)
    _, g = builder_for(pair).boundary_limits(grid.nodes)
    finite = np.isfinite(g)
    assert np.count_nonzero(~finite) <= 2
    on_axis = g[finite] == 1.0
    assert np.all(g[finite][~on_axis] <= 1.0 - 1.0 / c + 1e-12)
    assert np.count_nonzero(on_axis) / grid.n == pytest.approx(pair.exact_measure, abs=2.0 / grid.n)


def test_strip_radial_limits_at_half():
    """Test the strip's limits land on its two lines, with nan at both ends."""
    grid = CircleGrid(1024)
    pair = build_p2(0.5, grid)
    f, g = builder_for(pair).boundary_limits(grid.nodes)
    # t = -pi and t = 0 are the preimages of the two ends
    assert np.isnan(g[0]) and np.isnan(g[grid.n // 2])
    finite = np.isfinite(g)
    assert set(np.unique(g[finite])) == {-1.0, 1.0}
    assert np.all(np.isfinite(f[finite]))
    assert limit_measure(pair) == pytest.approx(0.5, abs=2.0 / grid.n)


def test_factory_rejects_unknown_kind():
    """Test unknown kinds are rejected."""
    with pytest.raises(DomainError):
        ExtremalPairFactory.create("p3", 0.5, CircleGrid(64))


def test_factory_registration(monkeypatch):
    """Test a registered builder is used by create."""
    monkeypatch.setattr(ExtremalPairFactory, "_builders", dict(ExtremalPairFactory._builders))
    ExtremalPairFactory.register_builder("slit", SlitPairBuilder)
    pair = ExtremalPairFactory.create("slit", 0.25, CircleGrid(256))
    assert pair.kind == ExtremalKind.P1_SLIT


def test_convergence_table_rows():
    """Test one row per size, with the exact arc measure carried along."""
    rows = convergence_table("p2", 0.5, sizes=(2 ** 10, 2 ** 11))
    assert [r.n for r in rows] == [1024, 2048]
    assert rows[0].eval_radius == pytest.approx(1.0 - 4.0 / 1024)
    assert all(r.exact_measure == pytest.approx(0.5, abs=1e-12) for r in rows)
    with pytest.raises(DomainError):
        convergence_table("p2", 0.5, sizes=(1024,), radii=(0.999, 0.9999))


def test_sidecar_fields(p2_half):
    """Test the exported metadata."""
    meta = sidecar(p2_half)
    assert meta.kind == "P2_STRIP"
    assert meta.n == 2 ** 14
    assert meta.conjugacy_residual is None
    assert len(meta.singular_angles) == 2
