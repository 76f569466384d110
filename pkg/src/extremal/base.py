"""Extremal boundary-function pairs built from the slit-domain and strip maps."""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Type, Union
import numpy as np
from scipy import integrate
from src.circle.base import CircleFunction, CircleGrid, hilbert_multiplier, norm_p, superlevel_measure
from src.conformal.base import (
    BOUNDARY_EPS,
    BoundaryPreimages,
    boundary_coordinate,
    boundary_preimages,
    disk_to_slitdomain,
    disk_to_strip,
    slit_inverse,
)
from src.core.config import settings
from src.core.exceptions import DomainError, SharpHilbertException
from src.schemas.reports import ConvergenceRow, ExtremalSidecar
from src.schemas.specs import SlitDomainSpec, StripSpec
from src.special.base import expected_abs_exit, prob_real_axis
from src.utils.helpers import circular_index_distance, wrap_angle
from src.utils.logger import app_logger

MIN_RADIUS = 0.99
MAX_RADIUS = 1.0 - 1e-8
# 1 - r >= RESOLVED_CELLS / n keeps the aliased Fourier tail below e^{-RESOLVED_CELLS/2}
RESOLVED_CELLS = 64


class ExtremalKind(str, Enum):
    P1_SLIT = "P1_SLIT"
    P2_STRIP = "P2_STRIP"


@dataclass(frozen=True, eq=False)
class ExtremalPair:
    """
    Boundary values f = Re F(r e^{-it}) and g = 1 - Im F(r e^{-it}) of a disk map F with F(0) = i.

    The reversed orientation makes g the conjugate function of f with mean 0.
    """

    f: CircleFunction
    g: CircleFunction
    c: float
    kind: ExtremalKind
    predicted_measure: float
    predicted_norm: float
    eval_radius: float
    singular_angles: Tuple[float, ...] = ()
    exact_measure: Optional[float] = None

    def __post_init__(self):
        if self.f.grid != self.g.grid:
            raise DomainError("f and g must share a grid")

    @property
    def grid(self) -> CircleGrid:
        return self.f.grid

    @property
    def p(self) -> int:
        return 1 if self.kind == ExtremalKind.P1_SLIT else 2


class ExtremalPairBuilder(ABC):
    """Builds an ExtremalPair from a disk map."""

    kind: ExtremalKind

    def __init__(self, c: float, grid: CircleGrid, eval_radius: Optional[float] = None):
        if not 0.0 < c < 1.0:
            raise DomainError(f"Extremal pairs need c in (0, 1), got {c}")
        eval_radius = settings.eval_radius if eval_radius is None else eval_radius
        if not MIN_RADIUS <= eval_radius <= MAX_RADIUS:
            raise DomainError(
                f"eval_radius must lie in [{MIN_RADIUS}, {MAX_RADIUS}], got {eval_radius}"
            )
        self.c = c
        self.grid = grid
        self.eval_radius = eval_radius

    @property
    @abstractmethod
    def domain(self) -> Union[SlitDomainSpec, StripSpec]:
        """Target domain of the disk map."""

    @abstractmethod
    def disk_map(self, zeta: np.ndarray) -> np.ndarray:
        """Disk to domain, with 0 going to i."""

    @abstractmethod
    def limit_map(self, s: np.ndarray) -> np.ndarray:
        """Domain boundary point over the real half-plane coordinate s (s != 0, finite)."""

    @abstractmethod
    def predictions(self) -> Tuple[float, float]:
        """(measure, norm) the pair attains in the radial limit."""

    def boundary_values(self, t: np.ndarray, radius: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
        """(f, g) at angles t on the circle of the given radius."""
        r = self.eval_radius if radius is None else radius
        w = np.asarray(self.disk_map(r * np.exp(-1j * np.asarray(t, dtype=float))))
        return w.real, 1.0 - w.imag

    def boundary_limits(self, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Radial limits of (f, g) at angles t, through the half-plane coordinate of e^{-it}.

        Angles whose coordinate is 0 or infinite are the domain's ends and come back as nan.
        """
        s = np.atleast_1d(np.asarray(boundary_coordinate(-np.asarray(t, dtype=float), self.domain)))
        f = np.full(s.shape, np.nan)
        g = np.full(s.shape, np.nan)
        regular = np.isfinite(s) & (np.abs(s) >= BOUNDARY_EPS)
        w = np.asarray(self.limit_map(s[regular].astype(complex)))
        f[regular] = w.real
        g[regular] = 1.0 - w.imag
        return f, g

    def build(self) -> ExtremalPair:
        """
        Sample the pair on the grid.

        Returns:
            ExtremalPair with predictions, singular angles and the exact arc measure
        """
        app_logger.info(
            f"Building {self.kind.value} pair: c={self.c}, n={self.grid.n}, r={self.eval_radius}"
        )
        try:
            f_vals, g_vals = self.boundary_values(self.grid.nodes)
            preimages: BoundaryPreimages = boundary_preimages(self.domain)
        except SharpHilbertException:
            raise
        except Exception as e:
            app_logger.error(f"Failed to build {self.kind.value} pair: {str(e)}")
            raise DomainError(f"Failed to build {self.kind.value} pair: {str(e)}")

        measure, norm = self.predictions()
        # boundary point e^{i phi} sits at t = -phi
        singular = tuple(sorted(float(wrap_angle(-phi)) for phi in preimages.angles))
        return ExtremalPair(
            f=CircleFunction(self.grid, f_vals),
            g=CircleFunction(self.grid, g_vals),
            c=self.c,
            kind=self.kind,
            predicted_measure=measure,
            predicted_norm=norm,
            eval_radius=self.eval_radius,
            singular_angles=singular,
            exact_measure=preimages.positive_arc,
        )


class SlitPairBuilder(ExtremalPairBuilder):
    """Pair from N^{-1}, the disk onto H minus {ai : a >= 1/c}."""

    kind = ExtremalKind.P1_SLIT

    @property
    def domain(self) -> SlitDomainSpec:
        return SlitDomainSpec(c=self.c)

    def disk_map(self, zeta: np.ndarray) -> np.ndarray:
        return np.asarray(disk_to_slitdomain(zeta, self.domain))

    def limit_map(self, s: np.ndarray) -> np.ndarray:
        return np.asarray(slit_inverse(s, self.domain))

    def predictions(self) -> Tuple[float, float]:
        return prob_real_axis(self.c), expected_abs_exit(self.c)


class StripPairBuilder(ExtremalPairBuilder):
    """Pair from the disk onto the strip 0 < Im w < 1/c."""

    kind = ExtremalKind.P2_STRIP

    @property
    def domain(self) -> StripSpec:
        return StripSpec(c=self.c)

    def disk_map(self, zeta: np.ndarray) -> np.ndarray:
        return np.asarray(disk_to_strip(zeta, self.domain))

    def limit_map(self, s: np.ndarray) -> np.ndarray:
        # negative s carries imaginary part +0, so Log lands on Im w = 1/c
        return np.log(s) / (np.pi * self.c)

    def predictions(self) -> Tuple[float, float]:
        return 1.0 - self.c, float(np.sqrt((1.0 - self.c) / self.c))


class ExtremalPairFactory:
    """Factory for extremal pair builders."""

    _builders: Dict[str, Type[ExtremalPairBuilder]] = {
        "p1": SlitPairBuilder,
        "p2": StripPairBuilder,
    }

    @classmethod
    def builder(
        cls, kind: str, c: float, grid: CircleGrid, eval_radius: Optional[float] = None
    ) -> ExtremalPairBuilder:
        key = kind.lower()
        if key not in cls._builders:
            raise DomainError(f"Unknown pair kind: {kind}. Available: {list(cls._builders.keys())}")
        return cls._builders[key](c, grid, eval_radius)

    @classmethod
    def create(
        cls, kind: str, c: float, grid: CircleGrid, eval_radius: Optional[float] = None
    ) -> ExtremalPair:
        return cls.builder(kind, c, grid, eval_radius).build()

    @classmethod
    def register_builder(cls, name: str, builder_class: Type[ExtremalPairBuilder]):
        """Register a new pair builder."""
        cls._builders[name] = builder_class
        app_logger.info(f"Registered extremal builder: {name}")


def build_p1(c: float, grid: CircleGrid, eval_radius: Optional[float] = None) -> ExtremalPair:
    """Slit-domain pair: measure P(c), L1 norm E(c)."""
    return ExtremalPairFactory.create("p1", c, grid, eval_radius)


def build_p2(c: float, grid: CircleGrid, eval_radius: Optional[float] = None) -> ExtremalPair:
    """Strip pair: measure 1 - c, L2 norm sqrt((1 - c)/c)."""
    return ExtremalPairFactory.create("p2", c, grid, eval_radius)


def builder_for(pair: ExtremalPair) -> ExtremalPairBuilder:
    key = "p1" if pair.kind == ExtremalKind.P1_SLIT else "p2"
    return ExtremalPairFactory.builder(key, pair.c, pair.grid, pair.eval_radius)


def _clusters(mask: np.ndarray) -> List[np.ndarray]:
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    groups = np.split(idx, breaks + 1)
    # a cluster running across index n-1 -> 0 is one cluster
    if len(groups) > 1 and groups[0][0] == 0 and groups[-1][-1] == mask.size - 1:
        groups[0] = np.concatenate((groups[-1], groups[0]))
        groups.pop()
    return groups


def locate_singularities(pair: ExtremalPair, cap: Optional[float] = None) -> List[float]:
    """
    Angles where f is unbounded.

    The preimages of the domain's ends found at build time, plus the peak of every run
    of nodes with |f| > cap that lies away from them. Both kinds have two ends, so a clean
    pair gives two angles; for P1 they are the two prime ends at infinity on either side
    of the slit.

    Args:
        pair: Extremal pair
        cap: Magnitude threshold, defaults to settings.singularity_cap

    Returns:
        Sorted angles in [-pi, pi)
    """
    cap = settings.singularity_cap if cap is None else cap
    grid = pair.grid
    angles = list(pair.singular_angles)
    known = [_nearest_index(grid, a) for a in angles]

    magnitude = np.abs(pair.f.values)
    for cluster in _clusters(magnitude > cap):
        peak = int(cluster[np.argmax(magnitude[cluster])])
        if all(circular_index_distance(peak, k, grid.n) > settings.singularity_guard for k in known):
            angles.append(float(grid.nodes[peak]))
    return sorted(angles)


def _nearest_index(grid: CircleGrid, t: float) -> int:
    return int(np.rint((t + np.pi) / grid.spacing)) % grid.n


def singular_mask(pair: ExtremalPair, guard: Optional[int] = None) -> np.ndarray:
    """True at nodes within guard nodes of a singular angle."""
    guard = settings.singularity_guard if guard is None else guard
    grid = pair.grid
    mask = np.zeros(grid.n, dtype=bool)
    idx = np.arange(grid.n)
    for t in locate_singularities(pair):
        center = _nearest_index(grid, t)
        mask |= circular_index_distance(idx, center, grid.n) <= guard
    return mask


def resolved_radius(pair: ExtremalPair) -> float:
    """The pair's radius, pulled in to 1 - RESOLVED_CELLS/n when the grid cannot resolve it."""
    return min(pair.eval_radius, 1.0 - RESOLVED_CELLS / pair.grid.n)


def conjugacy_residual(pair: ExtremalPair, guard: Optional[int] = None) -> float:
    """
    max |H f - (g - mean g)| away from the singular angles.

    f and g are resampled at resolved_radius(pair). Near 1 the spikes of f at the
    singular angles are narrower than a grid cell and the multiplier aliases them.
    """
    f_vals, g_vals = builder_for(pair).boundary_values(pair.grid.nodes, radius=resolved_radius(pair))
    transformed = hilbert_multiplier(CircleFunction(pair.grid, f_vals)).values
    centered = g_vals - np.mean(g_vals)
    keep = ~singular_mask(pair, guard)
    return float(np.max(np.abs(transformed - centered)[keep]))


def measured_measure(pair: ExtremalPair, delta: Optional[float] = None) -> float:
    """Node fraction with g >= 1 - delta at the pair's radius."""
    delta = settings.superlevel_delta if delta is None else delta
    return superlevel_measure(pair.g, 1.0 - delta)


def limit_measure(pair: ExtremalPair, delta: Optional[float] = None) -> float:
    """
    Node fraction with g >= 1 - delta for the radial limit of g.

    At radius r the set {g >= 1 - delta} misses a neighbourhood of each end of width
    about ((1 - r)/delta)^(2/3); the radial limit has no such gap. Nodes sitting on an
    end count as outside.
    """
    delta = settings.superlevel_delta if delta is None else delta
    _, g = builder_for(pair).boundary_limits(pair.grid.nodes)
    with np.errstate(invalid="ignore"):
        return float(np.count_nonzero(g >= 1.0 - delta)) / pair.grid.n


@dataclass
class RefinedNorm:
    value: float
    raw: float
    converged: bool
    windows: List[Tuple[float, float]] = field(default_factory=list)


def refined_norm(pair: ExtremalPair, p: Optional[float] = None, guard: Optional[int] = None) -> RefinedNorm:
    """
    L^p norm of f with the nodes near each singular angle replaced by adaptive quadrature.

    Each excluded window is the union of the excluded nodes' cells; the integrand is f at
    the pair's radius with a breakpoint at the singular angle.
    """
    p = float(pair.p if p is None else p)
    guard = settings.singularity_guard if guard is None else guard
    grid = pair.grid
    n, dt = grid.n, grid.spacing
    builder = builder_for(pair)
    abs_p = np.abs(pair.f.values) ** p

    mask = singular_mask(pair, guard)
    total = float(np.sum(abs_p[~mask])) / n
    converged = True
    windows = []

    def integrand(t: float) -> float:
        f_val, _ = builder.boundary_values(np.array([t]))
        return float(abs(f_val[0]) ** p)

    for t_s in locate_singularities(pair):
        center = float(grid.nodes[_nearest_index(grid, t_s)])
        lo, hi = center - (guard + 0.5) * dt, center + (guard + 0.5) * dt
        result = integrate.quad(
            integrand,
            lo,
            hi,
            points=[t_s] if lo < t_s < hi else None,
            epsabs=settings.abs_tol,
            epsrel=1e-8,
            limit=settings.max_subdivisions,
            full_output=1,
        )
        if len(result) == 4:
            converged = False
            app_logger.warning(f"Window quadrature near t={t_s:.6f} did not converge: {result[3]}")
        total += float(result[0]) / (2.0 * np.pi)
        windows.append((lo, hi))

    return RefinedNorm(
        value=total ** (1.0 / p),
        raw=norm_p(pair.f, p),
        converged=converged,
        windows=windows,
    )


def convergence_table(
    kind: str,
    c: float,
    sizes: Sequence[int] = (2 ** 12, 2 ** 13, 2 ** 14, 2 ** 15, 2 ** 16),
    radii: Optional[Sequence[float]] = None,
    delta: Optional[float] = None,
) -> List[ConvergenceRow]:
    """
    Measured vs predicted measure and norm as n grows and the radius approaches 1.

    Args:
        kind: "p1" or "p2"
        c: Domain parameter
        sizes: Grid sizes
        radii: Radius per size, defaults to 1 - 4/n

    Returns:
        One row per (n, r)
    """
    radii = list(radii) if radii is not None else [1.0 - 4.0 / n for n in sizes]
    if len(radii) != len(sizes):
        raise DomainError("sizes and radii must have equal length")

    rows = []
    for n, r in zip(sizes, radii):
        pair = ExtremalPairFactory.create(kind, c, CircleGrid(n), r)
        measure = measured_measure(pair, delta)
        refined = refined_norm(pair)
        rows.append(
            ConvergenceRow(
                n=n,
                eval_radius=r,
                measure=measure,
                exact_measure=float(pair.exact_measure or 0.0),
                predicted_measure=pair.predicted_measure,
                measure_error=abs(measure - pair.predicted_measure),
                norm_raw=refined.raw,
                norm_refined=refined.value,
                predicted_norm=pair.predicted_norm,
                norm_error=abs(refined.value - pair.predicted_norm),
                refined_converged=refined.converged,
            )
        )
        app_logger.debug(f"convergence n={n} r={r}: {rows[-1].model_dump()}")
    return rows


def sidecar(pair: ExtremalPair, with_residual: bool = False) -> ExtremalSidecar:
    """Metadata for an exported pair."""
    refined = refined_norm(pair)
    return ExtremalSidecar(
        kind=pair.kind.value,
        c=pair.c,
        n=pair.grid.n,
        eval_radius=pair.eval_radius,
        predicted_measure=pair.predicted_measure,
        predicted_norm=pair.predicted_norm,
        singular_angles=locate_singularities(pair),
        measure=measured_measure(pair),
        limit_measure=limit_measure(pair),
        exact_measure=float(pair.exact_measure or 0.0),
        norm_refined=refined.value,
        conjugacy_residual=conjugacy_residual(pair) if with_residual else None,
        conjugacy_radius=resolved_radius(pair) if with_residual else None,
    )
