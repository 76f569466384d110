"""Uniform-grid circle functions, spectral analysis and the conjugate-function transform."""
from dataclasses import dataclass, field
from typing import Literal
import numpy as np
from src.core.exceptions import DomainError, NonRealResult
from src.utils.helpers import is_power_of_two
from src.utils.logger import app_logger

IMAG_RESIDUE_LIMIT = 1e-10


@dataclass(frozen=True)
class CircleGrid:
    """n equispaced nodes t_k = 2*pi*k/n - pi on the circle."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 8 or not is_power_of_two(int(self.n)):
            raise DomainError(f"Grid size must be a power of two and at least 8, got {self.n}")

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.n

    @property
    def nodes(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n) / self.n - np.pi

    @property
    def frequencies(self) -> np.ndarray:
        """Integer frequencies in FFT order, Nyquist reported as +n/2."""
        m = np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)
        m[self.n // 2] = self.n // 2
        return m

    def node_index(self, t: float) -> int:
        """Index of the node equal to t (within 1e-9 after wrapping)."""
        k = (t + np.pi) / self.spacing
        idx = int(np.rint(k)) % self.n
        if abs(k - np.rint(k)) > 1e-9 / self.spacing:
            raise DomainError(f"Angle {t} is not a node of the n={self.n} grid")
        return idx


@dataclass(frozen=True, eq=False)
class CircleFunction:
    """Real samples of a function on a CircleGrid. Values are read-only."""

    grid: CircleGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.shape[0] != self.grid.n:
            raise DomainError(
                f"Expected {self.grid.n} samples, got shape {np.shape(self.values)}"
            )
        if not np.all(np.isfinite(arr)):
            raise DomainError("CircleFunction samples must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_callable(cls, grid: CircleGrid, fn) -> "CircleFunction":
        """Sample fn at the grid nodes."""
        return cls(grid, fn(grid.nodes))

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    def __add__(self, other: "CircleFunction") -> "CircleFunction":
        return CircleFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "CircleFunction") -> "CircleFunction":
        return CircleFunction(self.grid, self.values - other.values)

    def scaled(self, a: float) -> "CircleFunction":
        return CircleFunction(self.grid, a * self.values)


@dataclass(frozen=True, eq=False)
class SpectralCoeffs:
    """
    Fourier coefficients c_m, stored in FFT order.

    Position j holds frequency grid.frequencies[j]; the Nyquist slot is
    frequency +n/2.
    """

    grid: CircleGrid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=complex)
        if arr.shape != (self.grid.n,):
            raise DomainError(f"Expected {self.grid.n} coefficients, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def coefficient(self, m: int) -> complex:
        """c_m for -n/2 < m <= n/2."""
        n = self.grid.n
        if not -n // 2 < m <= n // 2:
            raise DomainError(f"Frequency {m} outside (-{n // 2}, {n // 2}]")
        return complex(self.coeffs[m % n])


def _phase(grid: CircleGrid) -> np.ndarray:
    # e^{-i m t_0} with t_0 = -pi
    return np.where(grid.frequencies % 2 == 0, 1.0, -1.0)


def analyze(f: CircleFunction) -> SpectralCoeffs:
    """Trapezoidal Fourier coefficients c_m = (1/n) sum_k f(t_k) e^{-i m t_k}."""
    grid = f.grid
    return SpectralCoeffs(grid, _phase(grid) * np.fft.fft(f.values) / grid.n)


def synthesize(s: SpectralCoeffs, grid: CircleGrid) -> CircleFunction:
    """
    Inverse of analyze.

    Args:
        s: Coefficients on a grid of the same size
        grid: Target grid

    Returns:
        Real samples sum_m c_m e^{i m t_k}

    Raises:
        NonRealResult: if the imaginary residue exceeds 1e-10
    """
    if s.grid.n != grid.n:
        raise DomainError(f"Coefficient length {s.grid.n} does not match grid size {grid.n}")
    samples = np.fft.ifft(_phase(grid) * s.coeffs) * grid.n
    residue = float(np.max(np.abs(samples.imag)))
    if residue > IMAG_RESIDUE_LIMIT:
        app_logger.error(f"Synthesis left imaginary residue {residue:.3e}")
        raise NonRealResult(f"Imaginary residue {residue:.3e} exceeds {IMAG_RESIDUE_LIMIT:g}")
    return CircleFunction(grid, samples.real)


def hilbert_multiplier(f: CircleFunction) -> CircleFunction:
    """
    Conjugate function via the multiplier c_m -> -i sgn(m) c_m.

    The Nyquist coefficient has no conjugate partner and is sent to 0.
    """
    spectrum = analyze(f)
    m = f.grid.frequencies
    multiplier = -1j * np.sign(m)
    multiplier[f.grid.n // 2] = 0.0
    return synthesize(SpectralCoeffs(f.grid, spectrum.coeffs * multiplier), f.grid)


def hilbert_pv_direct(
    f: CircleFunction,
    t: float,
    rule: Literal["alternating", "punctured"] = "alternating",
) -> float:
    """
    Principal-value sum of (1/2pi) p.v. int f(s) cot((t - s)/2) ds at a grid node.

    The singular node is omitted and nodes are paired symmetrically about t, so
    constants cancel exactly.  "alternating" uses the odd offsets with weight
    2/n and is exact for trigonometric polynomials of degree < n/2.
    "punctured" uses every offset with weight 1/n; it is first order, with
    leading error 2 f'(t)/n.

    Args:
        f: Sampled function
        t: Evaluation angle, must be a grid node
        rule: Pairing rule

    Returns:
        Approximation of the conjugate function at t
    """
    grid = f.grid
    n = grid.n
    j = grid.node_index(t)
    values = f.values
    if rule == "alternating":
        d = np.arange(1, n // 2, 2)
        weight = 2.0 / n
    elif rule == "punctured":
        d = np.arange(1, n // 2)
        weight = 1.0 / n
    else:
        raise DomainError(f"Unknown PV rule: {rule}")
    pairs = values[(j - d) % n] - values[(j + d) % n]
    return float(weight * np.sum(pairs / np.tan(np.pi * d / n)))


def norm_p(f: CircleFunction, p: float) -> float:
    """((1/n) sum |f(t_k)|^p)^(1/p) for p in [1, 2]."""
    if not 1.0 <= p <= 2.0:
        raise DomainError(f"p must lie in [1, 2], got {p}")
    return float(np.mean(np.abs(f.values) ** p) ** (1.0 / p))


def superlevel_measure(f: CircleFunction, level: float) -> float:
    """Fraction of nodes with f(t_k) >= level."""
    return float(np.count_nonzero(f.values >= level)) / f.grid.n
