"""
Conformal maps between the disk, the upper half-plane, the slit domain and the strip.

All maps accept a Python complex or a numpy complex array and return the same
shape. Square roots use the branch with arg in (-pi/2, pi/2], so negative reals
map to the positive imaginary axis.
"""
from typing import Callable, NamedTuple, Tuple, Union
import numpy as np
from scipy.optimize import brentq
from src.core.exceptions import DomainError
from src.schemas.specs import SlitDomainSpec, StripSpec
from src.utils.helpers import wrap_angle
from src.utils.logger import app_logger

ComplexValue = Union[complex, np.ndarray]

BOUNDARY_EPS = 1e-12


def _as_complex(z: ComplexValue) -> np.ndarray:
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Conformal maps are only evaluated at finite points")
    return arr


def _unwrap(arr: np.ndarray, like: ComplexValue) -> ComplexValue:
    return complex(arr) if np.ndim(like) == 0 else arr


def sqrt_principal(z: ComplexValue) -> ComplexValue:
    """Square root with arg in (-pi/2, pi/2]; sqrt(-1) = i even for a -0.0 imaginary part."""
    arr = _as_complex(z)
    w = np.sqrt(arr)
    negative_real = (arr.imag == 0.0) & (arr.real < 0.0)
    w = np.where(negative_real, 1j * np.sqrt(np.abs(arr.real)), w)
    return _unwrap(w, z)


def map_k(z: ComplexValue) -> ComplexValue:
    """
    K(z) = (sqrt z - 1/sqrt z)/2.

    Maps the upper half-plane onto H minus {ai : a >= 1}.

    Raises:
        DomainError: at z = 0
    """
    arr = _as_complex(z)
    if np.any(np.abs(arr) < BOUNDARY_EPS):
        app_logger.error("map_k evaluated at the origin")
        raise DomainError("K is undefined at z = 0")
    s = np.asarray(sqrt_principal(arr))
    return _unwrap((s - 1.0 / s) / 2.0, z)


def map_l(z: ComplexValue) -> ComplexValue:
    """L(z) = 2z^2 + 1 + 2z sqrt(z^2 + 1), the inverse of K."""
    arr = _as_complex(z)
    root = np.asarray(sqrt_principal(arr * arr + 1.0))
    return _unwrap(2.0 * arr * arr + 1.0 + 2.0 * arr * root, z)


def _homography_center(c: float) -> Tuple[float, float]:
    center = complex(map_l(1j * c))
    if abs(center.imag) < BOUNDARY_EPS:
        raise DomainError(f"Im L(ci) vanishes for c={c}; the homography needs c in (0, 1)")
    return center.real, center.imag


def halfplane_to_disk(z: ComplexValue, c: float) -> ComplexValue:
    """
    Homography of the closed upper half-plane onto the closed disk sending L(ci) to 0.

    With (A, B) = L(ci) and u = (z - A)/B this is -2/(u + i) - i; infinity goes to -i.

    Raises:
        DomainError: for Im z < 0 or c outside (0, 1)
    """
    arr = _as_complex(z)
    if np.any(arr.imag < -BOUNDARY_EPS):
        raise DomainError("halfplane_to_disk needs Im z >= 0")
    a, b = _homography_center(c)
    u = (arr - a) / b
    return _unwrap(-2.0 / (u + 1j) - 1j, z)


def disk_to_halfplane(zeta: ComplexValue, c: float) -> ComplexValue:
    """Inverse of halfplane_to_disk; zeta = -i is the preimage of infinity."""
    arr = _as_complex(zeta)
    a, b = _homography_center(c)
    if np.any(np.abs(arr + 1j) < BOUNDARY_EPS):
        raise DomainError("zeta = -i maps to the point at infinity")
    u = -(1.0 + 1j * arr) / (arr + 1j)
    return _unwrap(a + b * u, zeta)


def _check_slit_domain(w: np.ndarray, spec: SlitDomainSpec) -> None:
    if np.any(w.imag < -BOUNDARY_EPS):
        raise DomainError("Point lies below the real axis")
    on_slit = (np.abs(w.real) < BOUNDARY_EPS) & (w.imag >= spec.tip)
    if np.any(on_slit):
        raise DomainError(f"Point lies on the slit {{ai : a >= {spec.tip:g}}}")


def slit_uniformizer(w: ComplexValue, spec: SlitDomainSpec) -> ComplexValue:
    """z = L(c w): slit domain onto the upper half-plane. The slit goes to (-inf, 0]."""
    arr = _as_complex(w)
    _check_slit_domain(arr, spec)
    return _unwrap(np.asarray(map_l(spec.c * arr)), w)


def slit_inverse(z: ComplexValue, spec: SlitDomainSpec) -> ComplexValue:
    """w = K(z)/c, the inverse of slit_uniformizer."""
    return _unwrap(np.asarray(map_k(z)) / spec.c, z)


def slitdomain_to_disk(w: ComplexValue, spec: SlitDomainSpec) -> ComplexValue:
    """N(w); sends the starting point i to 0."""
    return halfplane_to_disk(slit_uniformizer(w, spec), spec.c)


def _check_open_disk(arr: np.ndarray) -> None:
    if np.any(np.abs(arr) >= 1.0):
        raise DomainError("Point must lie in the open unit disk")


def disk_to_slitdomain(zeta: ComplexValue, spec: SlitDomainSpec) -> ComplexValue:
    """
    N^{-1}(zeta) = K(h^{-1}(zeta))/c.

    Args:
        zeta: Point(s) of the open unit disk
        spec: Slit domain

    Returns:
        Point(s) of H minus the slit; zeta = 0 gives i

    Raises:
        DomainError: for |zeta| >= 1 or c = 1
    """
    arr = _as_complex(zeta)
    _check_open_disk(arr)
    return _unwrap(np.asarray(slit_inverse(disk_to_halfplane(arr, spec.c), spec)), zeta)


def _strip_anchor(spec: StripSpec) -> complex:
    return complex(np.exp(1j * np.pi * spec.c))


def disk_to_strip(zeta: ComplexValue, spec: StripSpec) -> ComplexValue:
    """
    Disk onto the strip 0 < Im w < 1/c with 0 going to i.

    The Moebius factor m = (a - conj(a) zeta)/(1 - zeta), a = e^{i pi c}, sends 0 to a
    and zeta = 1 to infinity; then w = Log(m)/(pi c). The arc where m > 0 lands on
    Im w = 0 and the arc where m < 0 on Im w = 1/c.
    """
    arr = _as_complex(zeta)
    _check_open_disk(arr)
    a = _strip_anchor(spec)
    m = (a - np.conj(a) * arr) / (1.0 - arr)
    return _unwrap(np.log(m) / (np.pi * spec.c), zeta)


def strip_to_disk(w: ComplexValue, spec: StripSpec) -> ComplexValue:
    """Inverse of disk_to_strip."""
    arr = _as_complex(w)
    if np.any((arr.imag < -BOUNDARY_EPS) | (arr.imag > spec.height + BOUNDARY_EPS)):
        raise DomainError(f"Point lies outside the strip 0 <= Im w <= {spec.height:g}")
    a = _strip_anchor(spec)
    m = np.exp(np.pi * spec.c * arr)
    return _unwrap((m - a) / (m - np.conj(a)), w)


def boundary_coordinate(phi: ComplexValue, spec: Union[SlitDomainSpec, StripSpec]) -> ComplexValue:
    """
    Real coordinate of e^{i phi} in the intermediate half-plane.

    Positive values are the arc that lands on the real axis of the target domain;
    negative values land on the slit or on the top of the strip.
    """
    zeta = np.exp(1j * np.asarray(phi, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        if isinstance(spec, StripSpec):
            a = _strip_anchor(spec)
            s = ((a - np.conj(a) * zeta) / (1.0 - zeta)).real
        else:
            a_, b_ = _homography_center(spec.c)
            s = (a_ + b_ * (-(1.0 + 1j * zeta) / (zeta + 1j))).real
    return float(s) if np.ndim(phi) == 0 else s


class BoundaryPreimages(NamedTuple):
    """Angles on the unit circle mapped to the two ends of the target domain."""
    zero: float
    pole: float
    positive_arc: float

    @property
    def angles(self) -> Tuple[float, float]:
        return tuple(sorted((self.zero, self.pole)))  # type: ignore[return-value]


def _reciprocal(coord: Callable[[float], float]) -> Callable[[float], float]:
    def inverse(p: float) -> float:
        with np.errstate(divide="ignore", invalid="ignore"):
            v = coord(p)
        # non-finite only at the pole itself
        return 1.0 / v if np.isfinite(v) and v != 0.0 else 0.0

    return inverse


def boundary_preimages(
    spec: Union[SlitDomainSpec, StripSpec], samples: int = 1024, xtol: float = 1e-14
) -> BoundaryPreimages:
    """
    Locate the zero and the pole of boundary_coordinate by bracketing and brentq.

    A sign change where |coordinate| grows toward the bracket from both neighbours is a
    pole; it is found as the root of the reciprocal, so the solver never evaluates the
    coordinate at the pole.

    Args:
        spec: Slit domain (c < 1) or strip
        samples: Scan resolution for sign changes
        xtol: brentq angle tolerance

    Returns:
        Zero angle, pole angle (both wrapped to [-pi, pi)) and the normalized length of
        the arc where the coordinate is positive
    """
    coord: Callable[[float], float] = lambda p: float(boundary_coordinate(p, spec))
    phis = -np.pi + 2.0 * np.pi * (np.arange(samples) + 0.5) / samples
    values = np.asarray(boundary_coordinate(phis, spec))
    magnitude = np.abs(values)
    rtol = 4 * np.finfo(float).eps

    zeros, poles = [], []
    for k in range(samples):
        lo, hi = phis[k], phis[(k + 1) % samples] + (2.0 * np.pi if k == samples - 1 else 0.0)
        v_lo, v_hi = values[k], values[(k + 1) % samples]
        if np.sign(v_lo) == np.sign(v_hi):
            continue
        outer = max(magnitude[k - 1], magnitude[(k + 2) % samples])
        if min(abs(v_lo), abs(v_hi)) > outer:
            poles.append(float(wrap_angle(brentq(_reciprocal(coord), lo, hi, xtol=xtol, rtol=rtol))))
        else:
            zeros.append(float(wrap_angle(brentq(coord, lo, hi, xtol=xtol, rtol=rtol))))

    if len(zeros) != 1 or len(poles) != 1:
        app_logger.error(f"Boundary scan found zeros={zeros} poles={poles}")
        raise DomainError("Expected exactly one zero and one pole of the boundary coordinate")

    zero, pole = zeros[0], poles[0]
    # positive coordinate on the counterclockwise arc from zero to pole, or its complement
    ccw = (pole - zero) % (2.0 * np.pi)
    mid = zero + ccw / 2.0
    positive = ccw if coord(mid) > 0 else 2.0 * np.pi - ccw
    app_logger.debug(f"Boundary preimages: zero={zero:.15f} pole={pole:.15f}")
    return BoundaryPreimages(zero=zero, pole=pole, positive_arc=positive / (2.0 * np.pi))
