"""
Special functions: the Poisson integral, U and its rescalings, the quadratic U2,
and the closed-form harmonic-measure constants.
"""
import math
from typing import Optional, Sequence
import numpy as np
from scipy import integrate
from src.conformal.base import map_l
from src.core.exceptions import DomainError, QuadratureFailure
from src.schemas.reports import ClosedFormConstants
from src.schemas.specs import SpecialFnConfig
from src.utils.logger import app_logger


def _check_c(c: float, name: str = "c") -> None:
    if not 0.0 < c <= 1.0:
        raise DomainError(f"{name} must lie in (0, 1], got {c}")


def boundary_value(t: float) -> float:
    """Boundary data of the Poisson integral: 1 - |sqrt t - 1/sqrt t|/2 for t > 0, else 0."""
    if t <= 0.0:
        return 0.0
    r = math.sqrt(t)
    return 1.0 - abs(r - 1.0 / r) / 2.0


def _quad(fn, points: Sequence[float], cfg: SpecialFnConfig, label: str) -> float:
    inner = [p for p in points if 0.0 < p < 1.0]
    result = integrate.quad(
        fn,
        0.0,
        1.0,
        points=inner or None,
        epsabs=cfg.abs_tol,
        epsrel=1e-10,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    if len(result) == 4:
        value, error, _, message = result
        app_logger.error(f"Quadrature '{label}' failed: {message} (error estimate {error:.2e})")
        raise QuadratureFailure(f"Quadrature '{label}' missed tolerance {cfg.abs_tol:g}: {message}")
    return float(result[0])


def poisson_pieces(alpha: float, beta: float, cfg: Optional[SpecialFnConfig] = None):
    """
    The two halves of the Poisson integral, over t in (0, 1) and t in (1, inf).

    Substituting t = s^2 on (0, 1), and t = s^2 with s = 1/u on (1, inf), both pieces
    become integrals over (0, 1) with bounded integrands.
    """
    cfg = cfg or SpecialFnConfig()
    a, b = float(alpha), float(beta)

    def lower(s: float) -> float:
        d = a - s * s
        return b * (s * s + 2.0 * s - 1.0) / (d * d + b * b)

    def upper(u: float) -> float:
        u2 = u * u
        d = a * u2 - 1.0
        return b * (u2 + 2.0 * u - 1.0) / (d * d + b * b * u2 * u2)

    peaks_lower = [math.sqrt(a)] if a > 0.0 else []
    peaks_upper = [1.0 / math.sqrt(a)] if a > 0.0 else []
    first = _quad(lower, peaks_lower, cfg, "poisson (0,1)") / math.pi
    second = _quad(upper, peaks_upper, cfg, "poisson (1,inf)") / math.pi
    return first, second


def poisson_u(alpha: float, beta: float, cfg: Optional[SpecialFnConfig] = None) -> float:
    """
    Poisson integral over (0, inf) of the boundary data at the point alpha + i beta.

    Args:
        alpha: Real part
        beta: Imaginary part, >= 0; beta = 0 returns the boundary value
        cfg: Quadrature controls

    Returns:
        The harmonic extension's value

    Raises:
        DomainError: for beta < 0
        QuadratureFailure: if either piece misses its tolerance
    """
    if beta < 0.0:
        raise DomainError(f"poisson_u needs beta >= 0, got {beta}")
    if beta == 0.0:
        return boundary_value(alpha)
    first, second = poisson_pieces(alpha, beta, cfg)
    return first + second


def u_function(x: float, y: float, cfg: Optional[SpecialFnConfig] = None) -> float:
    """
    U(x, y): 1 - |x| for y <= 0, 0 on the slit {x = 0, y >= 1}, and the Poisson
    integral at L(x + iy) elsewhere. Evaluated at |x|, since U is even in x.
    """
    if y <= 0.0:
        return 1.0 - abs(x)
    if x == 0.0 and y >= 1.0:
        return 0.0
    z = complex(map_l(complex(abs(x), y)))
    return poisson_u(z.real, max(z.imag, 0.0), cfg)


def prob_real_axis(c: float) -> float:
    """P(c) = 1 - (2/pi) arcsin c."""
    _check_c(c)
    return 1.0 - 2.0 * math.asin(c) / math.pi


def expected_abs_exit(c: float) -> float:
    """E(c) = (2/pi) ln(1/c + sqrt(1/c^2 - 1))."""
    _check_c(c)
    return 2.0 * math.acosh(1.0 / c) / math.pi


def u0c_closed(c: float) -> float:
    """U(0, c) = P(c) - c E(c)."""
    return prob_real_axis(c) - c * expected_abs_exit(c)


def closed_constants(c: float) -> ClosedFormConstants:
    """P, E and U(0, c) for the slit with tip at height 1/c."""
    p = prob_real_axis(c)
    e = expected_abs_exit(c)
    return ClosedFormConstants(c=c, P=p, E=e, U0c=p - c * e)


def u1c(x: float, y: float, c: float, cfg: Optional[SpecialFnConfig] = None) -> float:
    """U(cx, cy)/c."""
    _check_c(c)
    return u_function(c * x, c * y, cfg) / c


def u2(x: float, y: float) -> float:
    """1 - x^2 for y <= 0, (1 - y)^2 - x^2 for 0 < y <= 1, -x^2 for y > 1."""
    if y <= 0.0:
        return 1.0 - x * x
    if y <= 1.0:
        return (1.0 - y) ** 2 - x * x
    return -x * x


def u2c(x: float, y: float, c: float) -> float:
    """u2(cx, cy)/c^2."""
    _check_c(c)
    return u2(c * x, c * y) / (c * c)


def optimal_c_p1(x: float) -> float:
    """
    Minimizer over c of c x + U(0, c); equals 2e^{pi x/2}/(1 + e^{pi x}) = 1/cosh(pi x/2).

    The minimizer solves E(c) = x.
    """
    if x < 0.0:
        raise DomainError(f"optimal_c_p1 needs x >= 0, got {x}")
    decay = math.exp(-math.pi * x / 2.0)
    return 2.0 * decay / (1.0 + decay * decay)


def u0_profile(y: np.ndarray) -> np.ndarray:
    """U(0, y) from the closed forms: 1 at y <= 0, U(0, y) on (0, 1], 0 beyond."""
    out = np.empty_like(np.asarray(y, dtype=float))
    for k, v in enumerate(np.asarray(y, dtype=float)):
        out[k] = 1.0 if v <= 0.0 else (u0c_closed(v) if v <= 1.0 else 0.0)
    return out
