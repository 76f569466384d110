"""Closed-form right-hand sides of the one-sided weak-type inequalities."""
import math
from typing import Tuple
from scipy import optimize
from src.core.exceptions import DomainError
from src.special.base import u0c_closed

C_FLOOR = 1e-12


def rhs_affine_l1(c: float, norm1: float) -> float:
    """
    c ||f||_1 + U(0, c), the bound on |{Hf >= 1}| for a fixed c.

    Args:
        c: Parameter in (0, 1]; c = 1 is the classical |{Hf >= 1}| <= ||f||_1
        norm1: L1 norm of f

    Raises:
        DomainError: for c outside (0, 1] or a negative norm
    """
    if not 0.0 < c <= 1.0:
        raise DomainError(f"c must lie in (0, 1], got {c}")
    if norm1 < 0.0:
        raise DomainError(f"norm must be non-negative, got {norm1}")
    return c * norm1 + u0c_closed(c)


def rhs_optimal_l1(norm1: float) -> float:
    """(4/pi) arctan(exp(pi x/2)) - 1, written as (4/pi) arctan(tanh(pi x/4))."""
    if norm1 < 0.0:
        raise DomainError(f"norm must be non-negative, got {norm1}")
    return 4.0 * math.atan(math.tanh(math.pi * norm1 / 4.0)) / math.pi


def inverse_bound_p1(m: float) -> float:
    """Smallest L1 norm compatible with |{Hf >= 1}| = m: (2/pi) ln tan(pi(m + 1)/4)."""
    if not 0.0 <= m < 1.0:
        raise DomainError(f"measure must lie in [0, 1), got {m}")
    return 4.0 * math.atanh(math.tan(math.pi * m / 4.0)) / math.pi


def rhs_affine_l2(c: float, norm2: float) -> float:
    """c^2 ||f||_2^2 + (1 - c)^2."""
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"c must lie in [0, 1], got {c}")
    return c * c * norm2 * norm2 + (1.0 - c) ** 2


def rhs_optimal_l2(norm2: float) -> float:
    """||f||_2^2 / (1 + ||f||_2^2)."""
    s = norm2 * norm2
    return s / (1.0 + s)


def r_functions(x: float) -> Tuple[float, float]:
    """(R1(x), R2(x)): the optimal L1 bound and x/(1 + x)."""
    if x < 0.0:
        raise DomainError(f"r_functions needs x >= 0, got {x}")
    return rhs_optimal_l1(x), x / (1.0 + x)


def _bounded_min(fn, lo: float, hi: float) -> Tuple[float, float]:
    result = optimize.minimize_scalar(fn, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
    return float(result.x), float(result.fun)


def envelope_l1(norm1: float) -> Tuple[float, float]:
    """Numeric (argmin, min) over c of rhs_affine_l1(c, norm1)."""
    c, value = _bounded_min(lambda c: rhs_affine_l1(c, norm1), C_FLOOR, 1.0)
    # bounded search never evaluates the endpoint, where the x = 0 minimum sits
    edge = rhs_affine_l1(1.0, norm1)
    return (1.0, edge) if edge < value else (c, value)


def envelope_l2(norm2: float) -> Tuple[float, float]:
    """Numeric (argmin, min) over c of rhs_affine_l2(c, norm2); the argmin is 1/(1 + norm2^2)."""
    return _bounded_min(lambda c: rhs_affine_l2(c, norm2), 0.0, 1.0)
