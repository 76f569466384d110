"""Deterministic exit quantities for Brownian motion from (0, 1), by 1-D quadrature."""
import math
from typing import Literal, Union
from scipy import integrate
from src.conformal.base import map_l
from src.core.config import settings
from src.core.exceptions import DomainError, QuadratureFailure
from src.schemas.specs import SimSpec, SlitDomainSpec, StripSpec
from src.utils.logger import app_logger

Functional = Literal["probability", "moment"]
Domain = Union[SlitDomainSpec, StripSpec, SimSpec]

ORACLE_TOL = 1e-10


def _quad(fn, a: float, b: float, label: str, points=None) -> float:
    result = integrate.quad(
        fn, a, b, points=points, epsabs=ORACLE_TOL, epsrel=1e-12, limit=settings.max_subdivisions, full_output=1
    )
    if len(result) == 4:
        app_logger.error(f"Oracle quadrature '{label}' failed: {result[3]}")
        raise QuadratureFailure(f"Oracle quadrature '{label}' failed: {result[3]}")
    return float(result[0])


def _peak(value: float):
    # breakpoint at sqrt(value) when the kernel peaks inside (0, 1)
    return [math.sqrt(value)] if 0.0 < value < 1.0 else None


def slit_exit_probability(c: float, by_quadrature: bool = False) -> float:
    """
    Probability of leaving H minus the slit through the real axis.

    Exits pulled back through L(c .) are Poisson-distributed on the real line around
    (A, B) = L(ci); the real axis corresponds to t > 0.
    """
    if c == 1.0:
        return 0.0
    z = complex(map_l(1j * c))
    a, b = z.real, z.imag
    if not by_quadrature:
        return (math.pi + 2.0 * math.atan(a / b)) / (2.0 * math.pi)
    # t = s^2 on (0, 1) and t = 1/u^2 on (1, inf)
    first = _quad(
        lambda s: 2.0 * s * b / ((s * s - a) ** 2 + b * b), 0.0, 1.0, "slit P (0,1)", _peak(a)
    )
    second = _quad(
        lambda u: 2.0 * u * b / ((1.0 - a * u * u) ** 2 + b * b * u ** 4),
        0.0,
        1.0,
        "slit P (1,inf)",
        _peak(1.0 / a if a > 0.0 else 0.0),
    )
    return (first + second) / math.pi


def slit_exit_abs_moment(c: float) -> float:
    """E|X_tau| for the slit domain; slit exits contribute X = 0."""
    if c == 1.0:
        return 0.0
    z = complex(map_l(1j * c))
    a, b = z.real, z.imag
    peak = _peak(a)
    first = _quad(
        lambda s: b * (1.0 - s * s) / ((s * s - a) ** 2 + b * b), 0.0, 1.0, "slit E|X| (0,1)", peak
    )
    peak = _peak(1.0 / a if a > 0.0 else 0.0)
    second = _quad(
        lambda u: b * (1.0 - u * u) / ((1.0 - a * u * u) ** 2 + b * b * u ** 4),
        0.0,
        1.0,
        "slit E|X| (1,inf)",
        peak,
    )
    return (first + second) / (math.pi * c)


def _strip_density(x: float, height: float, start: float, top: bool) -> float:
    # Poisson kernel of the strip 0 < y < height at the bottom (or top) boundary
    theta = math.pi * start / height
    decay = math.exp(-math.pi * abs(x) / height)
    cos_t = -math.cos(theta) if top else math.cos(theta)
    return decay * math.sin(theta) / (2.0 * height * (0.5 * (1.0 + decay * decay) - cos_t * decay))


def strip_exit_probability(c: float) -> float:
    """Probability of leaving the strip of height 1/c through the bottom: 1 - c."""
    return 1.0 - c


def strip_exit_second_moment(c: float, by_quadrature: bool = False) -> float:
    """E X_tau^2 over both boundary lines; x^2 - y^2 harmonic gives (1 - c)/c."""
    if c == 1.0:
        return 0.0
    if not by_quadrature:
        return (1.0 - c) / c
    height = 1.0 / c
    total = 0.0
    for top in (False, True):
        total += 2.0 * _quad(
            lambda x, top=top: x * x * _strip_density(x, height, 1.0, top),
            0.0,
            math.inf,
            "strip E X^2 top" if top else "strip E X^2 bottom",
        )
    return total


def oracle_harmonic_measure(
    domain: Domain, functional: Functional = "probability", by_quadrature: bool = True
) -> float:
    """
    Exit probability through the real axis, or the domain's exit moment.

    Args:
        domain: Slit or strip spec, or a SimSpec naming one
        functional: "probability" or "moment" (E|X| for the slit, E X^2 for the strip)
        by_quadrature: Integrate the Poisson kernel instead of using the closed form

    Returns:
        The exit quantity, absolute error below 1e-8
    """
    if isinstance(domain, SimSpec):
        kind, c = domain.domain, domain.c
    elif isinstance(domain, SlitDomainSpec):
        kind, c = "slit", domain.c
    elif isinstance(domain, StripSpec):
        kind, c = "strip", domain.c
    else:
        raise DomainError(f"Unsupported domain: {domain!r}")

    if kind == "slit":
        if functional == "probability":
            return slit_exit_probability(c, by_quadrature)
        return slit_exit_abs_moment(c)
    if functional == "probability":
        if by_quadrature and c < 1.0:
            height = 1.0 / c
            return 2.0 * _quad(
                lambda x: _strip_density(x, height, 1.0, False), 0.0, math.inf, "strip P"
            )
        return strip_exit_probability(c)
    return strip_exit_second_moment(c, by_quadrature)
