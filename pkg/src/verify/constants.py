"""Weak-type (1, q) and (2, q) constants and their extremal witnesses."""
import math
from typing import List, Tuple
import numpy as np
from src.core.exceptions import DomainError
from src.schemas.reports import WeakTypeConstant
from src.special.base import expected_abs_exit, optimal_c_p1, prob_real_axis
from src.utils.logger import app_logger
from src.verify.bounds import r_functions
from src.verify.optimize import bracket_maximum, golden_section_max

BOUNDARY_ARGMAX = 1e-6


def _r1(x: float) -> float:
    return r_functions(x)[0]


def c1q_objective(x: float, q: float) -> float:
    """R1(x)^(1/q) / x."""
    return _r1(x) ** (1.0 / q) / x


def c2q_objective(x: float, q: float) -> float:
    """(x^2/(1 + x^2))^(1/q) / x."""
    return (x * x / (1.0 + x * x)) ** (1.0 / q) / x


def constant_c1q(q: float) -> WeakTypeConstant:
    """
    sup over x > 0 of R1(x)^(1/q)/x, the best constant in |{Hf >= 1}|^(1/q) <= C ||f||_1.

    Maximizes the log-objective in s = ln x by golden section on a bracket found by
    doubling from x = 1. For q = 1 the supremum 1 is approached only as x -> 0.

    Raises:
        DomainError: for q outside (0, 1]
    """
    if not 0.0 < q <= 1.0:
        raise DomainError(f"c(1,q) is finite only for q in (0, 1], got {q}")

    def log_objective(s: float) -> float:
        return math.log(_r1(math.exp(s))) / q - s

    found = bracket_maximum(log_objective, start=0.0, step=1.0, left_limit=math.log(BOUNDARY_ARGMAX))
    if found.bracket is None:
        app_logger.info(f"c(1,{q}) is a boundary supremum at x -> 0")
        return WeakTypeConstant(p=1, q=q, value=1.0, argmax_x=0.0, attained=False)

    s_star = golden_section_max(log_objective, found.bracket.lo, found.bracket.hi)
    x_star = math.exp(s_star)
    if x_star < BOUNDARY_ARGMAX:
        return WeakTypeConstant(p=1, q=q, value=1.0, argmax_x=0.0, attained=False)

    value = c1q_objective(x_star, q)
    # the slit pair with E(c) = x* has measure P(c) = R1(x*)
    witness_c = optimal_c_p1(x_star)
    residual = abs(prob_real_axis(witness_c) ** (1.0 / q) - value * expected_abs_exit(witness_c))
    return WeakTypeConstant(
        p=1, q=q, value=value, argmax_x=x_star, attained=True, witness_c=witness_c, witness_residual=residual
    )


def constant_c2q(q: float) -> WeakTypeConstant:
    """
    sup over x > 0 of (x^2/(1 + x^2))^(1/q)/x, attained at x = sqrt(2/q - 1).

    Closed form (q/2)^(1/q) (2/q - 1)^(1/q - 1/2); q = 2 gives the unattained limit 1.

    Raises:
        DomainError: for q outside (0, 2]
    """
    if not 0.0 < q <= 2.0:
        raise DomainError(f"c(2,q) needs q in (0, 2], got {q}")
    if q == 2.0:
        return WeakTypeConstant(p=2, q=q, value=1.0, argmax_x=0.0, attained=False)

    x_star = math.sqrt(2.0 / q - 1.0)
    value = (q / 2.0) ** (1.0 / q) * (2.0 / q - 1.0) ** (1.0 / q - 0.5)
    # the strip pair with (1 - c)/c = x*^2 has measure 1 - c = x*^2/(1 + x*^2)
    witness_c = 1.0 / (1.0 + x_star * x_star)
    residual = abs((1.0 - witness_c) ** (1.0 / q) - value * math.sqrt((1.0 - witness_c) / witness_c))
    return WeakTypeConstant(
        p=2, q=q, value=value, argmax_x=x_star, attained=True, witness_c=witness_c, witness_residual=residual
    )


def constant_c2q_numeric(q: float) -> float:
    """Numeric sup of the (2, q) objective, for cross-checking the closed form."""
    if not 0.0 < q < 2.0:
        raise DomainError(f"numeric c(2,q) needs q in (0, 2), got {q}")

    def log_objective(s: float) -> float:
        x = math.exp(s)
        return (2.0 * s - math.log1p(x * x)) / q - s

    found = bracket_maximum(log_objective, start=0.0, step=1.0)
    s_star = golden_section_max(log_objective, found.bracket.lo, found.bracket.hi)  # type: ignore[union-attr]
    return c2q_objective(math.exp(s_star), q)


def objective_curve(p: int, q: float, xs: np.ndarray) -> List[Tuple[float, float, float]]:
    """(x, objective, constant) rows for plotting."""
    const = constant_c1q(q) if p == 1 else constant_c2q(q)
    fn = c1q_objective if p == 1 else c2q_objective
    return [(float(x), fn(float(x), q), const.value) for x in xs]
