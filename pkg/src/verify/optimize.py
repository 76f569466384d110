"""Derivative-free scalar maximization."""
import math
from typing import Callable, NamedTuple, Optional
from src.core.exceptions import OptimizationFailure
from src.utils.logger import app_logger

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Bracket(NamedTuple):
    lo: float
    mid: float
    hi: float


class BracketResult(NamedTuple):
    """Either an interior bracket or the direction in which the objective keeps rising."""
    bracket: Optional[Bracket]
    escaped_left: bool


def bracket_maximum(
    fn: Callable[[float], float],
    start: float = 0.0,
    step: float = 1.0,
    left_limit: float = -math.inf,
    right_limit: float = 700.0,
) -> BracketResult:
    """
    Bracket a maximum of fn by doubling steps from `start`.

    Args:
        fn: Objective
        start: First point
        step: Initial step
        left_limit: Stop walking left past this point and report escape
        right_limit: Walking right past this point means the objective is unbounded

    Returns:
        BracketResult; bracket is None when the maximum escaped to the left
    """
    f0 = fn(start)
    direction = 1.0 if fn(start + step) > f0 else -1.0
    if direction < 0 and fn(start - step) <= f0:
        return BracketResult(Bracket(start - step, start, start + step), False)

    prev, best, f_best = start, start, f0
    delta = step
    while True:
        nxt = best + direction * delta
        if nxt < left_limit:
            return BracketResult(None, True)
        if nxt > right_limit:
            app_logger.error(f"Objective still rising at s={nxt:g}")
            raise OptimizationFailure("Objective increases without bound; no bracket found")
        f_nxt = fn(nxt)
        if f_nxt <= f_best:
            lo, hi = sorted((prev, nxt))
            return BracketResult(Bracket(lo, best, hi), False)
        prev, best, f_best = best, nxt, f_nxt
        delta *= 2.0


def golden_section_max(
    fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 500
) -> float:
    """Argmax of a unimodal fn on [lo, hi] by golden-section search."""
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = fn(x1)
    else:
        raise OptimizationFailure(f"Golden section did not converge on [{lo}, {hi}]")
    return (a + b) / 2.0
