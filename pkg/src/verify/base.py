"""
Inequality checks for circle functions, extremal pairs and the closed-form identities,
plus the randomized trig-polynomial corpus.
"""
import math
from functools import lru_cache
from multiprocessing import Pool
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple
import numpy as np
from src.circle.base import CircleFunction, CircleGrid, hilbert_multiplier, norm_p, superlevel_measure
from src.core.config import settings
from src.core.exceptions import DomainError
from src.extremal.base import ExtremalKind, ExtremalPair, limit_measure, measured_measure, refined_norm
from src.schemas.reports import VerificationEntry, VerificationReport
from src.special.base import expected_abs_exit, optimal_c_p1, prob_real_axis
from src.utils.logger import app_logger
from src.verify.bounds import (
    envelope_l1,
    envelope_l2,
    inverse_bound_p1,
    r_functions,
    rhs_affine_l1,
    rhs_affine_l2,
    rhs_optimal_l1,
    rhs_optimal_l2,
)
from src.verify.constants import constant_c1q, constant_c2q

PAIR_TOLERANCE = 5e-3
MEASURE_TOLERANCE = 2e-3
NORM_TOLERANCE = 1e-2
CORPUS_NORM_RANGE = (1e-2, 10.0)
CORPUS_AFFINE_C = (0.25, 0.5, 0.75)
CORPUS_POWER_Q = {"weak_l1_power": 0.5, "weak_l2_power": 1.0}


@lru_cache(maxsize=64)
def _power_constant(p: int, q: float) -> float:
    return (constant_c1q(q) if p == 1 else constant_c2q(q)).value


class Inequality(NamedTuple):
    """lhs = measure^(1/q) (q = 1 unless power-type) against rhs(norm, c, q)."""

    p: int
    rhs: Callable[[float, Optional[float], Optional[float]], float]
    power: bool = False


INEQUALITIES: Dict[str, Inequality] = {
    "weak_l1_linear": Inequality(1, lambda x, c, q: rhs_affine_l1(1.0, x)),
    "weak_l1_affine": Inequality(1, lambda x, c, q: rhs_affine_l1(c, x)),
    "weak_l1_optimal": Inequality(1, lambda x, c, q: rhs_optimal_l1(x)),
    "weak_l2_affine": Inequality(2, lambda x, c, q: rhs_affine_l2(c, x)),
    "weak_l2_optimal": Inequality(2, lambda x, c, q: rhs_optimal_l2(x)),
    "weak_l1_power": Inequality(1, lambda x, c, q: _power_constant(1, q) * x, power=True),
    "weak_l2_power": Inequality(2, lambda x, c, q: _power_constant(2, q) * x, power=True),
}


def _evaluate(
    which: str,
    measure: float,
    norm: float,
    c: Optional[float],
    q: Optional[float],
    tolerance: float,
    name: str,
    params: Dict,
) -> VerificationEntry:
    if which not in INEQUALITIES:
        raise DomainError(f"Unknown inequality: {which}. Available: {list(INEQUALITIES.keys())}")
    inequality = INEQUALITIES[which]
    if which.endswith("_affine") and c is None:
        c = 0.5
    if inequality.power and q is None:
        q = CORPUS_POWER_Q[which]
    lhs = measure ** (1.0 / q) if inequality.power and measure > 0.0 else measure
    rhs = inequality.rhs(norm, c, q)
    params = {**params, "norm": norm, "measure": measure}
    if c is not None and which.endswith("_affine"):
        params["c"] = c
    if q is not None and inequality.power:
        params["q"] = q
    return VerificationEntry.from_sides(name, lhs, rhs, tolerance=tolerance, params=params)


def check_function(
    f: CircleFunction,
    which: str,
    c: Optional[float] = None,
    q: Optional[float] = None,
    tolerance: Optional[float] = None,
    name: Optional[str] = None,
) -> VerificationEntry:
    """
    Check one inequality for f: |{Hf >= 1}| against its bound in ||f||_p.

    Args:
        f: Sampled function
        which: Inequality id, one of INEQUALITIES
        c: Parameter of the affine bounds, default 1/2
        q: Exponent of the power-type bounds
        tolerance: Allowed negative slack, default settings.inequality_tolerance

    Returns:
        VerificationEntry with slack = rhs - lhs
    """
    tolerance = settings.inequality_tolerance if tolerance is None else tolerance
    if which not in INEQUALITIES:
        raise DomainError(f"Unknown inequality: {which}. Available: {list(INEQUALITIES.keys())}")
    measure = superlevel_measure(hilbert_multiplier(f), 1.0)
    norm = norm_p(f, INEQUALITIES[which].p)
    return _evaluate(which, measure, norm, c, q, tolerance, name or which, {"n": f.grid.n})


def check_all(f: CircleFunction, prefix: str = "", tolerance: Optional[float] = None) -> List[VerificationEntry]:
    """Every inequality for f, the affine ones at each corpus c."""
    tolerance = settings.inequality_tolerance if tolerance is None else tolerance
    measure = superlevel_measure(hilbert_multiplier(f), 1.0)
    norms = {1: norm_p(f, 1), 2: norm_p(f, 2)}
    entries = []
    for which, inequality in INEQUALITIES.items():
        cs: Sequence[Optional[float]] = CORPUS_AFFINE_C if which.endswith("_affine") else (None,)
        for c in cs:
            label = f"{prefix}{which}" if c is None else f"{prefix}{which}[c={c}]"
            entries.append(
                _evaluate(which, measure, norms[inequality.p], c, None, tolerance, label, {"n": f.grid.n})
            )
    return entries


def check_pair(pair: ExtremalPair, tolerance: float = PAIR_TOLERANCE) -> List[VerificationEntry]:
    """
    Measure, norm, bound and near-equality entries for an extremal pair.

    The measure is the radial-limit node count of {g >= 1 - delta}, since Hf = g - mean g;
    the norm is the refined norm. Each bound gets a companion `.equality` entry requiring
    |slack| <= tolerance.
    """
    measure = limit_measure(pair)
    refined = refined_norm(pair)
    prefix = f"pair_{'p1' if pair.kind == ExtremalKind.P1_SLIT else 'p2'}[c={pair.c}]"
    names = ("weak_l1_affine", "weak_l1_optimal") if pair.p == 1 else ("weak_l2_affine", "weak_l2_optimal")
    params = {
        "n": pair.grid.n,
        "eval_radius": pair.eval_radius,
        "predicted_measure": pair.predicted_measure,
        "predicted_norm": pair.predicted_norm,
        "measure_at_radius": measured_measure(pair),
        "refined_converged": refined.converged,
    }

    entries = [
        VerificationEntry.from_sides(
            f"{prefix}.measure",
            abs(measure - pair.predicted_measure),
            MEASURE_TOLERANCE,
            tolerance=0.0,
            params={**params, "measure": measure},
        ),
        VerificationEntry.from_sides(
            f"{prefix}.norm",
            abs(refined.value - pair.predicted_norm),
            NORM_TOLERANCE,
            tolerance=0.0,
            params={**params, "norm": refined.value},
        ),
    ]
    for which in names:
        bound = _evaluate(which, measure, refined.value, pair.c, None, tolerance, f"{prefix}.{which}", params)
        entries.append(bound)
        entries.append(
            VerificationEntry.from_sides(
                f"{prefix}.{which}.equality", abs(bound.slack), tolerance, tolerance=0.0, params=params
            )
        )
    return entries


def random_trig_polynomial(grid: CircleGrid, rng: np.random.Generator) -> CircleFunction:
    """Degree <= n/16 with N(0, 1) coefficients, rescaled to a log-uniform L1 norm."""
    degree = int(rng.integers(1, grid.n // 16 + 1))
    t = grid.nodes
    k = np.arange(1, degree + 1)
    a = rng.standard_normal(degree)
    b = rng.standard_normal(degree)
    values = rng.standard_normal() + np.cos(np.outer(t, k)) @ a + np.sin(np.outer(t, k)) @ b

    lo, hi = CORPUS_NORM_RANGE
    target = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    current = float(np.mean(np.abs(values)))
    return CircleFunction(grid, values * (target / current))


def corpus_function(index: int, seed: int, n: int) -> CircleFunction:
    """The index-th corpus member; independent of how the corpus is split across workers."""
    return random_trig_polynomial(CircleGrid(n), np.random.default_rng([seed, index]))


def _check_member(args: Tuple[int, int, int, float]) -> List[VerificationEntry]:
    index, seed, n, tolerance = args
    f = corpus_function(index, seed, n)
    entries = check_all(f, prefix=f"corpus[{index}].", tolerance=tolerance)
    for e in entries:
        e.params["index"] = index
    return entries


def run_corpus(
    count: int,
    seed: int,
    n: int = 1024,
    workers: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> VerificationReport:
    """
    Check every inequality on `count` random trig polynomials.

    Args:
        count: Number of functions
        seed: Corpus seed; member i uses default_rng([seed, i])
        n: Grid size
        workers: Process count, default settings.threads

    Returns:
        VerificationReport in corpus order
    """
    tolerance = settings.inequality_tolerance if tolerance is None else tolerance
    workers = min(workers or settings.threads, max(count, 1))
    tasks = [(i, seed, n, tolerance) for i in range(count)]
    app_logger.info(f"Checking corpus: count={count}, seed={seed}, n={n}, workers={workers}")

    if workers > 1:
        with Pool(workers) as pool:
            chunks = list(pool.imap(_check_member, tasks))
    else:
        chunks = [_check_member(t) for t in tasks]

    report = VerificationReport(entries=[e for chunk in chunks for e in chunk])
    app_logger.info(f"Corpus done: {len(report.entries)} entries, {len(report.failures)} failures")
    return report


def identity_entries() -> List[VerificationEntry]:
    """Closed-form identities: envelopes, stationarity, R1 >= R2, inverse round trip."""
    entries = []

    xs = np.linspace(0.0, 5.0, 51)
    err = max(abs(envelope_l1(float(x))[1] - rhs_optimal_l1(float(x))) for x in xs)
    entries.append(VerificationEntry.from_sides("envelope_l1", err, 1e-8, tolerance=0.0))
    err = max(abs(envelope_l2(float(x))[1] - rhs_optimal_l2(float(x))) for x in xs)
    entries.append(VerificationEntry.from_sides("envelope_l2", err, 1e-10, tolerance=0.0))

    # d/dc (c x + U(0, c)) vanishes at optimal_c_p1(x)
    worst = 0.0
    for x in xs[1:]:
        c = optimal_c_p1(float(x))
        h = 1e-4 * min(c, 1.0 - c)
        slope = (rhs_affine_l1(c + h, x) - rhs_affine_l1(c - h, x)) / (2.0 * h)
        worst = max(worst, abs(slope))
    entries.append(VerificationEntry.from_sides("stationarity_l1", worst, 1e-6, tolerance=0.0))

    # P'(c) - c E'(c) = 0
    worst = 0.0
    h = 1e-6
    for c in np.linspace(0.05, 0.95, 91):
        dp = (prob_real_axis(c + h) - prob_real_axis(c - h)) / (2.0 * h)
        de = (expected_abs_exit(c + h) - expected_abs_exit(c - h)) / (2.0 * h)
        worst = max(worst, abs(dp - c * de))
    entries.append(VerificationEntry.from_sides("harmonic_measure_identity", worst, 1e-6, tolerance=0.0))

    worst = 0.0
    for c in np.linspace(0.05, 0.95, 91):
        worst = max(worst, abs(rhs_optimal_l1(expected_abs_exit(c)) - prob_real_axis(c)))
    entries.append(VerificationEntry.from_sides("optimal_l1_at_pair", worst, 1e-10, tolerance=0.0))

    gap = max(r2 - r1 for r1, r2 in (r_functions(float(x)) for x in np.linspace(0.0, 20.0, 10_000)))
    entries.append(VerificationEntry.from_sides("r1_dominates_r2", max(gap, 0.0), 0.0, tolerance=0.0))

    worst = max(abs(rhs_optimal_l1(inverse_bound_p1(float(m))) - m) for m in np.linspace(0.0, 0.99, 100))
    entries.append(VerificationEntry.from_sides("inverse_bound_round_trip", worst, 1e-12, tolerance=0.0))

    entries.extend(linear_sharpness_entries())
    return entries


def linear_sharpness_entries(cs: Sequence[float] = (0.9, 0.99, 0.999, 0.9999, 1.0 - 1e-6)) -> List[VerificationEntry]:
    """The slit pairs satisfy |{Hf >= 1}| <= ||f||_1 with ratio P(c)/E(c) -> 1 as c -> 1."""
    entries = []
    for c in cs:
        p, e = prob_real_axis(c), expected_abs_exit(c)
        entries.append(
            VerificationEntry.from_sides(
                f"weak_l1_linear.witness[c={c}]", p, e, tolerance=0.0, params={"c": c, "ratio": p / e}
            )
        )
    c = cs[-1]
    gap = 1.0 - prob_real_axis(c) / expected_abs_exit(c)
    entries.append(
        VerificationEntry.from_sides("weak_l1_linear.sharpness", gap, 1e-5, tolerance=0.0, params={"c": c})
    )
    return entries


def constant_entries(qs1: Sequence[float] = (0.25, 0.5, 0.75, 1.0), qs2: Sequence[float] = (0.5, 1.0, 1.5, 2.0)):
    """Witness residuals of c(1,q) and c(2,q); boundary suprema report value 1."""
    entries = []
    for label, qs, compute in (("c1q", qs1, constant_c1q), ("c2q", qs2, constant_c2q)):
        for q in qs:
            const = compute(q)
            params = const.model_dump()
            if const.attained:
                entries.append(
                    VerificationEntry.from_sides(
                        f"{label}[q={q}].witness", const.witness_residual or 0.0, 1e-8, tolerance=0.0, params=params
                    )
                )
            else:
                entries.append(
                    VerificationEntry.from_sides(
                        f"{label}[q={q}].boundary_supremum", abs(const.value - 1.0), 0.0, tolerance=1e-12, params=params
                    )
                )
    return entries
