"""
Brownian motion (X, W) = (X, 1 - Y) from (0, 1), killed on the boundary of a slit
domain or a strip, with exit estimates and the bound checks built on them.
"""
import math
import sys
from abc import ABC, abstractmethod
from multiprocessing import Pool
from typing import Dict, List, NamedTuple, Optional, Tuple, Type
import numpy as np
from src.core.config import settings
from src.core.exceptions import ConfigError
from src.martingale.oracle import oracle_harmonic_measure
from src.schemas.reports import BiasRow, SimResult, VerificationEntry, VerificationReport
from src.schemas.specs import SimSpec
from src.special.base import u0c_closed
from src.utils.helpers import mean_and_se
from src.utils.logger import app_logger

CENSORED, BOTTOM, SLIT, TOP = 0, 1, 2, 3
EXIT_NAMES = {CENSORED: "censored", BOTTOM: "bottom", SLIT: "slit", TOP: "top"}

FIRST_CHUNK = 1024
MAX_CHUNK = 16384


class Exit(NamedTuple):
    """Earliest boundary crossing inside a chunk: segment index, fraction along it, kind, x."""
    position: float
    kind: int
    x: float


class KillingDomain(ABC):
    """Planar domain in (x, w) coordinates; the walk starts at (0, 1)."""

    name: str

    def __init__(self, c: float):
        self.c = c

    @abstractmethod
    def start_exit(self) -> Optional[int]:
        """Exit kind when (0, 1) already lies on the boundary."""

    @abstractmethod
    def first_exit(self, xs: np.ndarray, ws: np.ndarray) -> Optional[Exit]:
        """
        Earliest crossing along the polyline (xs[0], ws[0]) -> ... -> (xs[-1], ws[-1]).

        xs[0], ws[0] is the last position of the previous chunk.
        """

    @staticmethod
    def _bottom(xs: np.ndarray, ws: np.ndarray) -> Optional[Exit]:
        hits = np.flatnonzero(ws[1:] <= 0.0)
        if hits.size == 0:
            return None
        j = int(hits[0])
        theta = ws[j] / (ws[j] - ws[j + 1])
        return Exit(j + theta, BOTTOM, float(xs[j] + theta * (xs[j + 1] - xs[j])))


class SlitDomain(KillingDomain):
    """Upper half-plane minus the ray {x = 0, w >= 1/c}."""

    name = "slit"

    def start_exit(self) -> Optional[int]:
        return SLIT if 1.0 >= 1.0 / self.c else None

    def first_exit(self, xs: np.ndarray, ws: np.ndarray) -> Optional[Exit]:
        best = self._bottom(xs, ws)
        x0, x1 = xs[:-1], xs[1:]
        crosses = (x0 * x1 <= 0.0) & (x0 != x1)
        candidates = np.flatnonzero(crosses)
        if candidates.size:
            theta = x0[candidates] / (x0[candidates] - x1[candidates])
            height = ws[candidates] + theta * (ws[candidates + 1] - ws[candidates])
            on_slit = np.flatnonzero(height >= 1.0 / self.c)
            if on_slit.size:
                k = int(on_slit[0])
                position = float(candidates[k] + theta[k])
                if best is None or position < best.position:
                    best = Exit(position, SLIT, 0.0)
        return best


class StripDomain(KillingDomain):
    """Strip 0 < w < 1/c."""

    name = "strip"

    def start_exit(self) -> Optional[int]:
        return TOP if 1.0 >= 1.0 / self.c else None

    def first_exit(self, xs: np.ndarray, ws: np.ndarray) -> Optional[Exit]:
        best = self._bottom(xs, ws)
        top = 1.0 / self.c
        hits = np.flatnonzero(ws[1:] >= top)
        if hits.size:
            j = int(hits[0])
            theta = (top - ws[j]) / (ws[j + 1] - ws[j])
            position = j + theta
            if best is None or position < best.position:
                best = Exit(position, TOP, float(xs[j] + theta * (xs[j + 1] - xs[j])))
        return best


class DomainFactory:
    """Factory for killing domains."""

    _domains: Dict[str, Type[KillingDomain]] = {
        "slit": SlitDomain,
        "strip": StripDomain,
    }

    @classmethod
    def create(cls, name: str, c: float) -> KillingDomain:
        if name not in cls._domains:
            raise ConfigError(f"Unknown domain: {name}. Available: {list(cls._domains.keys())}")
        return cls._domains[name](c)

    @classmethod
    def register_domain(cls, name: str, domain_class: Type[KillingDomain]):
        """Register a new killing domain."""
        cls._domains[name] = domain_class
        app_logger.info(f"Registered domain: {name}")


def path_generator(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for path `index`; independent of how paths are partitioned."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def walk(domain: KillingDomain, seed: int, index: int, step: float, max_steps: int) -> Tuple[int, float]:
    """
    Run one Euler path until it leaves the domain or max_steps is reached.

    Returns:
        (exit kind, x at exit); censored paths report x = nan
    """
    immediate = domain.start_exit()
    if immediate is not None:
        return immediate, 0.0

    rng = path_generator(seed, index)
    scale = math.sqrt(step)
    x, w = 0.0, 1.0
    done = 0
    chunk = FIRST_CHUNK
    while done < max_steps:
        k = min(chunk, max_steps - done)
        increments = scale * rng.standard_normal((k, 2))
        xs = np.empty(k + 1)
        ws = np.empty(k + 1)
        xs[0], ws[0] = x, w
        xs[1:] = x + np.cumsum(increments[:, 0])
        ws[1:] = w + np.cumsum(increments[:, 1])
        hit = domain.first_exit(xs, ws)
        if hit is not None:
            return hit.kind, hit.x
        x, w = float(xs[-1]), float(ws[-1])
        done += k
        chunk = min(2 * chunk, MAX_CHUNK)
    return CENSORED, math.nan


def _run_block(args: Tuple[str, float, int, int, int, float, int]) -> Tuple[np.ndarray, np.ndarray]:
    name, c, seed, start, stop, step, max_steps = args
    domain = DomainFactory.create(name, c)
    kinds = np.empty(stop - start, dtype=np.int8)
    xs = np.empty(stop - start)
    for offset, index in enumerate(range(start, stop)):
        kinds[offset], xs[offset] = walk(domain, seed, index, step, max_steps)
    return kinds, xs


def _summarize(spec: SimSpec, kinds: np.ndarray, xs: np.ndarray) -> SimResult:
    hits = (kinds == BOTTOM).astype(float)
    p_hat, p_se = mean_and_se(hits)
    exited = kinds != CENSORED
    moments: Dict[str, Optional[float]] = {"m1_hat": None, "m1_se": None, "m2_hat": None, "m2_se": None}
    if np.any(exited):
        if spec.domain == "slit":
            moments["m1_hat"], moments["m1_se"] = mean_and_se(np.abs(xs[exited]))
        else:
            moments["m2_hat"], moments["m2_se"] = mean_and_se(xs[exited] ** 2)
    counts = {EXIT_NAMES[k]: int(np.count_nonzero(kinds == k)) for k in EXIT_NAMES}
    return SimResult(
        spec=spec,
        p_hat=p_hat,
        p_se=p_se,
        censored_fraction=counts["censored"] / kinds.size,
        exit_counts=counts,
        **moments,
    )


def simulate(spec: SimSpec, workers: Optional[int] = None, progress: bool = False) -> SimResult:
    """
    Estimate the exit probability through the real axis and the exit moment.

    Paths run in blocks of settings.progress_every; blocks are processed in index order
    and aggregated with exactly rounded sums, so the result depends only on the spec.

    Args:
        spec: Domain, path count, step, seed and time cap
        workers: Process count, defaults to settings.threads
        progress: Write `paths_done,p_hat,p_se` lines to stderr after each block

    Returns:
        SimResult with estimates, standard errors and exit counts
    """
    workers = max(1, min(workers or settings.threads, spec.paths))
    block = settings.progress_every
    tasks = [
        (spec.domain, spec.c, spec.seed, start, min(start + block, spec.paths), spec.step, spec.max_steps)
        for start in range(0, spec.paths, block)
    ]
    app_logger.info(
        f"Simulating {spec.paths} paths in the {spec.domain} domain, c={spec.c}, step={spec.step}, "
        f"seed={spec.seed}, workers={workers}"
    )

    kinds_parts: List[np.ndarray] = []
    xs_parts: List[np.ndarray] = []

    def consume(result: Tuple[np.ndarray, np.ndarray]) -> None:
        kinds_parts.append(result[0])
        xs_parts.append(result[1])
        if progress:
            done = sum(p.size for p in kinds_parts)
            p_hat, p_se = mean_and_se((np.concatenate(kinds_parts) == BOTTOM).astype(float))
            sys.stderr.write(f"{done},{p_hat:.6f},{p_se:.6f}\n")
            sys.stderr.flush()

    if workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            for result in pool.imap(_run_block, tasks):
                consume(result)
    else:
        for task in tasks:
            consume(_run_block(task))

    result = _summarize(spec, np.concatenate(kinds_parts), np.concatenate(xs_parts))
    moment, moment_se = result.moment
    app_logger.info(
        f"Simulation done: p_hat={result.p_hat:.6f}±{result.p_se:.6f}, "
        f"moment={moment:.6f}±{moment_se:.6f}, censored={result.censored_fraction:.4%}"
    )
    return result


def martingale_bound(spec: SimSpec, result: SimResult) -> Tuple[float, float]:
    """(right-hand side, combined standard error) of the bound on p_hat."""
    c = spec.c
    moment, moment_se = result.moment
    if spec.domain == "slit":
        rhs = c * moment + u0c_closed(c)
        se = math.sqrt(result.p_se ** 2 + (c * moment_se) ** 2)
    else:
        rhs = c * c * moment + (1.0 - c) ** 2
        se = math.sqrt(result.p_se ** 2 + (c * c * moment_se) ** 2)
    return rhs, se


def verify_martingale_bound(
    spec: SimSpec,
    result: Optional[SimResult] = None,
    bias_allowance: Optional[float] = None,
    workers: Optional[int] = None,
) -> VerificationReport:
    """
    Check the bound p_hat <= RHS within three standard errors, and its attainment.

    Slit: RHS = c E|X| + U(0, c). Strip: RHS = c^2 E X^2 + (1 - c)^2. The walks are the
    extremal configurations, so |RHS - p_hat| must also stay within 3 SE plus the
    step-bias allowance.

    Returns:
        Report with a bound entry and an attainment entry
    """
    result = result or simulate(spec, workers=workers)
    allowance = settings.bias_allowance if bias_allowance is None else bias_allowance
    rhs, se = martingale_bound(spec, result)
    name = "martingale_slit" if spec.domain == "slit" else "martingale_strip"
    params = {
        "domain": spec.domain,
        "c": spec.c,
        "paths": spec.paths,
        "step": spec.step,
        "seed": spec.seed,
        "max_time": spec.max_time,
        "combined_se": se,
        "censored_fraction": result.censored_fraction,
    }
    bound = VerificationEntry.from_sides(name, result.p_hat, rhs, tolerance=3.0 * se, params=params)
    gap = rhs - result.p_hat
    attainment = VerificationEntry(
        name=f"{name}_attainment",
        lhs=result.p_hat,
        rhs=rhs,
        slack=gap,
        tolerance=3.0 * se + allowance,
        passed=abs(gap) <= 3.0 * se + allowance,
        params={**params, "bias_allowance": allowance},
    )
    app_logger.info(f"{name}: p_hat={result.p_hat:.6f} rhs={rhs:.6f} se={se:.6f}")
    return VerificationReport(entries=[bound, attainment])


def bias_table(spec: SimSpec, levels: int = 3, workers: Optional[int] = None) -> List[BiasRow]:
    """
    Repeat a simulation with the step quartered (levels - 1) times and compare to the oracle.

    Returns:
        One row per step size
    """
    p_exact = oracle_harmonic_measure(spec, "probability")
    m_exact = oracle_harmonic_measure(spec, "moment")
    rows = []
    for level in range(levels):
        step = spec.step / 4 ** level
        result = simulate(spec.model_copy(update={"step": step}), workers=workers)
        moment, moment_se = result.moment
        rows.append(
            BiasRow(
                step=step,
                p_hat=result.p_hat,
                p_se=result.p_se,
                p_error=result.p_hat - p_exact,
                moment_hat=moment,
                moment_se=moment_se,
                moment_error=moment - m_exact,
                censored_fraction=result.censored_fraction,
            )
        )
    return rows
