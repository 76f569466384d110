"""Grid certificate for the properties of U: majorization, U(x,1) <= 0, concavity in x,
superharmonicity, boundedness of U + |x|, and convexity of U(0, .)."""
from multiprocessing import Pool
from typing import List, Optional, Tuple
import numpy as np
from src.core.config import settings
from src.core.exceptions import CertificateFailure
from src.schemas.reports import CertificateReport, PropertyCheck
from src.schemas.specs import GridSpec, SpecialFnConfig
from src.special.base import u0_profile, u_function
from src.utils.logger import app_logger

MAJORIZATION_TOL = 1e-8
TOP_ROW_TOL = 1e-8
CONCAVITY_TOL = 1e-8
CONVEXITY_TOL = 1e-8
LAPLACIAN_SLACK = 1e-6
CIRCLE_POINTS = 32


def _axis(lo: float, h: float, count: int) -> np.ndarray:
    # rounded so that grid lines at 0 and 1 are hit exactly
    return np.round(lo + h * np.arange(count), 12)


def _row_values(args: Tuple[float, np.ndarray, SpecialFnConfig]) -> np.ndarray:
    y, xs, cfg = args
    return np.array([u_function(float(x), float(y), cfg) for x in xs])


def _circle_mean(x: float, y: float, radius: float, cfg: SpecialFnConfig) -> float:
    angles = 2.0 * np.pi * np.arange(CIRCLE_POINTS) / CIRCLE_POINTS
    return float(
        np.mean([u_function(x + radius * np.cos(a), y + radius * np.sin(a), cfg) for a in angles])
    )


def _evaluate_grid(
    xs: np.ndarray, ys: np.ndarray, cfg: SpecialFnConfig, workers: int
) -> np.ndarray:
    tasks = [(float(y), xs, cfg) for y in ys]
    if workers > 1:
        with Pool(processes=workers) as pool:
            rows = pool.map(_row_values, tasks)
    else:
        rows = [_row_values(t) for t in tasks]
    return np.vstack(rows)


def _worst(slack: np.ndarray, mask: np.ndarray, xs: np.ndarray, ys: np.ndarray):
    masked = np.where(mask, slack, np.inf)
    j, i = np.unravel_index(int(np.argmin(masked)), masked.shape)
    return float(masked[j, i]), (float(xs[i]), float(ys[j]))


def _check(
    name: str,
    slack: np.ndarray,
    mask: np.ndarray,
    tol: float,
    xs: np.ndarray,
    ys: np.ndarray,
    fallback_points: int = 0,
) -> PropertyCheck:
    worst, point = _worst(slack, mask, xs, ys)
    return PropertyCheck(
        name=name,
        passed=worst >= -tol,
        worst_slack=worst,
        worst_point=point,
        tolerance=tol,
        checked_points=int(np.count_nonzero(mask)),
        fallback_points=fallback_points,
    )


def certify_special_function(
    cfg: Optional[SpecialFnConfig] = None,
    grid_spec: Optional[GridSpec] = None,
    workers: Optional[int] = None,
    raise_on_failure: bool = True,
) -> CertificateReport:
    """
    Check the properties of U at every point of a rectangular grid.

    Points within one spacing of the non-smooth set {y = 0} and {(0, y) : y >= 1} are
    excluded from the stencil checks. Where the five-point Laplacian exceeds its slack
    the point is rechecked with a circle mean of radius h, which for a harmonic U
    reproduces U(x, y) to quadrature accuracy.

    Args:
        cfg: Quadrature controls
        grid_spec: Rectangle and spacing
        workers: Row-parallel worker count, defaults to settings.threads
        raise_on_failure: Raise CertificateFailure when any property fails

    Returns:
        Per-property verdicts, worst slack and worst point

    Raises:
        CertificateFailure: carrying the report and the violating points
    """
    cfg = cfg or SpecialFnConfig()
    grid_spec = grid_spec or GridSpec()
    workers = workers or settings.threads
    h = grid_spec.h

    app_logger.info(
        f"Certifying U on [{grid_spec.x_min}, {grid_spec.x_max}] x "
        f"[{grid_spec.y_min}, {grid_spec.y_max}] with h={h} ({workers} workers)"
    )

    # one extra layer on every side feeds the stencils at the rectangle's edge
    xs_ext = _axis(grid_spec.x_min - h, h, grid_spec.nx + 2)
    ys_ext = _axis(grid_spec.y_min - h, h, grid_spec.ny + 2)
    values_ext = _evaluate_grid(xs_ext, ys_ext, cfg, workers)

    xs, ys = xs_ext[1:-1], ys_ext[1:-1]
    u = values_ext[1:-1, 1:-1]
    X, Y = np.meshgrid(xs, ys)

    i0 = int(np.argmin(np.abs(xs)))
    j0 = int(np.argmin(np.abs(ys)))
    jj, ii = np.meshgrid(np.arange(ys.size), np.arange(xs.size), indexing="ij")
    near_axis = np.abs(jj - j0) <= 1
    near_slit = (np.abs(ii - i0) <= 1) & (Y >= 1.0 - h - 1e-12)
    smooth = ~(near_axis | near_slit)
    everywhere = np.ones_like(smooth)

    checks: List[PropertyCheck] = []

    majorant = (Y <= 0.0).astype(float) - np.abs(X)
    checks.append(_check("majorization", u - majorant, everywhere, MAJORIZATION_TOL, xs, ys))

    top_row = np.isclose(Y, 1.0, atol=1e-12)
    if np.any(top_row):
        checks.append(_check("top_row_nonpositive", -u, top_row, TOP_ROW_TOL, xs, ys))

    second_x = values_ext[1:-1, :-2] + values_ext[1:-1, 2:] - 2.0 * u
    checks.append(_check("concavity_in_x", -second_x, smooth, CONCAVITY_TOL, xs, ys))

    second_y = values_ext[:-2, 1:-1] + values_ext[2:, 1:-1] - 2.0 * u
    laplacian = (second_x + second_y) / (h * h)
    lap_tol = LAPLACIAN_SLACK / (h * h)
    lap_slack = -laplacian
    flagged = np.argwhere(smooth & (lap_slack < -lap_tol))
    for j, i in flagged:
        mean = _circle_mean(float(xs[i]), float(ys[j]), h, cfg)
        lap_slack[j, i] = -4.0 * (mean - u[j, i]) / (h * h)
    if flagged.size:
        app_logger.debug(f"{len(flagged)} points rechecked with circle means")
    checks.append(
        _check("superharmonicity", lap_slack, smooth, lap_tol, xs, ys, fallback_points=len(flagged))
    )

    profile_y = ys[ys >= 0.0]
    profile = u0_profile(np.concatenate(([profile_y[0] - h], profile_y, [profile_y[-1] + h])))
    second_profile = profile[:-2] + profile[2:] - 2.0 * profile[1:-1]
    convexity = PropertyCheck(
        name="u0_convexity",
        passed=bool(np.min(second_profile[1:]) >= -CONVEXITY_TOL),
        worst_slack=float(np.min(second_profile[1:])),
        worst_point=(0.0, float(profile_y[1 + int(np.argmin(second_profile[1:]))])),
        tolerance=CONVEXITY_TOL,
        checked_points=int(second_profile.size - 1),
    )
    checks.append(convexity)

    bound_max = float(np.max(np.abs(u + np.abs(X))))

    report = CertificateReport(
        grid=grid_spec,
        checks=checks,
        bound_max=bound_max,
        excluded_points=int(np.count_nonzero(~smooth)),
    )

    if report.passed:
        app_logger.info(f"Certificate passed; max |U + |x|| = {bound_max:.6f}")
        return report

    failed = [c for c in checks if not c.passed]
    violations = [(c.name, c.worst_point[0], c.worst_point[1]) for c in failed]
    app_logger.error(f"Certificate failed: {[c.name for c in failed]}")
    if raise_on_failure:
        raise CertificateFailure(
            f"Certificate failed for {', '.join(c.name for c in failed)}",
            report=report,
            violations=violations,
        )
    return report
