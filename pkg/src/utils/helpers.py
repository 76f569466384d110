"""Utility helper functions."""
import math
from typing import Tuple
import numpy as np


def is_power_of_two(n: int) -> bool:
    """Check that n is a positive power of two."""
    return n > 0 and (n & (n - 1)) == 0


def mean_and_se(values: np.ndarray) -> Tuple[float, float]:
    """
    Sample mean and its standard error.

    Both sums run through math.fsum in index order, so the result does not
    depend on how the samples were produced or partitioned.

    Args:
        values: One-dimensional sample array

    Returns:
        (mean, standard error); the standard error is 0 for fewer than 2 samples
    """
    arr = np.asarray(values, dtype=float)
    n = arr.size
    if n == 0:
        return math.nan, math.nan
    mean = math.fsum(arr.tolist()) / n
    if n < 2:
        return mean, 0.0
    centered = (arr - mean) ** 2
    var = math.fsum(centered.tolist()) / (n - 1)
    return mean, math.sqrt(var / n)


def wrap_angle(t: np.ndarray) -> np.ndarray:
    """Wrap angles into [-pi, pi)."""
    return (np.asarray(t, dtype=float) + np.pi) % (2.0 * np.pi) - np.pi


def circular_index_distance(idx: np.ndarray, center: int, n: int) -> np.ndarray:
    """Distance between node indices on a cyclic grid of n nodes."""
    d = np.abs(np.asarray(idx) - center) % n
    return np.minimum(d, n - d)
