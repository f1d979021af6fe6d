"""Statistical helpers for the Monte Carlo harness."""

import numpy as np
from scipy.special import ndtr

from ..errors import InvalidArgumentError
from ..theory import GaussianApprox


def ks_statistic(samples, cdf: GaussianApprox) -> float:
    """Two-sided Kolmogorov-Smirnov statistic against a Gaussian.

    sup |F_emp - F_theory| over the sample points, using the standard
    one-sample construction (compare F_theory to both staircase sides).
    """
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.size
    if n == 0:
        raise InvalidArgumentError("samples must be nonempty")
    if not cdf.variance > 0:
        raise InvalidArgumentError("reference distribution must have positive variance")
    f = ndtr((x - cdf.mean) / cdf.std)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def mean_stderr(values) -> tuple[float, float]:
    """Sample mean and its standard error (0 for fewer than 2 values)."""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise InvalidArgumentError("values must be nonempty")
    if v.size == 1:
        return float(v[0]), 0.0
    return float(v.mean()), float(v.std(ddof=1) / np.sqrt(v.size))


def binomial_ci(p: float, n: int, z: float = 2.5758293035489004) -> tuple[float, float]:
    """Normal-approximation CI (default 99%) for a frequency of n Bernoulli(p)
    draws, with a continuity correction of half a count."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p={p} outside [0, 1]")
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    half = z * np.sqrt(p * (1.0 - p) / n) + 0.5 / n
    return max(0.0, p - half), min(1.0, p + half)
