"""Measurement model: sparse signals, Gaussian sensing, impulse+Gaussian noise.

The model is y = Phi x + eta with Phi_ij ~ N(0, 1/m), x s-sparse, and
eta_i = n_i + B_i G_i where n_i ~ N(0, sigma_n^2/m), B_i takes +1/-1 each
with probability b/2 (else 0), and G_i ~ N(mu_g, sigma_g^2).  The three
noise streams are stored separately so downstream code can condition on
impulse locations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class SparseSignal:
    """Ground-truth vector with known support."""

    values: np.ndarray
    support: np.ndarray
    N: int
    s: int

    def __post_init__(self):
        if self.s > self.N:
            raise InvalidArgumentError(f"s={self.s} exceeds N={self.N}")
        if self.values.shape != (self.N,):
            raise InvalidArgumentError("values must have length N")
        nonzero = np.flatnonzero(self.values)
        if nonzero.size != self.s or not np.array_equal(nonzero, np.sort(self.support)):
            raise InvalidArgumentError("support must equal the nonzero index set")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True)
class SensingMatrix:
    """Dense m x N Gaussian sensing matrix with entrywise variance 1/m."""

    entries: np.ndarray
    m: int

    def __post_init__(self):
        if self.entries.ndim != 2 or self.entries.shape[0] != self.m:
            raise InvalidArgumentError("entries must be an m-row matrix")

    @property
    def N(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class NoiseParams:
    """Scalar parameters of the mixed impulse/Gaussian noise model."""

    b: float
    mu_g: float
    sigma_g: float
    sigma_n: float

    def __post_init__(self):
        if not 0.0 <= self.b <= 1.0:
            raise InvalidArgumentError(f"b={self.b} must lie in [0, 1]")
        if self.sigma_g < 0:
            raise InvalidArgumentError("sigma_g must be nonnegative")
        if self.sigma_n < 0:
            raise InvalidArgumentError("sigma_n must be nonnegative")


@dataclass(frozen=True)
class NoiseRealization:
    """One draw of the noise vector, component streams kept separate."""

    gaussian: np.ndarray
    impulse_sign: np.ndarray
    impulse_mag: np.ndarray

    def __post_init__(self):
        m = self.gaussian.shape[0]
        if self.impulse_sign.shape != (m,) or self.impulse_mag.shape != (m,):
            raise InvalidArgumentError("noise component lengths differ")

    @property
    def m(self) -> int:
        return self.gaussian.shape[0]

    def total(self) -> np.ndarray:
        """Entrywise total noise: gaussian + sign * magnitude."""
        return self.gaussian + self.impulse_sign * self.impulse_mag


@dataclass(frozen=True)
class MeasurementSet:
    """Sensing matrix plus clean and noisy measurements of one signal."""

    matrix: SensingMatrix
    clean: np.ndarray
    noisy: np.ndarray
    noise: NoiseRealization


def gen_sparse_signal(N: int, s: int, amp_sigma: float, rng_seed: int) -> SparseSignal:
    """Draw an s-sparse length-N signal.

    Support is uniform without replacement; nonzero entries are iid
    N(0, amp_sigma^2).
    """
    if N < 1 or s < 1:
        raise InvalidArgumentError("N and s must be positive")
    if s > N:
        raise InvalidArgumentError(f"s={s} exceeds N={N}")
    if amp_sigma <= 0:
        raise InvalidArgumentError("amp_sigma must be positive")
    rng = np.random.default_rng(rng_seed)
    support = np.sort(rng.choice(N, size=s, replace=False))
    values = np.zeros(N)
    values[support] = rng.normal(0.0, amp_sigma, s)
    return SparseSignal(values=values, support=support, N=N, s=s)


def gen_sensing_matrix(m: int, N: int, rng_seed: int, m_scale: int | None = None) -> SensingMatrix:
    """Draw an m x N Gaussian matrix with entrywise variance 1/m.

    ``m_scale`` overrides the variance denominator; the harness uses it to
    redraw holdout row blocks of a larger matrix (rows of an m_total-row
    matrix keep variance 1/m_total regardless of how many are drawn).
    """
    if m < 1 or N < 1:
        raise InvalidArgumentError("m and N must be positive")
    denom = m if m_scale is None else m_scale
    if denom < 1:
        raise InvalidArgumentError("m_scale must be positive")
    rng = np.random.default_rng(rng_seed)
    entries = rng.normal(0.0, 1.0 / np.sqrt(denom), (m, N))
    return SensingMatrix(entries=entries, m=m)


def gen_noise(m: int, params: NoiseParams, rng_seed: int, m_scale: int | None = None) -> NoiseRealization:
    """Draw the three independent noise streams for m measurements.

    Draw order is fixed (gaussian, impulse signs, impulse magnitudes) so a
    seed pins the realization bitwise.  ``m_scale`` plays the same role as
    in :func:`gen_sensing_matrix` for partial redraws.
    """
    if m < 1:
        raise InvalidArgumentError("m must be positive")
    denom = m if m_scale is None else m_scale
    if denom < 1:
        raise InvalidArgumentError("m_scale must be positive")
    rng = np.random.default_rng(rng_seed)
    gaussian = rng.normal(0.0, params.sigma_n / np.sqrt(denom), m)
    u = rng.random(m)
    impulse_sign = np.where(u < params.b / 2, 1, np.where(u < params.b, -1, 0))
    impulse_mag = rng.normal(params.mu_g, params.sigma_g, m)
    return NoiseRealization(gaussian=gaussian, impulse_sign=impulse_sign, impulse_mag=impulse_mag)


def measure(signal: SparseSignal, matrix: SensingMatrix, noise: NoiseRealization) -> MeasurementSet:
    """Assemble clean and noisy measurements: y = Phi x + total noise."""
    if matrix.N != signal.N:
        raise InvalidArgumentError(
            f"matrix has {matrix.N} columns but signal has length {signal.N}")
    if noise.m != matrix.m:
        raise InvalidArgumentError(
            f"noise has {noise.m} entries but matrix has {matrix.m} rows")
    clean = matrix.entries @ signal.values
    noisy = clean + noise.total()
    return MeasurementSet(matrix=matrix, clean=clean, noisy=noisy, noise=noise)
