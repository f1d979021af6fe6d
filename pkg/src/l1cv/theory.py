"""Closed-form distribution theory for the L1 cross-validation error.

Implements, as plain functions of scalar inputs:

* the folded-Gaussian mean,
* the Gaussian approximation of the L1 CV error of a single estimate
  (``lemma1_distribution``),
* the confidence interval it induces on the recovery error and that
  interval's width (``theorem1_interval`` / ``theorem1_width``),
* the Gaussian approximation of the *difference* of two estimates' CV
  errors (``lemma2_distribution``), including the absolute-product moment
  E|X'Y'| of correlated standard normals it needs,
* the ordering probability P(eps_cv_p >= eps_cv_q) (``theorem2_probability``).

All formulas treat the recovery error (or error pair) as fixed and take
expectations over fresh holdout rows and noise.  They assume the impulse
mean dominates the other scales (mu_g >> sigma_g, sigma_n, eps_x); outside
that regime some closed-form variances can turn negative, which raises
:class:`ParameterRegimeError` instead of being clamped.
"""

import math
from dataclasses import dataclass, field

from .errors import InvalidArgumentError, ParameterRegimeError

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class TheoryParams:
    """Scalar parameter bundle feeding every closed form."""

    b: float
    mu_g: float
    sigma_g: float
    sigma_n: float
    m: int
    m_cv: int

    def __post_init__(self):
        if not 0.0 <= self.b <= 1.0:
            raise InvalidArgumentError(f"b={self.b} must lie in [0, 1]")
        if self.sigma_g < 0 or self.sigma_n < 0:
            raise InvalidArgumentError("sigma_g and sigma_n must be nonnegative")
        if self.m < 1 or self.m_cv < 1:
            raise InvalidArgumentError("m and m_cv must be positive")
        if self.m_cv > self.m:
            raise InvalidArgumentError(f"m_cv={self.m_cv} exceeds m={self.m}")

    @property
    def k1(self) -> float:
        """Variance constant 1 - (1-b)^2 * 2/pi."""
        return 1.0 - (1.0 - self.b) ** 2 * (2.0 / math.pi)

    @property
    def k2(self) -> float:
        """Impulse variance constant b * (sigma_g^2 + (1-b) * mu_g^2)."""
        return self.b * (self.sigma_g ** 2 + (1.0 - self.b) * self.mu_g ** 2)


@dataclass(frozen=True)
class GaussianApprox:
    """A normal approximation N(mean, variance)."""

    mean: float
    variance: float

    def __post_init__(self):
        if self.variance < 0:
            raise ParameterRegimeError(f"negative variance {self.variance}")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class PairErrors:
    """Recovery errors of two estimates plus their error inner product.

    ``inner_pq`` is <x - x_p, x - x_q>; Cauchy-Schwarz bounds it by
    eps_p * eps_q, which is validated here.
    """

    eps_p: float
    eps_q: float
    inner_pq: float

    def __post_init__(self):
        if self.eps_p < 0 or self.eps_q < 0:
            raise InvalidArgumentError("recovery errors must be nonnegative")
        bound = self.eps_p * self.eps_q
        if abs(self.inner_pq) > bound * (1.0 + 1e-12) + 1e-300:
            raise InvalidArgumentError(
                f"|inner_pq|={abs(self.inner_pq)} violates Cauchy-Schwarz bound {bound}")


@dataclass(frozen=True)
class ConfidenceInterval:
    """Two-sided bound on sqrt(eps_x^2 + sigma_n^2) at a chosen confidence."""

    lower: float
    upper: float
    confidence: float
    rho: float
    lower_clamped: bool = field(default=False)


def folded_gaussian_mean(mu: float, sigma: float) -> float:
    """Mean of |X| for X ~ N(mu, sigma^2).

    sigma = 0 degenerates to |mu|.
    """
    if sigma < 0:
        raise InvalidArgumentError("sigma must be nonnegative")
    if sigma == 0:
        return abs(mu)
    z = mu / sigma
    return sigma * _SQRT_2_OVER_PI * math.exp(-0.5 * z * z) + mu * math.erf(z / math.sqrt(2.0))


def _summand_moments(eps_x: float, p: TheoryParams) -> tuple[float, float]:
    """Mean and variance of one holdout row's absolute residual."""
    s2 = eps_x ** 2 + p.sigma_n ** 2
    folded = math.sqrt(2.0 * s2 / (p.m * math.pi))
    mean = p.b * p.mu_g + (1.0 - p.b) * folded
    var = p.k1 * s2 / p.m + p.k2 - 2.0 * p.b * (1.0 - p.b) * p.mu_g * folded
    return mean, var


def lemma1_distribution(eps_x: float, p: TheoryParams) -> GaussianApprox:
    """Normal approximation of the L1 CV error of one estimate.

    ``eps_x`` is the (fixed) L2 recovery error of the estimate; the
    distribution is over fresh holdout rows and noise.
    """
    if eps_x < 0:
        raise InvalidArgumentError("eps_x must be nonnegative")
    mean, var = _summand_moments(eps_x, p)
    variance = p.m_cv * var
    if variance < 0:
        raise ParameterRegimeError(
            f"closed-form variance {variance} is negative; the impulse-mean "
            "dominance assumption does not hold for these parameters")
    return GaussianApprox(mean=p.m_cv * mean, variance=variance)


def _interval_pieces(rho: float, p: TheoryParams) -> tuple[float, float, float, float]:
    p_plus = p.m_cv * p.b * p.mu_g + rho * math.sqrt(p.m_cv * p.k2)
    p_minus = p.m_cv * p.b * p.mu_g - rho * math.sqrt(p.m_cv * p.k2)
    h_half = (1.0 - p.b) * _SQRT_2_OVER_PI
    h_cmp = rho * math.sqrt(p.k1 / p.m_cv)
    return p_plus, p_minus, h_half + h_cmp, h_half - h_cmp


def _require_valid_h(h_minus: float, rho: float, p: TheoryParams) -> None:
    if h_minus <= 0:
        min_m_cv = math.floor(rho ** 2 * p.k1 / ((1.0 - p.b) ** 2 * 2.0 / math.pi)) + 1
        raise ParameterRegimeError(
            f"h(rho,-) = {h_minus} is not positive at m_cv={p.m_cv}; "
            f"m_cv >= {min_m_cv} is required for rho={rho}")


def theorem1_interval(eps_cv: float, rho: float, p: TheoryParams) -> ConfidenceInterval:
    """Confidence interval on sqrt(eps_x^2 + sigma_n^2) from one CV error.

    Holds with probability erf(rho / sqrt(2)).  The bounded quantity is a
    norm, so a negative lower endpoint is clamped to 0 and flagged.
    """
    if eps_cv < 0:
        raise InvalidArgumentError("eps_cv must be nonnegative")
    if rho < 0:
        raise InvalidArgumentError("rho must be nonnegative")
    p_plus, p_minus, h_plus, h_minus = _interval_pieces(rho, p)
    _require_valid_h(h_minus, rho, p)
    scale = math.sqrt(p.m) / p.m_cv
    lower = scale * (eps_cv - p_plus) / h_plus
    upper = scale * (eps_cv - p_minus) / h_minus
    clamped = lower < 0
    return ConfidenceInterval(
        lower=max(0.0, lower),
        upper=upper,
        confidence=math.erf(rho / math.sqrt(2.0)),
        rho=rho,
        lower_clamped=bool(clamped),
    )


def theorem1_width(eps_cv: float, rho: float, p: TheoryParams) -> float:
    """Algebraic width of the interval (upper minus unclamped lower)."""
    if eps_cv < 0:
        raise InvalidArgumentError("eps_cv must be nonnegative")
    if rho < 0:
        raise InvalidArgumentError("rho must be nonnegative")
    p_plus, p_minus, h_plus, h_minus = _interval_pieces(rho, p)
    _require_valid_h(h_minus, rho, p)
    scale = math.sqrt(p.m) / p.m_cv
    num = eps_cv * (h_plus - h_minus) + (p_plus * h_minus - p_minus * h_plus)
    return scale * num / (h_minus * h_plus)


def abs_product_moment(rho: float) -> float:
    """E|X'Y'| for standard normals X', Y' with correlation rho.

    Even in rho, continuous on [-1, 1], ranging from 2/pi (independent)
    to 1 (perfectly correlated).
    """
    if abs(rho) > 1.0 + 1e-12:
        raise InvalidArgumentError(f"|rho|={abs(rho)} exceeds 1")
    a = min(abs(rho), 1.0)
    if a == 0.0:
        return 2.0 / math.pi
    root = math.sqrt(max(0.0, 1.0 - a * a))
    return a - (2.0 * a / math.pi) * math.atan(root / a) + (2.0 / math.pi) * root


def lemma2_distribution(pair: PairErrors, p: TheoryParams) -> GaussianApprox:
    """Normal approximation of the difference of two estimates' CV errors.

    The estimates share each holdout row, so the impulse magnitude cancels
    row-wise; what remains is driven by the two error vectors' norms and
    their inner product.
    """
    m = p.m
    sigma_p = math.sqrt((pair.eps_p ** 2 + p.sigma_n ** 2) / m)
    sigma_q = math.sqrt((pair.eps_q ** 2 + p.sigma_n ** 2) / m)
    mean = (1.0 - p.b) * p.m_cv * _SQRT_2_OVER_PI * (sigma_p - sigma_q)

    if sigma_p == 0.0 or sigma_q == 0.0:
        # A zero sigma means that estimate's holdout residual is identically
        # zero; the cross term vanishes with it.
        cross = 0.0
    else:
        rho2 = (p.sigma_n ** 2 + pair.inner_pq) / (m * sigma_p * sigma_q)
        if abs(rho2) > 1.0 + 1e-9:
            raise InvalidArgumentError(f"rho2={rho2} outside [-1, 1]")
        rho2 = max(-1.0, min(1.0, rho2))
        cross = abs_product_moment(rho2) * sigma_p * sigma_q

    second = (1.0 - p.b) * (sigma_p ** 2 + sigma_q ** 2 - 2.0 * cross) \
        + (p.b / m) * (pair.eps_p ** 2 + pair.eps_q ** 2 - 2.0 * pair.inner_pq)
    var_r = second - ((1.0 - p.b) * _SQRT_2_OVER_PI * (sigma_p - sigma_q)) ** 2
    variance = p.m_cv * var_r
    scale = p.m_cv * (sigma_p ** 2 + sigma_q ** 2 + (pair.eps_p ** 2 + pair.eps_q ** 2) / m)
    if variance < -1e-12 * max(scale, 1e-300):
        raise ParameterRegimeError(
            f"closed-form variance {variance} is negative for pair {pair}")
    return GaussianApprox(mean=mean, variance=max(0.0, variance))


def _ordering_probability(mean: float, variance: float) -> float:
    """P(Z >= 0) for Z ~ N(mean, variance), with degenerate conventions.

    variance = 0 resolves by symmetry: 0.5 when the mean is also 0, else
    0 or 1 by its sign.  (With valid pair inputs the zero-variance case
    only arises with mean 0, but the convention is part of the contract.)
    """
    if variance == 0.0:
        if mean == 0.0:
            return 0.5
        return 1.0 if mean > 0 else 0.0
    z = mean / math.sqrt(variance)
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def theorem2_probability(pair: PairErrors, p: TheoryParams) -> float:
    """P(eps_cv_p >= eps_cv_q) under the lemma2 normal approximation."""
    d = lemma2_distribution(pair, p)
    return _ordering_probability(d.mean, d.variance)
