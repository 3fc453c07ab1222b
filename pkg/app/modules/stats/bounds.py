"""Closed-form concentration bounds for sample variances and Chebyshev approximants.

Every evaluator works with log-probabilities internally. ``BoundResult``
exposes both the raw bound (may exceed 1, useful for plotting) and the
probability clamped to [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import logsumexp

from app.modules.chebyshev.series import lebesgue_log_bound

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class BoundResult:
    threshold: float
    log_probability: float

    @property
    def probability_raw(self) -> float:
        return math.exp(self.log_probability) if self.log_probability < 700 else math.inf

    @property
    def probability(self) -> float:
        return clamp_probability(self.log_probability)


def clamp_probability(log_p: float) -> float:
    if log_p >= 0.0:
        return 1.0
    return math.exp(log_p)


# --- tail classes ---


@dataclass(frozen=True)
class SubgaussianParam:
    sigma: float

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ValueError(f"Subgaussian parameter must be nonnegative, got {self.sigma}")

    def log_tail(self, t: float) -> float:
        """log of 2 exp(-t^2 / sigma^2)."""
        if t < 0:
            raise ValueError(f"Deviation must be nonnegative, got {t}")
        if self.sigma == 0.0:
            return 0.0 if t == 0 else -math.inf
        return _LOG2 - (t / self.sigma) ** 2


@dataclass(frozen=True)
class SubexponentialParam:
    nu: float
    alpha: float

    def __post_init__(self) -> None:
        if self.nu < 0:
            raise ValueError(f"nu must be nonnegative, got {self.nu}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def crossover(self) -> float:
        return self.nu**2 / self.alpha

    def log_tail(self, t: float) -> float:
        """Quadratic branch up to nu^2/alpha, linear branch beyond."""
        if t < 0:
            raise ValueError(f"Deviation must be nonnegative, got {t}")
        if t <= self.crossover:
            if self.nu == 0.0:
                return _LOG2
            return _LOG2 - t * t / (2.0 * self.nu**2)
        return _LOG2 - t / (2.0 * self.alpha)


def subgaussian_tail(t: float, p: SubgaussianParam, clamp: bool = True) -> float:
    """P(|X| >= t) <= 2 exp(-t^2/sigma^2) for X subgaussian(sigma)."""
    if p.sigma == 0.0:
        return 1.0 if t == 0 else 0.0
    log_p = p.log_tail(t)
    return clamp_probability(log_p) if clamp else math.exp(log_p)


def subexp_tail(t: float, p: SubexponentialParam, clamp: bool = True) -> float:
    """P(|X| >= t) for X subexponential(nu, alpha)."""
    log_p = p.log_tail(t)
    return clamp_probability(log_p) if clamp else math.exp(log_p)


def subgaussian_sum_param(sigmas: ArrayLike) -> SubgaussianParam:
    """Parameter of a sum of independent subgaussians: sqrt(sum sigma_i^2)."""
    s = np.asarray(sigmas, dtype=float)
    return SubgaussianParam(float(np.linalg.norm(s)))


def subexponential_sum_param(nus: ArrayLike, alphas: ArrayLike) -> SubexponentialParam:
    """Parameter of a sum of independent subexponentials: (sqrt(sum nu_i^2), max alpha_i)."""
    return SubexponentialParam(
        float(np.linalg.norm(np.asarray(nus, dtype=float))),
        float(np.max(np.asarray(alphas, dtype=float))),
    )


# --- sample variance ---


def _variance_factor(m: int) -> float:
    return 1.0 + 1.0 / math.sqrt(m - 1)


def lemma1_params(sigma: float, m: int) -> SubexponentialParam:
    """(nu, alpha) of the sample variance of m subgaussian(sigma) draws.

    nu = 4 sigma / sqrt(m) * (1 + 1/sqrt(m-1)), alpha = 4 sigma / m * (1 + 1/sqrt(m-1)).
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if m < 2:
        raise ValueError(f"Sample variance needs m >= 2, got {m}")
    g = _variance_factor(m)
    return SubexponentialParam(nu=4.0 * sigma / math.sqrt(m) * g, alpha=4.0 * sigma / m * g)


def prop1_log_terms(s: float, sigma_vec: ArrayLike, m: int) -> np.ndarray:
    """log K_j for every node."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"Relative slack s must lie in (0, 1), got {s}")
    if m < 2:
        raise ValueError(f"Sample variance needs m >= 2, got {m}")
    sig = np.asarray(sigma_vec, dtype=float)
    if sig.size == 0 or np.any(sig <= 0):
        raise ValueError("Every sigma_j must be positive")
    g = _variance_factor(m)
    quadratic = s * s * sig * sig * m / (32.0 * (2.0 + s) ** 2) / (g * g)
    linear = s * sig * m / (8.0 * (2.0 + s)) / g
    return _LOG2 - np.minimum(quadratic, linear)


def prop1_log_bound(s: float, sigma_vec: ArrayLike, m: int) -> float:
    return float(logsumexp(prop1_log_terms(s, sigma_vec, m)))


def prop1_bound(s: float, sigma_vec: ArrayLike, m: int, clamp: bool = True) -> float:
    """Union bound sum_j K_j on any node's proportional estimate erring by a factor s."""
    log_p = prop1_log_bound(s, sigma_vec, m)
    return clamp_probability(log_p) if clamp else math.exp(log_p)


# --- approximation error ---


@dataclass(frozen=True)
class BoundInputs:
    """Inputs shared by the uniform-error bounds.

    ``sigma_vec`` holds sigma_i at the N_hat + 1 nodes; ``r_n_inf`` is the
    caller's value for the best-approximation residual ||r_n||_inf.
    """

    sigma_vec: tuple[float, ...]
    N: int
    N_hat: int
    n: int
    t: float
    r_n_inf: float = 0.0
    r: float = 0.1
    s: float = 0.0

    def __post_init__(self) -> None:
        sig = np.asarray(self.sigma_vec, dtype=float)
        object.__setattr__(self, "sigma_vec", tuple(float(v) for v in sig))
        if np.any(sig < 0):
            raise ValueError("sigma_i must be nonnegative")
        if not 0 <= self.n <= self.N_hat <= self.N or self.N_hat < 1:
            raise ValueError(
                f"Degrees must satisfy 0 <= n <= N_hat <= N with N_hat >= 1 "
                f"(got n={self.n}, N_hat={self.N_hat}, N={self.N})"
            )
        if sig.size != self.N_hat + 1:
            raise ValueError(
                f"sigma_vec needs N_hat + 1 = {self.N_hat + 1} entries, got {sig.size}"
            )
        if self.t < 0 or self.r_n_inf < 0:
            raise ValueError("t and ||r_n||_inf must be nonnegative")
        # ||sigma||_2 <= sqrt(N_hat + 1) ||sigma||_inf, equality iff sigma is constant
        if self.sigma_l2 > math.sqrt(sig.size) * self.sigma_inf * (1 + 1e-12):
            raise ValueError("sigma_vec violates the l2/l-inf norm inequality")

    @property
    def sigma_l2(self) -> float:
        return subgaussian_sum_param(self.sigma_vec).sigma

    @property
    def sigma_inf(self) -> float:
        return float(np.max(self.sigma_vec))


def _thm1_threshold(inputs: BoundInputs, inflation: float = 1.0) -> float:
    n1 = inputs.n + 1
    noise = 2.0 * inputs.t * inputs.sigma_l2 / math.sqrt(inputs.N * inputs.N_hat) * math.sqrt(n1)
    return noise * inflation + (math.sqrt(8.0 * n1) + 1.0) * inputs.r_n_inf


def thm1_prob(inputs: BoundInputs) -> BoundResult:
    """Known-sigma weighted sampling, subgaussian noise: pointwise deviation bound."""
    return BoundResult(_thm1_threshold(inputs), _LOG2 - inputs.t**2 / 2.0)


def thm2_prob(
    inputs: BoundInputs,
    nu_vec: ArrayLike,
    alpha_max: float,
    t_star: float = 1.0,
) -> BoundResult:
    """Known-sigma weighted sampling, subexponential noise.

    The exponent is quadratic in t up to ``t_star`` and linear beyond; the
    default t* = 1 is where the two coincide.
    """
    if alpha_max <= 0:
        raise ValueError(f"alpha must be positive, got {alpha_max}")
    nu = np.asarray(nu_vec, dtype=float)
    if np.any(nu < 0):
        raise ValueError("nu_i must be nonnegative")
    summed = subexponential_sum_param(nu, np.full(nu.size, alpha_max))
    nu_sq = summed.nu**2
    n1 = inputs.n + 1
    t = inputs.t
    threshold = (
        lebesgue_log_bound(inputs.n)
        * math.sqrt(n1)
        * (2.0 * t * nu_sq / summed.alpha / math.sqrt(inputs.N) + math.sqrt(8.0) * inputs.r_n_inf)
    )
    rate = nu_sq / (2.0 * summed.alpha**2)
    exponent = rate * t * t if t <= t_star else rate * t
    return BoundResult(threshold, _LOG2 + math.log(n1) - exponent)


def hetero_thm_prob(inputs: BoundInputs) -> BoundResult:
    """Pre-sampled allocation: the known-sigma threshold inflated by 1/sqrt((1-s)(1-r))."""
    if not 0.0 < inputs.r < 1.0:
        raise ValueError(f"Pre-sample fraction r must lie in (0, 1), got {inputs.r}")
    if not 0.0 <= inputs.s < 1.0:
        raise ValueError(f"Relative slack s must lie in [0, 1), got {inputs.s}")
    inflation = hetero_inflation(inputs.r, inputs.s)
    return BoundResult(_thm1_threshold(inputs, inflation), _LOG2 - inputs.t**2 / 2.0)


def hetero_inflation(r: float, s: float) -> float:
    return 1.0 / math.sqrt((1.0 - s) * (1.0 - r))


def dependent_bound(
    N_hat: int,
    N: int,
    sigma_vec: ArrayLike,
    q_inf: float,
    t: float,
) -> BoundResult:
    """Sup-norm bound on the untruncated interpolant without independence across nodes.

    threshold = ||q||_inf + t ||sigma||_2 / sqrt(N) * ((2/pi) log(N_hat + 1) + 1),
    probability <= 2 N_hat exp(-t^2).
    """
    if N_hat < 1 or N < 1:
        raise ValueError("N_hat and N must be positive")
    if t < 0 or q_inf < 0:
        raise ValueError("t and ||q||_inf must be nonnegative")
    sigma_l2 = subgaussian_sum_param(sigma_vec).sigma
    rho = sigma_l2 / math.sqrt(N_hat) * math.sqrt(N_hat / N)
    threshold = q_inf + t * rho * lebesgue_log_bound(N_hat)
    return BoundResult(threshold, _LOG2 + math.log(N_hat) - t * t)


def dependent_t_for(N_hat: int, probability: float) -> float:
    """The t at which 2 N_hat exp(-t^2) equals ``probability``."""
    if not 0.0 < probability < 1.0:
        raise ValueError("probability must lie in (0, 1)")
    return math.sqrt(math.log(2.0 * N_hat / probability))
