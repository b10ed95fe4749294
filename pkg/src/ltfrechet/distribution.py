"""Long-term Frechet distribution: a cure-rate mixture in which a
fraction p of the population never fails and the susceptible remainder
follows a Frechet (inverse Weibull) law with scale lam and shape alpha.

The distribution is improper: the cdf tends to 1 - p, and the survival
function plateaus at p.  Setting p = 0 recovers the plain Frechet
distribution.  All evaluations run through log-space intermediates so
that shape values up to ~5 combined with times spanning many decades do
not overflow.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import log_gamma

__all__ = [
    "CURED",
    "LfParams",
    "MomentUndefined",
    "pdf",
    "log_pdf",
    "cdf",
    "survival",
    "hazard",
    "quantile",
    "raw_moment",
    "mean",
    "variance",
    "sample",
]


class MomentUndefined(ValueError):
    """The requested moment does not exist (requires alpha > order)."""


class _Cured:
    """Singleton marker for draws from the never-failing fraction."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "CURED"


CURED = _Cured()


@dataclass(frozen=True)
class LfParams:
    """Parameter triple of the long-term Frechet distribution.

    Parameters
    ----------
    lam : float
        Scale, in the same units as time; must be positive.
    alpha : float
        Shape, dimensionless; must be positive.
    p : float
        Cure fraction in [0, 1].  The boundary values are accepted as
        analytic edge cases (p=0 plain Frechet, p=1 everyone cured);
        likelihood-based inference requires the open interval.
    """

    lam: float
    alpha: float
    p: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"scale must be a positive real, got {self.lam!r}")
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"shape must be a positive real, got {self.alpha!r}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"cure fraction must lie in [0, 1], got {self.p!r}")


def _as_times(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    if not np.all(np.isfinite(arr)) or not np.all(arr > 0):
        raise ValueError("time arguments must be positive finite reals")
    return arr, scalar


def _maybe_scalar(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


def _neg_power(t: np.ndarray, params: LfParams) -> np.ndarray:
    # (t/lam)^(-alpha) as exp(-alpha*(log t - log lam)); avoids overflow
    # for extreme t/lam ratios.
    return np.exp(-params.alpha * (np.log(t) - np.log(params.lam)))


def pdf(params: LfParams, t):
    """Density of the failure-time law; integrates to 1 - p over (0, inf)."""
    arr, scalar = _as_times(t)
    if params.p == 1.0:
        return _maybe_scalar(np.zeros_like(arr), scalar)
    return _maybe_scalar(np.exp(_log_pdf_arr(params, arr)), scalar)


def log_pdf(params: LfParams, t):
    """Log density, computed without forming the density itself.

    Requires p < 1; at p = 1 the density is identically zero and the log
    is rejected as a domain error.
    """
    arr, scalar = _as_times(t)
    if params.p >= 1.0:
        raise ValueError("log_pdf requires p < 1")
    return _maybe_scalar(_log_pdf_arr(params, arr), scalar)


def _log_pdf_arr(params: LfParams, t: np.ndarray) -> np.ndarray:
    w = np.log(t) - np.log(params.lam)
    return (
        np.log(params.alpha)
        + np.log1p(-params.p)
        - np.log(params.lam)
        - (params.alpha + 1.0) * w
        - np.exp(-params.alpha * w)
    )


def cdf(params: LfParams, t):
    """Improper cdf (1-p) * exp(-(t/lam)^(-alpha)); tends to 1 - p."""
    arr, scalar = _as_times(t)
    return _maybe_scalar((1.0 - params.p) * np.exp(-_neg_power(arr, params)), scalar)


def survival(params: LfParams, t):
    """Survival p + (1-p) * (1 - exp(-(t/lam)^(-alpha))); plateaus at p."""
    arr, scalar = _as_times(t)
    x = _neg_power(arr, params)
    return _maybe_scalar(params.p + (1.0 - params.p) * (-np.expm1(-x)), scalar)


def hazard(params: LfParams, t):
    """Hazard pdf/survival; finite for all t > 0 whenever p > 0."""
    arr, scalar = _as_times(t)
    if params.p == 1.0:
        return _maybe_scalar(np.zeros_like(arr), scalar)
    # Ratio in log space: survival >= its plateau only underflows for
    # p = 0 at extreme t, where the log form stays well defined.
    x = _neg_power(arr, params)
    log_s = np.log(params.p + (1.0 - params.p) * (-np.expm1(-x)))
    return _maybe_scalar(np.exp(_log_pdf_arr(params, arr) - log_s), scalar)


def quantile(params: LfParams, u):
    """Inverse of the cdf: t_u = lam * (log((1-p)/u))^(-1/alpha).

    Defined for 0 < u < 1 - p, the range of the improper cdf.
    """
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    if not np.all((arr > 0) & (arr < 1.0 - params.p)):
        raise ValueError("quantile level must satisfy 0 < u < 1 - p")
    t = params.lam * np.log((1.0 - params.p) / arr) ** (-1.0 / params.alpha)
    return _maybe_scalar(t, scalar)


def raw_moment(params: LfParams, r: int) -> float:
    """r-th moment about the origin, (1-p) * lam^r * Gamma(1 - r/alpha).

    Cured individuals contribute zero, hence the (1-p) factor.  Exists
    only for alpha > r.
    """
    if r != int(r) or r < 1:
        raise ValueError("moment order must be a positive integer")
    r = int(r)
    if params.alpha <= r:
        raise MomentUndefined(
            f"moment of order {r} requires alpha > {r}, got alpha={params.alpha}"
        )
    return (1.0 - params.p) * params.lam**r * np.exp(log_gamma(1.0 - r / params.alpha))


def mean(params: LfParams) -> float:
    """Mean (1-p) * lam * Gamma(1 - 1/alpha); requires alpha > 1."""
    if params.alpha <= 1.0:
        raise MomentUndefined(f"mean requires alpha > 1, got alpha={params.alpha}")
    return raw_moment(params, 1)


def variance(params: LfParams) -> float:
    """Variance (1-p) * lam^2 * (Gamma(1-2/alpha) - (1-p) Gamma(1-1/alpha)^2).

    Requires alpha > 2.
    """
    if params.alpha <= 2.0:
        raise MomentUndefined(f"variance requires alpha > 2, got alpha={params.alpha}")
    g1 = np.exp(log_gamma(1.0 - 1.0 / params.alpha))
    g2 = np.exp(log_gamma(1.0 - 2.0 / params.alpha))
    q = 1.0 - params.p
    return q * params.lam**2 * (g2 - q * g1**2)


def sample(params: LfParams, n: int, rng_seed) -> list:
    """Draw n latent failure times by inverse transform.

    Each draw is the CURED marker with probability p (the latent failure
    time is infinite); otherwise it is a Frechet variate
    lam * (-log U)^(-1/alpha) with U uniform on (0, 1).  Deterministic
    given rng_seed.
    """
    if n < 1:
        raise ValueError("sample size must be >= 1")
    rng = np.random.default_rng(rng_seed)
    cured = rng.random(n) < params.p
    u = rng.random(n)
    u = np.maximum(u, np.finfo(float).tiny)  # rule out log(0)
    t = params.lam * (-np.log(u)) ** (-1.0 / params.alpha)
    return [CURED if c else float(v) for c, v in zip(cured, t)]
