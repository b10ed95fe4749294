"""Censored-data maximum likelihood for long-term (cure-rate) models.

The public entry points are `log_likelihood`, `fit` and `score_check` for
the long-term Frechet model.  The machinery is shared with the long-term
Weibull baseline in `model_eval` through a small model descriptor: each
model supplies its raw log-likelihood in the original parameterization
plus a data-driven starting point, and the optimizer always works on the
unconstrained scale (log scale, log shape, logit cure fraction).

Observed information is differentiated in the original (scale, shape, p)
parameterization, so standard errors and Wald intervals refer to the
natural parameters even though the search ran transformed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import expit, logit, ndtri

from .distribution import LfParams
from .numerics import (
    NonFiniteObjective,
    NotPositiveDefinite,
    OptimizerConfig,
    SymMatrix3,
    fd_gradient,
    fd_hessian,
    invert_spd,
    minimize,
)

__all__ = [
    "NoEvents",
    "CensoredSample",
    "FitResult",
    "log_likelihood",
    "fit",
    "score_check",
]

# Optimization rejects cure fractions outside this open interval; the
# improper likelihood degenerates at the boundary.
_P_MIN = 1e-6


class NoEvents(ValueError):
    """Fitting requires at least one observed event."""


@dataclass(frozen=True)
class CensoredSample:
    """Right-censored survival data: observation times and event flags.

    events[i] is True for an observed failure and False for a
    right-censored time.
    """

    times: np.ndarray
    events: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        events = np.asarray(self.events, dtype=bool)
        if times.ndim != 1 or events.ndim != 1 or times.size != events.size:
            raise ValueError("times and events must be 1-d and equally long")
        if times.size == 0:
            raise ValueError("sample must not be empty")
        if not np.all(np.isfinite(times)) or not np.all(times > 0):
            raise ValueError("all observation times must be positive finite reals")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "events", events)

    @property
    def n(self) -> int:
        return self.times.size

    @property
    def n_events(self) -> int:
        return int(self.events.sum())

    @property
    def n_censored(self) -> int:
        return self.n - self.n_events


@dataclass(frozen=True)
class FitResult:
    """Maximum likelihood fit of a three-parameter cure-rate model.

    std_errors and the interval arrays are None when the observed
    information was not positive definite (or could not be evaluated),
    which signals a boundary or non-identified optimum; no substitute
    covariance is fabricated in that case.
    """

    model: str
    param_names: tuple[str, ...]
    estimates: object
    theta: np.ndarray
    loglik: float
    observed_info: SymMatrix3 | None
    std_errors: np.ndarray | None
    ci_lower: np.ndarray | None
    ci_upper: np.ndarray | None
    ci_level: float
    converged: bool
    n_events: int
    n_censored: int


@dataclass(frozen=True)
class MixtureModel:
    """Descriptor a cure-rate mixture needs to ride the shared fitter."""

    name: str
    param_names: tuple[str, str, str]
    loglik: Callable          # loglik(theta, times, events) -> float (may be non-finite)
    init: Callable            # init(sample) -> theta0 in the original space
    build_estimates: Callable  # build_estimates(theta) -> params object


_MODELS: dict[str, MixtureModel] = {}


def register_model(model: MixtureModel) -> MixtureModel:
    _MODELS[model.name] = model
    return model


def to_unconstrained(theta) -> np.ndarray:
    """(scale, shape, p) -> (log scale, log shape, logit p)."""
    theta = np.asarray(theta, dtype=float)
    return np.array([np.log(theta[0]), np.log(theta[1]), logit(theta[2])])


def from_unconstrained(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.array([np.exp(u[0]), np.exp(u[1]), expit(u[2])])


def _lf_loglik(theta, times_log, events, d, sum_ev_logt) -> float:
    lam, alpha, p = theta
    if not (lam > 0 and alpha > 0 and p < 1):
        return -np.inf
    with np.errstate(all="ignore"):
        x = np.exp(-alpha * (times_log - np.log(lam)))  # (t/lam)^(-alpha)
        value = (
            d * np.log(alpha)
            + d * np.log1p(-p)
            + d * alpha * np.log(lam)
            - (alpha + 1.0) * sum_ev_logt
            - np.sum(x[events])
            + np.sum(np.log(p + (1.0 - p) * (-np.expm1(-x[~events]))))
        )
    return float(value)


def lf_loglik_raw(theta, times, events) -> float:
    """Log-likelihood of the long-term Frechet model, no validation.

    Evaluates the closed form: d log(alpha) + d log(1-p) + d alpha log(lam)
    - (alpha+1) sum_ev log(t) - sum_ev (lam/t)^alpha + sum_cens log S(t).
    Returns -inf/nan on invalid inputs instead of raising.
    """
    times = np.asarray(times, dtype=float)
    events = np.asarray(events, dtype=bool)
    d = int(events.sum())
    logt = np.log(times)
    return _lf_loglik(theta, logt, events, d, float(logt[events].sum()))


def log_likelihood(params: LfParams, data: CensoredSample) -> float:
    """Censored-data log-likelihood of the long-term Frechet model.

    Requires an interior cure fraction (0 < p < 1).  A non-finite
    evaluation raises NonFiniteObjective rather than returning -inf, so
    the optimizer can treat the point as rejected.
    """
    if not (0.0 < params.p < 1.0):
        raise ValueError("log_likelihood requires 0 < p < 1")
    value = lf_loglik_raw((params.lam, params.alpha, params.p), data.times, data.events)
    if not np.isfinite(value):
        raise NonFiniteObjective("log-likelihood is non-finite at these parameters")
    return value


class _Objective:
    """Per-dataset likelihood closures with cached statistics."""

    def __init__(self, model: MixtureModel, data: CensoredSample):
        self.model = model
        self.times = data.times
        self.events = data.events

    def neg_loglik_theta(self, theta) -> float:
        # Original-space objective used for the observed information; no
        # interior-p rejection so the Hessian stencil may probe slightly
        # past the estimate.
        return -self.model.loglik(theta, self.times, self.events)

    def neg_loglik_u(self, u) -> float:
        theta = from_unconstrained(u)
        if not np.all(np.isfinite(theta)):
            return np.inf
        if not (_P_MIN < theta[2] < 1.0 - _P_MIN):
            return np.inf
        value = self.model.loglik(theta, self.times, self.events)
        return -value if np.isfinite(value) else np.inf

    def loglik_u(self, u) -> float:
        return -self.neg_loglik_u(u)


def _km_plateau(data: CensoredSample) -> tuple[np.ndarray, np.ndarray, float]:
    # Deferred import: model_eval builds on this module.
    from .model_eval import kaplan_meier, km_cure_fraction

    curve = kaplan_meier(data)
    return curve.times, curve.survival, km_cure_fraction(curve)


def _linearized_frechet_init(data: CensoredSample) -> np.ndarray:
    """Starting point: cure fraction from the Kaplan-Meier plateau, then
    scale/shape by least squares on log(-log(F(t)/(1-p0))) = -alpha*(log t
    - log lam) over the Kaplan-Meier cdf at event times."""
    ev_times, ev_surv, plateau = _km_plateau(data)
    p0 = min(max(0.01, plateau), 0.99)
    alpha0, lam0 = 1.0, float(np.median(data.times[data.events]))
    if ev_times.size >= 2:
        ratio = (1.0 - ev_surv) / (1.0 - p0)
        ok = (ratio > 0.005) & (ratio < 0.995)
        if ok.sum() >= 2:
            y = np.log(-np.log(ratio[ok]))
            x = np.log(ev_times[ok])
            slope, intercept = np.polyfit(x, y, 1)
            if np.isfinite(slope) and slope < 0:
                alpha0 = max(-slope, 0.05)
                lam_cand = np.exp(intercept / alpha0)
                if np.isfinite(lam_cand) and lam_cand > 0:
                    lam0 = float(lam_cand)
    return np.array([lam0, alpha0, p0])


def _lf_model_loglik(theta, times, events):
    return lf_loglik_raw(theta, times, events)


LF_MODEL = register_model(
    MixtureModel(
        name="lf",
        param_names=("lambda", "alpha", "p"),
        loglik=_lf_model_loglik,
        init=_linearized_frechet_init,
        build_estimates=lambda theta: LfParams(theta[0], theta[1], theta[2]),
    )
)


def fit_mixture(
    data: CensoredSample,
    model: MixtureModel,
    config: OptimizerConfig | None = None,
    level: float = 0.95,
    theta0=None,
) -> FitResult:
    """Shared fitting backend for three-parameter cure-rate mixtures."""
    if not 0.0 < level < 1.0:
        raise ValueError("confidence level must lie in (0, 1)")
    if data.n_events == 0:
        raise NoEvents("cannot fit: every observation is censored")
    config = config or OptimizerConfig()
    objective = _Objective(model, data)

    start = np.asarray(theta0, dtype=float) if theta0 is not None else model.init(data)
    result = minimize(objective.neg_loglik_u, to_unconstrained(start), config)
    theta = from_unconstrained(result.x)

    observed_info = None
    std_errors = None
    ci_lower = None
    ci_upper = None
    try:
        observed_info = fd_hessian(objective.neg_loglik_theta, theta)
        cov = invert_spd(observed_info)
        std_errors = np.sqrt(cov.diagonal())
    except (NonFiniteObjective, NotPositiveDefinite):
        std_errors = None

    if std_errors is not None:
        z = ndtri(0.5 * (1.0 + level))
        ci_lower = theta - z * std_errors
        ci_upper = theta + z * std_errors
        # Report intervals inside the parameter domain, never beyond it.
        ci_lower = np.maximum(ci_lower, 0.0)
        ci_upper[2] = min(ci_upper[2], 1.0)

    return FitResult(
        model=model.name,
        param_names=model.param_names,
        estimates=model.build_estimates(theta),
        theta=theta,
        loglik=-result.fun,
        observed_info=observed_info,
        std_errors=std_errors,
        ci_lower=ci_lower,
        ci_upper=ci_upper,
        ci_level=level,
        converged=result.converged,
        n_events=data.n_events,
        n_censored=data.n_censored,
    )


def fit(
    data: CensoredSample,
    config: OptimizerConfig | None = None,
    level: float = 0.95,
    theta0=None,
) -> FitResult:
    """Maximum likelihood fit of the long-term Frechet model.

    Maximizes the censored-data log-likelihood over (log lam, log alpha,
    logit p), maps back, and differentiates the observed information at
    the optimum in the original parameterization.  Wald intervals are
    clamped to the parameter domain ([0, inf) for scale and shape,
    [0, 1] for the cure fraction).

    Raises NoEvents when the sample holds no observed failures.  A fit
    that exhausted the iteration budget is returned with converged=False
    rather than raised.
    """
    return fit_mixture(data, LF_MODEL, config=config, level=level, theta0=theta0)


def score_check(result: FitResult, data: CensoredSample) -> np.ndarray:
    """Finite-difference score at the fitted optimum, unconstrained scale.

    For an interior maximum every component should be tiny (below 1e-4);
    sizable components flag a non-stationary reported fit.
    """
    model = _MODELS[result.model]
    objective = _Objective(model, data)
    return -fd_gradient(objective.neg_loglik_u, to_unconstrained(result.theta))
