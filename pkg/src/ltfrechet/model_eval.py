"""Nonparametric estimation and model selection: the Kaplan-Meier
product-limit estimator, its cure-fraction plateau, AIC/AICc scoring and
the long-term Weibull baseline used for comparison fits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .inference import (
    CensoredSample,
    FitResult,
    MixtureModel,
    fit_mixture,
    register_model,
)
from .numerics import OptimizerConfig

__all__ = [
    "KmCurve",
    "ModelScore",
    "LtWeibullParams",
    "kaplan_meier",
    "km_cure_fraction",
    "information_criteria",
    "fit_lt_weibull",
    "compare",
]


@dataclass(frozen=True)
class KmCurve:
    """Kaplan-Meier step function over the distinct event times.

    survival[i] is the estimate just after times[i]; the curve starts at
    1 before the first event and is constant between events.  at_risk and
    events record the risk-set size and failure count at each step.
    """

    times: np.ndarray
    survival: np.ndarray
    at_risk: np.ndarray
    events: np.ndarray
    n_total: int

    def survival_at(self, t):
        """Evaluate the step function at arbitrary times."""
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.times, t, side="right") - 1
        values = np.concatenate([[1.0], self.survival])
        out = values[idx + 1]
        return float(out) if t.ndim == 0 else out


@dataclass(frozen=True)
class ModelScore:
    """Fit quality of one model: -log L with AIC and small-sample AICc."""

    neg_loglik: float
    aic: float
    aicc: float
    k: int
    n: int


@dataclass(frozen=True)
class LtWeibullParams:
    """Parameters of the long-term Weibull baseline.

    The susceptible group survives as exp(-(t/scale)^shape); p is the
    cure fraction.
    """

    scale: float
    shape: float
    p: float

    def __post_init__(self):
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be a positive real, got {self.scale!r}")
        if not (np.isfinite(self.shape) and self.shape > 0):
            raise ValueError(f"shape must be a positive real, got {self.shape!r}")
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"cure fraction must lie in (0, 1), got {self.p!r}")


def kaplan_meier(data: CensoredSample) -> KmCurve:
    """Product-limit estimator of the survival function.

    Ties between events and censorings at the same time are resolved
    events-first: individuals censored at t still count as at risk for
    the failures at t.
    """
    order = np.argsort(data.times, kind="stable")
    times = data.times[order]
    events = data.events[order]

    step_times, step_surv, step_risk, step_events = [], [], [], []
    surv = 1.0
    at_risk = times.size
    i = 0
    while i < times.size:
        j = i
        n_fail = 0
        while j < times.size and times[j] == times[i]:
            n_fail += int(events[j])
            j += 1
        if n_fail > 0:
            surv *= 1.0 - n_fail / at_risk
            step_times.append(times[i])
            step_surv.append(surv)
            step_risk.append(at_risk)
            step_events.append(n_fail)
        at_risk -= j - i
        i = j

    return KmCurve(
        times=np.asarray(step_times, dtype=float),
        survival=np.asarray(step_surv, dtype=float),
        at_risk=np.asarray(step_risk, dtype=int),
        events=np.asarray(step_events, dtype=int),
        n_total=times.size,
    )


def km_cure_fraction(curve: KmCurve) -> float:
    """Terminal plateau of the Kaplan-Meier curve.

    The nonparametric cure estimate: 1 when nothing ever failed, 0 when
    the curve reaches zero.
    """
    if curve.survival.size == 0:
        return 1.0
    return float(curve.survival[-1])


def information_criteria(loglik: float, k: int, n: int) -> ModelScore:
    """AIC = -2 log L + 2k and AICc = AIC + 2k(k+1)/(n-k-1)."""
    if k < 0:
        raise ValueError("parameter count must be >= 0")
    if n <= k + 1:
        raise ValueError("AICc needs n > k + 1")
    aic = -2.0 * loglik + 2.0 * k
    aicc = aic + 2.0 * k * (k + 1) / (n - k - 1)
    return ModelScore(neg_loglik=-loglik, aic=aic, aicc=aicc, k=k, n=n)


def _ltw_loglik(theta, times, events) -> float:
    scale, shape, p = theta
    if not (scale > 0 and shape > 0 and p < 1):
        return -np.inf
    with np.errstate(all="ignore"):
        w = np.log(times) - np.log(scale)
        z = np.exp(shape * w)  # (t/scale)^shape
        log_f = np.log1p(-p) + np.log(shape) - np.log(scale) + (shape - 1.0) * w - z
        log_s = np.log(p + (1.0 - p) * np.exp(-z))
        value = np.sum(np.where(events, log_f, log_s))
    return float(value)


def _ltw_init(data: CensoredSample) -> np.ndarray:
    """Weibull analog of the linearized starting point: regress
    log(-log(conditional survival)) on log t over the event times."""
    curve = kaplan_meier(data)
    plateau = km_cure_fraction(curve)
    p0 = min(max(0.01, plateau), 0.99)
    shape0, scale0 = 1.0, float(np.median(data.times[data.events]))
    if curve.times.size >= 2:
        cond = (curve.survival - p0) / (1.0 - p0)
        ok = (cond > 0.005) & (cond < 0.995)
        if ok.sum() >= 2:
            y = np.log(-np.log(cond[ok]))
            x = np.log(curve.times[ok])
            slope, intercept = np.polyfit(x, y, 1)
            if np.isfinite(slope) and slope > 0:
                shape0 = max(slope, 0.05)
                scale_cand = np.exp(-intercept / shape0)
                if np.isfinite(scale_cand) and scale_cand > 0:
                    scale0 = float(scale_cand)
    return np.array([scale0, shape0, p0])


LTW_MODEL = register_model(
    MixtureModel(
        name="lt-weibull",
        param_names=("scale", "shape", "p"),
        loglik=_ltw_loglik,
        init=_ltw_init,
        build_estimates=lambda theta: LtWeibullParams(theta[0], theta[1], theta[2]),
    )
)


def fit_lt_weibull(
    data: CensoredSample,
    config: OptimizerConfig | None = None,
    level: float = 0.95,
    theta0=None,
) -> FitResult:
    """Maximum likelihood fit of the long-term Weibull baseline.

    Same transformed-parameter machinery, observed information and
    interval conventions as the long-term Frechet `fit`.
    """
    return fit_mixture(data, LTW_MODEL, config=config, level=level, theta0=theta0)


def compare(models: list[tuple[str, ModelScore]]) -> list[tuple[str, ModelScore]]:
    """Rank models by AICc ascending (ties by AIC, then -log L).

    Exact ties keep their input order; smaller is better throughout.
    """
    if not models:
        raise ValueError("compare needs at least one model")
    return sorted(models, key=lambda item: (item[1].aicc, item[1].aic, item[1].neg_loglik))
