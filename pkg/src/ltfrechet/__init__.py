"""Cure-fraction survival analysis with the long-term Frechet distribution.

A numpy/scipy library covering the exact distribution mathematics,
censored-data maximum likelihood with observed-information intervals, a
Monte Carlo estimator-quality harness, Kaplan-Meier and information
criterion tooling, and a small CLI (`ltfrechet`).
"""
from .distribution import (
    CURED,
    LfParams,
    MomentUndefined,
    cdf,
    hazard,
    log_pdf,
    mean,
    pdf,
    quantile,
    raw_moment,
    sample,
    survival,
    variance,
)
from .inference import (
    CensoredSample,
    FitResult,
    NoEvents,
    fit,
    log_likelihood,
    score_check,
)
from .model_eval import (
    KmCurve,
    LtWeibullParams,
    ModelScore,
    compare,
    fit_lt_weibull,
    information_criteria,
    kaplan_meier,
    km_cure_fraction,
)
from .montecarlo import (
    CalibrationInfeasible,
    Scenario,
    SimReport,
    calibrate_censoring,
    censoring_probability,
    generate_replicate,
    run_scenario,
)
from .numerics import (
    NonFiniteObjective,
    NotPositiveDefinite,
    OptimizerConfig,
    SymMatrix3,
    fd_gradient,
    fd_hessian,
    invert_spd,
    log_gamma,
    minimize,
)
from .datasets import kersey1987, load_builtin

__version__ = "0.1.0"

__all__ = [
    "CURED",
    "CalibrationInfeasible",
    "CensoredSample",
    "FitResult",
    "KmCurve",
    "LfParams",
    "LtWeibullParams",
    "ModelScore",
    "MomentUndefined",
    "NoEvents",
    "NonFiniteObjective",
    "NotPositiveDefinite",
    "OptimizerConfig",
    "Scenario",
    "SimReport",
    "SymMatrix3",
    "calibrate_censoring",
    "cdf",
    "censoring_probability",
    "compare",
    "fd_gradient",
    "fd_hessian",
    "fit",
    "fit_lt_weibull",
    "generate_replicate",
    "hazard",
    "information_criteria",
    "invert_spd",
    "kaplan_meier",
    "kersey1987",
    "km_cure_fraction",
    "load_builtin",
    "log_gamma",
    "log_likelihood",
    "log_pdf",
    "mean",
    "minimize",
    "pdf",
    "quantile",
    "raw_moment",
    "run_scenario",
    "sample",
    "score_check",
    "survival",
    "variance",
    "__version__",
]
