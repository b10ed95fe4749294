"""Frozen reference values shared across test modules.

Two kinds of constants live here.  ORACLE_* values were computed before
the build with independent tooling (mpmath evaluations, a scipy-based
multi-start optimizer cross-checked by a finite-difference score at the
optimum, and a hand-rolled product-limit estimator); they pin what the
implementation should produce on the embedded dataset.  PUBLISHED_* and
SIM*_ hold reference values from the original published analysis of the
kersey1987 data and its accompanying estimator-quality study; simulation
constants are named by the scenario's target censored proportion (in
tenths of a percent).
"""

# Independently computed maximum likelihood fit of the embedded dataset
# (long-term Frechet), order (lambda, alpha, p).
ORACLE_THETA = (0.320861, 0.643016, 0.111344)
ORACLE_LOGLIK = -45.320877
ORACLE_CI = {
    "lambda": (0.06504, 0.57668),
    "alpha": (0.36706, 0.91897),
    "p": (0.00000, 0.36966),
}
ORACLE_LTW_NEG_LOGLIK = 46.148454
ORACLE_KM_PLATEAU = 0.2633779264214049

# Reference values from the original published analysis of this dataset.
PUBLISHED_MLE = {"alpha": 0.65682, "lambda": 0.31358, "p": 0.12476}
PUBLISHED_CI = {
    "alpha": (0.38140, 0.93225),
    "lambda": (0.07106, 0.55609),
    "p": (0.00000, 0.37245),
}
PUBLISHED_LF_NEG_LOGLIK = 45.33
PUBLISHED_LF_AIC = 96.66
PUBLISHED_LF_AICC = 97.23
PUBLISHED_LTW_NEG_LOGLIK = 46.15
PUBLISHED_KM_CURE = 0.20

# 35% censoring scenario: per sample size, {param: (mre, coverage)}.
SIM350_TRUTH = {"lambda": 4.0, "alpha": 2.0, "p": 0.3}
SIM350_CENSORING = 0.35
SIM350_ROWS = {
    25: {"alpha": (1.103, 0.951), "lambda": (1.022, 0.921), "p": (0.997, 0.927)},
    100: {"alpha": (1.023, 0.950), "lambda": (1.005, 0.945), "p": (1.000, 0.945)},
    300: {"alpha": (1.008, 0.951), "lambda": (1.002, 0.947), "p": (0.999, 0.947)},
}

# 45.7% censoring scenario (heavy-tailed shape 0.5).
SIM457_TRUTH = {"lambda": 2.0, "alpha": 0.5, "p": 0.3}
SIM457_CENSORING = 0.457
SIM457_LAMBDA_COVERAGE_N25 = 0.810
SIM457_COVERAGE_N300 = {"alpha": 0.951, "lambda": 0.928, "p": 0.952}

# 61.2% censoring scenario (heavy tail, half the population cured).
SIM612_TRUTH = {"lambda": 2.0, "alpha": 0.5, "p": 0.5}
SIM612_CENSORING = 0.612
SIM612_COVERAGE_N300 = {"alpha": 0.951, "lambda": 0.921, "p": 0.951}

# 53.5% censoring variant of the 35% scenario.
SIM535_TRUTH = {"lambda": 4.0, "alpha": 2.0, "p": 0.3}
SIM535_CENSORING = 0.535
SIM535_COVERAGE_N300 = {"alpha": 0.949, "lambda": 0.948, "p": 0.948}
