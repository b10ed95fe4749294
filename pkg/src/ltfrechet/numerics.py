"""Shared numerical machinery: log-gamma, a derivative-free optimizer,
finite-difference derivatives and 3x3 symmetric positive-definite solves.

Everything here is a pure function of its inputs; the optimizer is
deterministic for a fixed seed, so concurrent callers never interfere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.special import gammaln

__all__ = [
    "NonFiniteObjective",
    "NotPositiveDefinite",
    "OptimizerConfig",
    "SymMatrix3",
    "MinimizeResult",
    "log_gamma",
    "minimize",
    "fd_gradient",
    "fd_hessian",
    "invert_spd",
]


class NonFiniteObjective(ArithmeticError):
    """The objective could not be evaluated to a finite value."""


class NotPositiveDefinite(np.linalg.LinAlgError):
    """A matrix required to be positive definite is not."""


def log_gamma(x):
    """Natural log of the gamma function for x > 0.

    Thin wrapper over scipy's Lanczos-type rational approximation;
    negative and zero arguments are rejected rather than reflected.
    """
    arr = np.asarray(x, dtype=float)
    if arr.size == 0 or not np.all(arr > 0):
        raise ValueError("log_gamma requires x > 0")
    out = gammaln(arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for `minimize`.

    simplex_tolerance is the relative spread of function values across the
    simplex (scaled by max(1, |best|)) below which the search is declared
    converged.  restarts is the number of additional randomized starts
    beyond the first; the best of all starts is returned.  The annealing
    fields control an optional stochastic prelude run before each simplex
    search.
    """

    max_iterations: int = 2000
    simplex_tolerance: float = 1e-13
    restarts: int = 4
    annealing_enabled: bool = False
    annealing_steps: int = 1000
    annealing_initial_temp: float = 1.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.simplex_tolerance <= 0:
            raise ValueError("simplex_tolerance must be > 0")
        if self.restarts < 0:
            raise ValueError("restarts must be >= 0")
        if self.annealing_steps < 1:
            raise ValueError("annealing_steps must be >= 1")
        if self.annealing_initial_temp <= 0:
            raise ValueError("annealing_initial_temp must be > 0")


class MinimizeResult(NamedTuple):
    x: np.ndarray
    fun: float
    converged: bool


@dataclass(frozen=True)
class SymMatrix3:
    """3x3 symmetric matrix stored as its upper triangle."""

    a11: float
    a12: float
    a13: float
    a22: float
    a23: float
    a33: float

    @classmethod
    def from_array(cls, a, symmetrize: bool = False) -> "SymMatrix3":
        a = np.asarray(a, dtype=float)
        if a.shape != (3, 3):
            raise ValueError("expected a 3x3 array")
        if symmetrize:
            a = 0.5 * (a + a.T)
        elif not np.array_equal(a, a.T):
            raise ValueError("array is not symmetric; pass symmetrize=True")
        return cls(a[0, 0], a[0, 1], a[0, 2], a[1, 1], a[1, 2], a[2, 2])

    def to_array(self) -> np.ndarray:
        return np.array(
            [
                [self.a11, self.a12, self.a13],
                [self.a12, self.a22, self.a23],
                [self.a13, self.a23, self.a33],
            ]
        )

    def diagonal(self) -> np.ndarray:
        return np.array([self.a11, self.a22, self.a33])


class _GuardedObjective:
    """Treat exceptions and non-finite values as +inf rejected points."""

    def __init__(self, f: Callable):
        self.f = f
        self.finite_evals = 0
        self.total_evals = 0

    def __call__(self, x) -> float:
        self.total_evals += 1
        try:
            v = float(self.f(np.asarray(x, dtype=float)))
        except NonFiniteObjective:
            return math.inf
        if math.isfinite(v):
            self.finite_evals += 1
            return v
        return math.inf


def minimize(f, x0, config: OptimizerConfig | None = None, seed: int = 0) -> MinimizeResult:
    """Minimize a scalar function of three reals with Nelder-Mead.

    Runs 1 + config.restarts simplex searches (randomized starts after the
    first, optionally preceded by a simulated-annealing walk) and returns
    the best point found.  Points where f is non-finite, or where it raises
    NonFiniteObjective, are treated as rejected.

    Returns
    -------
    MinimizeResult
        x (best point), fun (value there) and converged (True when the
        relative simplex spread fell below config.simplex_tolerance).

    Raises
    ------
    NonFiniteObjective
        If no probed point evaluated to a finite value.
    """
    config = config or OptimizerConfig()
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (3,):
        raise ValueError("x0 must have exactly 3 components")
    guarded = _GuardedObjective(f)
    rng = np.random.default_rng(seed)

    best: MinimizeResult | None = None
    for start in range(config.restarts + 1):
        xs = x0.copy()
        if start > 0:
            xs = x0 + rng.normal(0.0, 0.5, size=3) * np.maximum(np.abs(x0), 1.0)
        if config.annealing_enabled:
            xs = _anneal(guarded, xs, config, rng)
        res = _nelder_mead(guarded, xs, config)
        if best is None or res.fun < best.fun or (
            res.fun == best.fun and res.converged and not best.converged
        ):
            best = res

    if guarded.finite_evals == 0:
        raise NonFiniteObjective("objective was non-finite at every probed point")
    return best


def _anneal(f, x0, config: OptimizerConfig, rng: np.random.Generator) -> np.ndarray:
    """Simulated-annealing prelude; returns the best point visited."""
    scale = 0.1 * np.maximum(np.abs(x0), 1.0)
    x_cur = x0.copy()
    f_cur = f(x_cur)
    x_best, f_best = x_cur, f_cur
    temp = config.annealing_initial_temp
    for _ in range(config.annealing_steps):
        cand = x_cur + rng.normal(0.0, 1.0, size=3) * scale * max(temp, 1e-3)
        f_cand = f(cand)
        accept = f_cand < f_cur
        if not accept and math.isfinite(f_cand) and math.isfinite(f_cur):
            accept = rng.random() < math.exp(-(f_cand - f_cur) / max(temp, 1e-12))
        if accept:
            x_cur, f_cur = cand, f_cand
            if f_cur < f_best:
                x_best, f_best = x_cur, f_cur
        temp *= 0.995
    return x_best if math.isfinite(f_best) else x0


def _nelder_mead(f, x0, config: OptimizerConfig) -> MinimizeResult:
    # Standard coefficients: reflect 1, expand 2, contract 0.5, shrink 0.5.
    nonzdelt, zdelt = 0.05, 0.00025
    sim = [x0.copy()]
    for i in range(3):
        v = x0.copy()
        v[i] = v[i] * (1.0 + nonzdelt) if v[i] != 0.0 else zdelt
        sim.append(v)
    sim = np.array(sim)
    fsim = np.array([f(v) for v in sim])

    converged = False
    for _ in range(config.max_iterations):
        order = np.argsort(fsim, kind="stable")
        sim, fsim = sim[order], fsim[order]
        spread = fsim[-1] - fsim[0] if math.isfinite(fsim[0]) else math.inf
        if math.isfinite(spread) and spread <= config.simplex_tolerance * max(
            1.0, abs(fsim[0])
        ):
            converged = True
            break

        centroid = sim[:-1].mean(axis=0)
        xr = centroid + (centroid - sim[-1])
        fr = f(xr)
        if fr < fsim[0]:
            xe = centroid + 2.0 * (centroid - sim[-1])
            fe = f(xe)
            if fe < fr:
                sim[-1], fsim[-1] = xe, fe
            else:
                sim[-1], fsim[-1] = xr, fr
        elif fr < fsim[-2]:
            sim[-1], fsim[-1] = xr, fr
        else:
            if fr < fsim[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (sim[-1] - centroid)
            fc = f(xc)
            if fc < min(fr, fsim[-1]):
                sim[-1], fsim[-1] = xc, fc
            else:
                for i in range(1, 4):
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fsim[i] = f(sim[i])

    order = np.argsort(fsim, kind="stable")
    sim, fsim = sim[order], fsim[order]
    return MinimizeResult(sim[0], float(fsim[0]), converged)


def _steps(x: np.ndarray, rel_step: float) -> np.ndarray:
    return rel_step * np.maximum(np.abs(x), 1.0)


def _eval_finite(f, x) -> float:
    try:
        v = float(f(x))
    except NonFiniteObjective:
        raise
    if not math.isfinite(v):
        raise NonFiniteObjective(f"objective non-finite at {x!r}")
    return v


def fd_gradient(f, x, rel_step: float = 1e-4) -> np.ndarray:
    """Central-difference gradient with per-coordinate relative steps.

    Step for coordinate i is rel_step * max(|x_i|, 1).  Raises
    NonFiniteObjective if any stencil point fails to evaluate.
    """
    x = np.asarray(x, dtype=float)
    h = _steps(x, rel_step)
    grad = np.empty(3)
    for i in range(3):
        xp, xm = x.copy(), x.copy()
        xp[i] += h[i]
        xm[i] -= h[i]
        grad[i] = (_eval_finite(f, xp) - _eval_finite(f, xm)) / (2.0 * h[i])
    return grad


def fd_hessian(f, x, rel_step: float = 1e-4) -> SymMatrix3:
    """Central-difference Hessian, symmetrized as (A + A^T)/2."""
    x = np.asarray(x, dtype=float)
    h = _steps(x, rel_step)
    f0 = _eval_finite(f, x)
    a = np.empty((3, 3))
    for i in range(3):
        xp, xm = x.copy(), x.copy()
        xp[i] += h[i]
        xm[i] -= h[i]
        a[i, i] = (_eval_finite(f, xp) - 2.0 * f0 + _eval_finite(f, xm)) / h[i] ** 2
    for i in range(3):
        for j in range(i + 1, 3):
            xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
            xpp[[i, j]] += [h[i], h[j]]
            xpm[i] += h[i]
            xpm[j] -= h[j]
            xmp[i] -= h[i]
            xmp[j] += h[j]
            xmm[[i, j]] -= [h[i], h[j]]
            a[i, j] = a[j, i] = (
                _eval_finite(f, xpp)
                - _eval_finite(f, xpm)
                - _eval_finite(f, xmp)
                + _eval_finite(f, xmm)
            ) / (4.0 * h[i] * h[j])
    return SymMatrix3.from_array(a, symmetrize=True)


def invert_spd(m: SymMatrix3) -> SymMatrix3:
    """Invert a symmetric positive-definite 3x3 matrix via Cholesky.

    Raises NotPositiveDefinite when the Cholesky factorization fails,
    which callers treat as "no usable covariance" rather than fabricating
    one with a pseudo-inverse.
    """
    a = m.to_array()
    if not np.all(np.isfinite(a)):
        raise NotPositiveDefinite("matrix has non-finite entries")
    try:
        factor = cho_factor(a, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from exc
    inv = cho_solve(factor, np.eye(3))
    return SymMatrix3.from_array(inv, symmetrize=True)
