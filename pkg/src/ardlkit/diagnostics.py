"""Residual diagnostics and recursive-stability analysis.

Jarque-Bera (normality), Breusch-Godfrey LM (serial correlation) and
Breusch-Pagan-Godfrey (heteroscedasticity) on a fitted regression, plus
CUSUM and CUSUM-of-squares paths built from recursive residuals.  For
the three residual tests the null is the desirable state, so a verdict
of "pass" means p > level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AllZeroResiduals, DegenerateResiduals, RankDeficient
from .regression import RegressionResult, ols, tail_probability

# Brown-Durbin-Evans CUSUM boundary constants by significance level.
CUSUM_CONSTANTS = {0.01: 1.143, 0.05: 0.948, 0.10: 0.850}

# CUSUM-SQ crossing critical values c0 for max_t |S_t - E S_t|, indexed
# by the number of recursive residuals m = T - k; columns 1%, 5%, 10%.
# Frozen from a 200k-replication simulation of the null distribution
# (cumulative normalized chi-square(1) spacings); linear interpolation
# in 1/m between grid points.
_CUSUM_SQ_C0 = {
    6: (0.65650, 0.55318, 0.48843),
    8: (0.61092, 0.50826, 0.45387),
    10: (0.56905, 0.47188, 0.42128),
    12: (0.53899, 0.44632, 0.39708),
    15: (0.49752, 0.41028, 0.36511),
    20: (0.44353, 0.36584, 0.32664),
    25: (0.40613, 0.33454, 0.29888),
    30: (0.37663, 0.31018, 0.27715),
    40: (0.33020, 0.27375, 0.24482),
    50: (0.29942, 0.24796, 0.22163),
    60: (0.27589, 0.22834, 0.20436),
    80: (0.24273, 0.20017, 0.17947),
    100: (0.21795, 0.18054, 0.16183),
    150: (0.18051, 0.14888, 0.13359),
    200: (0.15688, 0.13035, 0.11689),
    300: (0.12895, 0.10724, 0.09635),
    500: (0.10059, 0.08374, 0.07520),
}
_C0_LEVELS = (0.01, 0.05, 0.10)


@dataclass(frozen=True)
class DiagnosticsReport:
    jb: tuple[float, float]
    lm: tuple[float, float, int]
    bpg: tuple[float, float]
    verdicts: dict[str, str]
    level: float


@dataclass(frozen=True)
class StabilityPath:
    statistic: str  # "cusum" or "cusum_sq"
    t_index: tuple[int, ...]
    values: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    stable: bool


def jarque_bera(residuals) -> tuple[float, float]:
    """Moment-based JB statistic with the classical biased kurtosis."""
    u = np.asarray(residuals, dtype=float).ravel()
    n = u.shape[0]
    if n < 4:
        raise DegenerateResiduals(f"JB needs n >= 4, got {n}")
    c = u - u.mean()
    m2 = float(np.mean(c**2))
    if m2 <= 0:
        raise DegenerateResiduals()
    skew = float(np.mean(c**3)) / m2**1.5
    kurt = float(np.mean(c**4)) / m2**2
    jb = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    return jb, tail_probability("chi2", jb, 2)


def breusch_godfrey(fit: RegressionResult, design, order: int = 2) -> tuple[float, float]:
    """LM test: n * R^2 of residuals on the design plus residual lags."""
    if order < 1:
        raise ValueError("order must be >= 1")
    u = fit.residuals
    X = np.atleast_2d(np.asarray(design, dtype=float))
    n, k = X.shape
    if n != u.shape[0]:
        raise ValueError("design and residuals have different lengths")
    if n <= k + order:
        raise DegenerateResiduals(f"BG with order {order} needs n > k + order")
    if np.ptp(u) == 0:
        return 0.0, 1.0
    lagged = np.zeros((n, order))
    for j in range(1, order + 1):
        lagged[j:, j - 1] = u[:-j]
    aux = ols(u, np.column_stack([X, lagged]))
    stat = n * aux.r2
    return float(stat), tail_probability("chi2", stat, order)


def breusch_pagan_godfrey(fit: RegressionResult, design) -> tuple[float, float]:
    """n * R^2 of squared residuals on the original design."""
    u = fit.residuals
    X = np.atleast_2d(np.asarray(design, dtype=float))
    n, k = X.shape
    if n != u.shape[0]:
        raise ValueError("design and residuals have different lengths")
    if n <= k:
        raise DegenerateResiduals("BPG needs n > k")
    aux = ols(u**2, X)
    stat = n * aux.r2
    return float(stat), tail_probability("chi2", stat, max(k - 1, 1))


def verdict(p: float, level: float = 0.05) -> str:
    """The null is the desirable state: p > level means "pass"."""
    return "pass" if p > level else "fail"


def diagnostics_report(fit: RegressionResult, design, bg_order: int = 2,
                       level: float = 0.05) -> DiagnosticsReport:
    jb = jarque_bera(fit.residuals)
    lm_stat, lm_p = breusch_godfrey(fit, design, bg_order)
    bpg = breusch_pagan_godfrey(fit, design)
    verdicts = {
        "normality": verdict(jb[1], level),
        "serial_correlation": verdict(lm_p, level),
        "heteroscedasticity": verdict(bpg[1], level),
    }
    return DiagnosticsReport(jb, (lm_stat, lm_p, bg_order), bpg, verdicts, level)


def recursive_residuals(y, X) -> np.ndarray:
    """One-step-ahead scaled prediction errors w_{k+1}..w_T.

    Uses Sherman-Morrison updates of (X'X)^{-1}; under the true model
    with i.i.d. N(0, sigma^2) errors the w_t are i.i.d. N(0, sigma^2).
    """
    y = np.asarray(y, dtype=float).ravel()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n, k = X.shape
    if n <= k:
        raise DegenerateResiduals("recursive residuals need n > k")
    head = X[:k]
    if np.linalg.matrix_rank(head, tol=1e-10 * max(1.0, np.abs(head).max())) < k:
        raise RankDeficient(range(k))
    xtx_inv = np.linalg.inv(head.T @ head)
    beta = xtx_inv @ head.T @ y[:k]
    w = np.empty(n - k)
    for t in range(k, n):
        xt = X[t]
        f = 1.0 + xt @ xtx_inv @ xt
        w[t - k] = (y[t] - xt @ beta) / math.sqrt(f)
        gain = xtx_inv @ xt
        xtx_inv -= np.outer(gain, gain) / f
        beta += gain * (y[t] - xt @ beta) / f
    return w


def cusum(y, X, level: float = 0.05) -> StabilityPath:
    """Cumulative sum of scaled recursive residuals with BDE bounds."""
    if level not in CUSUM_CONSTANTS:
        raise ValueError(f"level must be one of {tuple(CUSUM_CONSTANTS)}")
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n, k = X.shape
    w = recursive_residuals(y, X)
    m = w.shape[0]
    if np.ptp(w) == 0 and w[0] == 0:
        sigma = 1.0  # exact fit: the path is identically zero
    else:
        sigma = math.sqrt(float(np.sum((w - w.mean()) ** 2)) / (m - 1))
    path = np.cumsum(w) / sigma
    a = CUSUM_CONSTANTS[level]
    steps = np.arange(1, m + 1, dtype=float)
    bound = a * math.sqrt(m) + 2.0 * a * steps / math.sqrt(m)
    stable = bool(np.all(np.abs(path) <= bound))
    return StabilityPath("cusum", tuple(range(k + 1, n + 1)), path, -bound, bound, stable)


def _cusum_sq_c0(m: int, level: float) -> float:
    try:
        col = _C0_LEVELS.index(level)
    except ValueError:
        raise ValueError(f"level must be one of {_C0_LEVELS}") from None
    sizes = sorted(_CUSUM_SQ_C0)
    if m <= sizes[0]:
        return _CUSUM_SQ_C0[sizes[0]][col]
    if m >= sizes[-1]:
        # beyond the grid: scale the last entry by sqrt(m_last / m)
        return _CUSUM_SQ_C0[sizes[-1]][col] * math.sqrt(sizes[-1] / m)
    for lo, hi in zip(sizes, sizes[1:]):
        if lo <= m <= hi:
            w = (1.0 / m - 1.0 / lo) / (1.0 / hi - 1.0 / lo)
            return (1 - w) * _CUSUM_SQ_C0[lo][col] + w * _CUSUM_SQ_C0[hi][col]
    raise AssertionError("unreachable")


def cusum_sq(y, X, level: float = 0.05) -> StabilityPath:
    """Cumulative sum of squared recursive residuals with c0 bounds."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n, k = X.shape
    w = recursive_residuals(y, X)
    m = w.shape[0]
    cumulative = np.cumsum(w**2)
    total = float(cumulative[-1])
    if total <= 0:
        raise AllZeroResiduals()
    # dividing by the running total's own last entry makes the terminal
    # value exactly 1.0 in floating point
    path = cumulative / total
    center = np.arange(1, m + 1, dtype=float) / m
    c0 = _cusum_sq_c0(m, level)
    lower = center - c0
    upper = center + c0
    stable = bool(np.all((path >= lower) & (path <= upper)))
    return StabilityPath("cusum_sq", tuple(range(k + 1, n + 1)), path, lower, upper, stable)
