"""Least squares, hypothesis-test plumbing, information criteria, and
kernel long-run variance estimation.

This is the shared numerical engine.  Fits go through a single SVD so
that rank detection, the solution, and (X'X)^-1 all come from one
rank-revealing factorization; severe collinearity among lagged logs is
the expected failure mode and is reported with the offending columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .errors import BandwidthTooLarge, InvalidDf, RankDeficient, TooFewObservations

# Singular values below RANK_TOL * largest count as zero.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class RegressionResult:
    coef: np.ndarray
    stderr: np.ndarray
    tstats: np.ndarray
    residuals: np.ndarray
    rss: float
    tss: float
    r2: float
    df_resid: int
    loglik: float
    xtx_inverse: np.ndarray
    degenerate_r2: bool = False

    @property
    def nobs(self) -> int:
        return self.residuals.shape[0]

    @property
    def nparams(self) -> int:
        return self.coef.shape[0]

    @property
    def s2(self) -> float:
        return self.rss / self.df_resid

    def coef_cov(self) -> np.ndarray:
        return self.s2 * self.xtx_inverse


@dataclass(frozen=True)
class KernelSpec:
    """Bartlett-kernel long-run variance settings.

    ``bandwidth`` is a non-negative integer or "auto", which resolves to
    the Newey-West rule floor(4 * (n/100)^(2/9)).
    """

    kernel: str = "bartlett"
    bandwidth: int | str = "auto"

    def __post_init__(self):
        if self.kernel != "bartlett":
            raise ValueError("only the bartlett kernel is supported")
        if self.bandwidth != "auto":
            if int(self.bandwidth) != self.bandwidth or self.bandwidth < 0:
                raise ValueError("bandwidth must be a non-negative integer or 'auto'")

    def resolve(self, n: int) -> int:
        if self.bandwidth == "auto":
            return int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))
        return int(self.bandwidth)


def _dependent_columns(vt: np.ndarray, s: np.ndarray, tol: float) -> list[int]:
    """Columns implicated in the null space of a rank-deficient design."""
    null_rows = vt[s < tol] if s.size else vt
    if null_rows.size == 0:
        null_rows = vt[-1:]
    weights = np.abs(null_rows).max(axis=0)
    return [int(i) for i in np.flatnonzero(weights > 1e-8 * weights.max())]


def ols(y, X) -> RegressionResult:
    """Minimize ||y - Xb||^2 via SVD; full diagnostics retained.

    Raises ``RankDeficient`` naming the dependent columns when the
    design is numerically singular, and ``TooFewObservations`` when
    n <= k.
    """
    y = np.asarray(y, dtype=float).ravel()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n, k = X.shape
    if n <= k:
        raise TooFewObservations(n, k)

    u, s, vt = np.linalg.svd(X, full_matrices=False)
    tol = RANK_TOL * s[0] if s[0] > 0 else RANK_TOL
    if np.any(s < tol):
        raise RankDeficient(_dependent_columns(vt, s, tol))

    coef = vt.T @ ((u.T @ y) / s)
    residuals = y - X @ coef
    rss = float(residuals @ residuals)
    xtx_inv = (vt.T / s**2) @ vt

    has_const = np.any(np.ptp(X, axis=0) == 0)
    if has_const:
        tss = float(np.sum((y - y.mean()) ** 2))
    else:
        tss = float(y @ y)
    degenerate = tss <= 0.0
    r2 = 0.0 if degenerate else 1.0 - rss / tss

    df_resid = n - k
    s2 = rss / df_resid
    stderr = np.sqrt(np.maximum(s2 * np.diag(xtx_inv), 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        tstats = np.where(stderr > 0, coef / np.where(stderr > 0, stderr, 1.0), np.inf * np.sign(coef))
    sigma2 = rss / n
    if sigma2 > 0:
        loglik = -n / 2.0 * (math.log(2.0 * math.pi) + math.log(sigma2) + 1.0)
    else:
        loglik = math.inf
    return RegressionResult(
        coef=coef,
        stderr=stderr,
        tstats=tstats,
        residuals=residuals,
        rss=rss,
        tss=tss,
        r2=r2,
        df_resid=df_resid,
        loglik=loglik,
        xtx_inverse=xtx_inv,
        degenerate_r2=degenerate,
    )


class WaldF(NamedTuple):
    f: float
    p: float
    negative_numerator: bool


def wald_f_zero(fit: RegressionResult, subset, restricted_rss: float) -> WaldF:
    """F-test that the coefficients indexed by ``subset`` are jointly zero.

    ``restricted_rss`` comes from the nested model with those columns
    dropped.  A numerator below -1e-10 (nesting violated) is reported as
    F = 0 with a flag rather than raised.
    """
    m = len(tuple(subset))
    if m == 0:
        raise ValueError("subset must be nonempty")
    num = restricted_rss - fit.rss
    if num < -1e-10 * max(fit.rss, 1.0):
        return WaldF(0.0, 1.0, True)
    num = max(num, 0.0)
    f = (num / m) / (fit.rss / fit.df_resid)
    p = tail_probability("f", f, (m, fit.df_resid))
    return WaldF(float(f), float(p), False)


def info_criterion(fit: RegressionResult, kind: str = "aic") -> float:
    """aic / sic / hq on the concentrated Gaussian likelihood.

    A perfect fit (rss == 0) returns -inf; callers must handle the
    sentinel.
    """
    n = fit.nobs
    k = fit.nparams
    if fit.rss <= 0.0:
        return -math.inf
    base = n * math.log(fit.rss / n)
    if kind == "aic":
        return base + 2.0 * k
    if kind == "sic":
        return base + k * math.log(n)
    if kind == "hq":
        return base + 2.0 * k * math.log(math.log(n))
    raise ValueError(f"unknown criterion {kind!r}")


def _autocovariances(u: np.ndarray, upto: int) -> np.ndarray:
    """gamma_0..gamma_upto of the demeaned series, divisor n."""
    n = u.shape[0]
    v = u - u.mean()
    return np.asarray([v[j:] @ v[: n - j] / n for j in range(upto + 1)])


def long_run_variance(u, spec: KernelSpec = KernelSpec()) -> float:
    """Bartlett-kernel long-run variance of a scalar series.

    lambda^2 = gamma_0 + 2 * sum_{j<=l} (1 - j/(l+1)) gamma_j, computed
    on the demeaned series with divisor-n autocovariances (keeps the
    estimate positive semidefinite).
    """
    u = np.asarray(u, dtype=float).ravel()
    n = u.shape[0]
    if n < 2:
        raise TooFewObservations(n, 2)
    bw = spec.resolve(n)
    if bw >= n:
        raise BandwidthTooLarge(bw, n)
    gamma = _autocovariances(u, bw)
    weights = 1.0 - np.arange(1, bw + 1) / (bw + 1.0)
    return float(gamma[0] + 2.0 * np.sum(weights * gamma[1:]))


def long_run_covariance(eta, spec: KernelSpec = KernelSpec()):
    """Matrix analogue: returns (omega, one_sided, short_run).

    omega     = G0 + sum w_j (G_j + G_j'),
    one_sided = G0 + sum w_j G_j,
    short_run = G0,
    with G_j = (1/n) sum_t eta_t eta_{t-j}' on the demeaned series.
    """
    eta = np.atleast_2d(np.asarray(eta, dtype=float))
    n, m = eta.shape
    if n < 2:
        raise TooFewObservations(n, 2)
    bw = spec.resolve(n)
    if bw >= n:
        raise BandwidthTooLarge(bw, n)
    v = eta - eta.mean(axis=0)
    g0 = v.T @ v / n
    omega = g0.copy()
    one_sided = g0.copy()
    for j in range(1, bw + 1):
        w = 1.0 - j / (bw + 1.0)
        gj = v[j:].T @ v[: n - j] / n
        omega += w * (gj + gj.T)
        one_sided += w * gj
    return omega, one_sided, g0


def tail_probability(dist: str, stat: float, df=None) -> float:
    """Upper-tail probability for the normal, t, chi2, and F families."""
    if dist == "normal":
        return float(stats.norm.sf(stat))
    if dist == "t":
        if df is None or df <= 0:
            raise InvalidDf(f"t distribution needs df > 0, got {df}")
        return float(stats.t.sf(stat, df))
    if dist == "chi2":
        if df is None or df <= 0:
            raise InvalidDf(f"chi2 distribution needs df > 0, got {df}")
        return float(stats.chi2.sf(stat, df))
    if dist == "f":
        try:
            d1, d2 = df
        except (TypeError, ValueError):
            raise InvalidDf(f"F distribution needs df pair, got {df}") from None
        if d1 <= 0 or d2 <= 0:
            raise InvalidDf(f"F distribution needs positive df pair, got {df}")
        return float(stats.f.sf(stat, d1, d2))
    raise ValueError(f"unknown distribution {dist!r}")
