"""Seeded data-generating processes and Monte-Carlo drivers.

The generator is splitmix64: a counter-based 64-bit mixing bijection
(state_i = seed + i * 0x9E3779B97F4A7C15, output = mix(state_i) with the
two xor-multiply rounds 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
Uniforms are the top 53 output bits scaled by 2^-53; normal variates
apply the inverse normal CDF to the uniform stream.  The same
(kind, T, seed) therefore yields bitwise-identical output everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .errors import InvalidParams
from .frame import TimeSeriesFrame

_PHI = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def uniforms(seed: int, n: int) -> np.ndarray:
    """n uniforms in (0, 1) from the splitmix64 counter stream."""
    with np.errstate(over="ignore"):
        z = (np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
             + (np.arange(1, n + 1, dtype=np.uint64)) * _PHI)
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    u = (z >> np.uint64(11)).astype(np.float64) * (2.0**-53)
    # keep strictly inside (0, 1) so the inverse CDF stays finite
    return np.clip(u, 2.0**-53, 1.0 - 2.0**-53)


def normals(seed: int, n: int) -> np.ndarray:
    """Standard normals via inverse-CDF of the uniform stream."""
    return ndtri(uniforms(seed, n))


@dataclass(frozen=True)
class Dgp:
    """A seeded data-generating process.

    kind: "random_walk" (params: drift), "ar1" (rho, sigma), or
    "ecm_system" (beta: long-run vector, alpha: adjustment speed, sigma,
    optional delta and intercept).
    """

    kind: str
    T: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.T < 10:
            raise InvalidParams(f"T must be >= 10, got {self.T}")
        if self.kind not in ("random_walk", "ar1", "ecm_system"):
            raise InvalidParams(f"unknown DGP kind {self.kind!r}")
        p = self.params
        if self.kind == "ar1":
            if p.get("sigma", 1.0) <= 0:
                raise InvalidParams("sigma must be > 0")
            if abs(p.get("rho", 0.0)) >= 1:
                raise InvalidParams("ar1 needs |rho| < 1")
        if self.kind == "ecm_system":
            if p.get("sigma", 1.0) <= 0:
                raise InvalidParams("sigma must be > 0")
            alpha = p.get("alpha", -0.3)
            if abs(1.0 + alpha) >= 1.0:
                raise InvalidParams(f"ecm_system needs |1 + alpha| < 1, got alpha={alpha}")

    def with_seed(self, seed: int) -> "Dgp":
        return Dgp(self.kind, self.T, seed, self.params)


def random_walk(T: int, seed: int, drift: float = 0.0) -> np.ndarray:
    e = normals(seed, T)
    return np.cumsum(e + drift)


def ar1(T: int, seed: int, rho: float, sigma: float = 1.0) -> np.ndarray:
    e = sigma * normals(seed, T)
    y = np.empty(T)
    y[0] = e[0]
    for t in range(1, T):
        y[t] = rho * y[t - 1] + e[t]
    return y


def ecm_system(T: int, seed: int, beta, alpha: float = -0.3, sigma: float = 1.0,
               delta: float = 0.5, intercept: float = 0.0) -> dict[str, np.ndarray]:
    """Cointegrated system: x are random walks, y error-corrects.

    y_t = y_{t-1} + alpha * (y_{t-1} - beta' x_{t-1} - c) + delta * sum
    of dx_t + eps_t, so the true long-run vector is beta and the true
    adjustment speed is alpha.
    """
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    k = beta.shape[0]
    eps = sigma * normals(seed, T)
    xs = np.column_stack([random_walk(T, seed + 10_000 * (j + 1)) for j in range(k)])
    y = np.empty(T)
    y[0] = intercept + xs[0] @ beta + eps[0]
    for t in range(1, T):
        ect = y[t - 1] - xs[t - 1] @ beta - intercept
        dx = xs[t] - xs[t - 1]
        y[t] = y[t - 1] + alpha * ect + delta * float(dx.sum()) + eps[t]
    out = {"Y": y}
    for j in range(k):
        out[f"X{j + 1}"] = xs[:, j]
    return out


def generate(dgp: Dgp, start_year: int = 1951) -> TimeSeriesFrame:
    """Materialize a DGP as a TimeSeriesFrame with an annual index."""
    p = dgp.params
    if dgp.kind == "random_walk":
        cols = {"Y": random_walk(dgp.T, dgp.seed, p.get("drift", 0.0))}
    elif dgp.kind == "ar1":
        cols = {"Y": ar1(dgp.T, dgp.seed, p.get("rho", 0.5), p.get("sigma", 1.0))}
    else:
        cols = ecm_system(
            dgp.T, dgp.seed,
            p.get("beta", (2.0,)),
            p.get("alpha", -0.3),
            p.get("sigma", 1.0),
            p.get("delta", 0.5),
            p.get("intercept", 0.0),
        )
    years = tuple(range(start_year, start_year + dgp.T))
    return TimeSeriesFrame(years, {k: np.asarray(v, dtype=float) for k, v in cols.items()})


@dataclass(frozen=True)
class McResult:
    rate: float
    reps: int
    failures: int
    rows: tuple  # (replication, statistic, reject) triples


def mc_rejection_rate(test, dgp: Dgp, reps: int, level: float = 0.05,
                      collect: bool = False) -> McResult:
    """Fraction of replications rejecting at ``level``.

    ``test`` maps (frame, level, seed) to (statistic, reject: bool);
    replication r uses seed = dgp.seed + r, also handed to the test so
    procedures needing auxiliary randomness stay reproducible.  More
    than 1% replication failures aborts.
    """
    if reps < 100:
        raise InvalidParams(f"reps must be >= 100, got {reps}")
    rejections = 0
    failures = 0
    rows = []
    for r in range(reps):
        seed = dgp.seed + r
        frame = generate(dgp.with_seed(seed))
        try:
            stat, reject = test(frame, level, seed)
        except Exception:
            failures += 1
            if failures > max(1, reps // 100):
                raise InvalidParams(
                    f"more than 1% of replications failed ({failures}/{r + 1})"
                ) from None
            continue
        rejections += bool(reject)
        if collect:
            rows.append((r, float(stat), bool(reject)))
    done = reps - failures
    return McResult(rejections / done if done else math.nan, reps, failures, tuple(rows))
