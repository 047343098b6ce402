"""Self-similarity exponent estimators: GHE, detrended fluctuation, block ranges.

All three estimators reduce to the same recipe: build a scale-indexed
statistic from the log-price window, regress its log against the log of
the scale, and read the exponent off the slope.

* ``ghe``  -- q-th order moment of lagged increments, normalized by the
  q-th moment of the signal level; the exponent is slope / q.
* ``dfa``  -- fluctuation function of block-wise linearly detrended data,
  by default applied to the cumulative profile of mean-centered log
  returns (multifractal DFA with q = 2 giving the classical variant).
* ``gm2``  -- mean max-min range of non-overlapping log-price blocks.

Block sizes are powers of two, ``m = 2**k`` for ``k_min <= k <= k_max``;
blocks never overlap and any tail remainder shorter than ``m`` is
discarded.  Estimates are deterministic functions of (input, config);
values outside (0, 2) are flagged suspect but still returned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateRegression, SeriesTooShort, ZeroSignal
from .series import LogSeries, RegressionFit, log_returns, ols_slope_xy

__all__ = [
    "Method",
    "EstimatorConfig",
    "HEstimate",
    "DFA_MODE_PROFILE",
    "DFA_MODE_RAW",
    "default_config",
    "estimate",
    "ghe",
    "dfa",
    "gm2",
]


class Method(enum.Enum):
    GHE = "GHE"
    DFA = "DFA"
    GM2 = "GM2"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


DFA_MODE_PROFILE = "profile"
DFA_MODE_RAW = "raw"


@dataclass(frozen=True)
class EstimatorConfig:
    """Shared estimator knobs.

    ``q`` is the moment order (1 for GHE, 2 for DFA; unused by GM2),
    ``tau_max`` the largest increment lag considered by GHE, and
    ``k_min``/``k_max`` bound the dyadic block sizes used by DFA and GM2.
    ``detrend_order`` is fixed to 1 (linear detrending).
    """

    q: float = 1.0
    tau_max: int = 19
    k_min: int = 2
    k_max: int = 8
    detrend_order: int = 1

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.tau_max < 2:
            raise ValueError(f"tau_max must be >= 2, got {self.tau_max}")
        if 2 ** self.k_min < 4:
            raise ValueError(f"smallest block 2**k_min must be >= 4, got k_min={self.k_min}")
        if self.k_max - self.k_min < 2:
            raise ValueError("need k_max - k_min >= 2 (at least 3 regression points)")
        if self.detrend_order != 1:
            raise ValueError("only linear detrending (detrend_order=1) is supported")

    def scales(self) -> tuple[int, ...]:
        return tuple(2 ** k for k in range(self.k_min, self.k_max + 1))


@dataclass(frozen=True)
class HEstimate:
    """One estimator's exponent together with the regression it came from."""

    h: float
    fit: RegressionFit
    method: Method
    window_length: int

    @property
    def suspect(self) -> bool:
        """True when the estimate falls outside the plausible (0, 2) band."""
        return not (0.0 < self.h < 2.0)


def default_config(method: Method, length: int, dfa_mode: str = DFA_MODE_PROFILE) -> EstimatorConfig:
    """Default configuration for a window of ``length`` points.

    ``k_max`` is the largest k with ``2**k <= length / 2``.  DFA keeps
    every dyadic scale from ``k_min = 2`` up (the coarsest may cover a
    single block of the return profile, which costs variance but no
    bias).  GM2 drops scales below ``2**(k_max - 3)``: the mean block
    range of a sampled path sits below its continuum scaling law by a
    near-constant deficit, which at small block sizes inflates the
    log-log slope, so the small scales carry mostly bias.
    """
    q = 2.0 if method is Method.DFA else 1.0
    partition = length - 1 if (method is Method.DFA and dfa_mode == DFA_MODE_PROFILE) else length
    k_max = max((length // 2).bit_length() - 1, 4)
    while 2 ** k_max >= partition:
        k_max -= 1
    if k_max < 4:
        raise SeriesTooShort(f"window of {length} points is too short for {method.value}")
    k_min = max(2, k_max - 3) if method is Method.GM2 else 2
    return EstimatorConfig(q=q, k_min=k_min, k_max=k_max)


def _check_scales(cfg: EstimatorConfig, partition_length: int, label: str) -> None:
    if 2 ** cfg.k_max >= partition_length:
        raise SeriesTooShort(
            f"{label}: largest block 2**{cfg.k_max} does not fit in {partition_length} points"
        )
    if partition_length < 2 ** (cfg.k_min + 2):
        raise SeriesTooShort(
            f"{label}: need at least {2 ** (cfg.k_min + 2)} points, got {partition_length}"
        )


def _blocks(values: np.ndarray, m: int) -> np.ndarray:
    """Non-overlapping length-m blocks as a (d, m) view; tail remainder dropped."""
    d = len(values) // m
    return values[: d * m].reshape(d, m)


def _lag_moment_ratio(v: np.ndarray, q: float, tau_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Mean |X(t+tau)-X(t)|**q over overlapping increments, over mean |X(t)|**q."""
    denom = float(np.mean(np.abs(v) ** q))
    if denom == 0.0:
        raise ZeroSignal("ghe: all signal values are zero")
    taus = np.arange(1, tau_max + 1)
    stat = np.array([np.mean(np.abs(v[t:] - v[:-t]) ** q) for t in taus]) / denom
    return taus, stat


def ghe(x: LogSeries, cfg: EstimatorConfig | None = None) -> HEstimate:
    """Generalized Hurst exponent from the scaling of lagged q-th moments.

    For each lag tau in 1..tau_max the statistic is the mean of
    ``|X(t+tau) - X(t)|**q`` over all overlapping increments, divided by
    the (lag-independent) mean of ``|X(t)|**q``; the exponent is the
    log-log slope across lags divided by q.  Lags whose statistic is
    exactly zero carry no scaling information and are dropped before the
    fit; if none survive the regression degenerates.
    """
    if cfg is None:
        cfg = replace(default_config(Method.GHE, len(x)), tau_max=min(19, len(x) - 1))
    v = x.values
    n = len(v)
    if n <= cfg.tau_max:
        raise SeriesTooShort(f"ghe: need more than tau_max={cfg.tau_max} points, got {n}")
    taus, stat = _lag_moment_ratio(v, cfg.q, cfg.tau_max)
    keep = stat > 0.0
    if not np.any(keep):
        raise DegenerateRegression("ghe: every lag statistic is zero (constant series)")
    fit = ols_slope_xy(np.log(taus[keep]), np.log(stat[keep]))
    return HEstimate(fit.slope / cfg.q, fit, Method.GHE, n)


def _detrended_block_power(values: np.ndarray, m: int, q: float) -> np.ndarray:
    """Per-block ``(mean of squared linear-detrend residuals) ** (q/2)``."""
    blocks = _blocks(values, m)
    t = np.arange(m, dtype=np.float64)
    dt = t - t.mean()
    sxx = float(dt @ dt)
    slopes = (blocks @ dt) / sxx
    resid = blocks - blocks.mean(axis=1, keepdims=True) - slopes[:, None] * dt[None, :]
    return np.mean(resid ** 2, axis=1) ** (q / 2.0)


def dfa(x: LogSeries, cfg: EstimatorConfig | None = None, mode: str = DFA_MODE_PROFILE) -> HEstimate:
    """Detrended fluctuation analysis of the log-price window.

    ``mode="profile"`` (default) runs the standard construction: the
    signal is the cumulative sum of mean-centered log returns.
    ``mode="raw"`` detrends the log prices directly.  Each dyadic scale m
    yields the fluctuation ``F_m = (mean over blocks of B_i) ** (1/q)``
    with ``B_i = (mean squared residual) ** (q/2)``; the exponent is the
    slope of ``log F_m`` against ``log m``.
    """
    if mode not in (DFA_MODE_PROFILE, DFA_MODE_RAW):
        raise ValueError(f"unknown dfa mode {mode!r}")
    if cfg is None:
        cfg = default_config(Method.DFA, len(x), dfa_mode=mode)
    if mode == DFA_MODE_PROFILE:
        if len(x) < 2:
            raise SeriesTooShort("dfa: need at least 2 points to form returns")
        increments = log_returns(x)
        signal = np.cumsum(increments - increments.mean())
    else:
        signal = x.values
    _check_scales(cfg, len(signal), "dfa")
    scales = cfg.scales()
    fluct = np.empty(len(scales))
    for i, m in enumerate(scales):
        block_power = _detrended_block_power(signal, m, cfg.q)
        fluct[i] = np.mean(block_power) ** (1.0 / cfg.q)
    if np.any(fluct == 0.0):
        raise DegenerateRegression("dfa: zero fluctuation at some scale (block-wise linear input)")
    fit = ols_slope_xy(np.log(np.array(scales, dtype=np.float64)), np.log(fluct))
    return HEstimate(fit.slope, fit, Method.DFA, len(x))


def gm2(x: LogSeries, cfg: EstimatorConfig | None = None) -> HEstimate:
    """Block-range estimator on log prices.

    Each dyadic scale m partitions the values into non-overlapping
    blocks; the statistic is the mean of per-block max-min ranges and
    the exponent is its log-log slope against m.  The mean is taken with
    a compensated sum so it is exactly independent of block order.
    """
    if cfg is None:
        cfg = default_config(Method.GM2, len(x))
    v = x.values
    _check_scales(cfg, len(v), "gm2")
    scales = cfg.scales()
    mean_range = np.empty(len(scales))
    for i, m in enumerate(scales):
        blocks = _blocks(v, m)
        ranges = blocks.max(axis=1) - blocks.min(axis=1)
        mean_range[i] = math.fsum(ranges) / len(ranges)
    if np.any(mean_range == 0.0):
        raise DegenerateRegression("gm2: zero mean range at some scale (constant blocks)")
    fit = ols_slope_xy(np.log(np.array(scales, dtype=np.float64)), np.log(mean_range))
    return HEstimate(fit.slope, fit, Method.GM2, len(v))


def estimate(
    method: Method,
    x: LogSeries,
    cfg: EstimatorConfig | None = None,
    dfa_mode: str = DFA_MODE_PROFILE,
) -> HEstimate:
    """Dispatch to the estimator named by ``method``."""
    if method is Method.GHE:
        return ghe(x, cfg)
    if method is Method.DFA:
        return dfa(x, cfg, mode=dfa_mode)
    if method is Method.GM2:
        return gm2(x, cfg)
    raise ValueError(f"unknown method {method!r}")
