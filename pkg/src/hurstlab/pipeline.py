"""Rolling-window protocol: exponent scan, forward returns, percentile buckets.

For every instrument the scanner walks window-end positions spaced
``roll_step`` trading days apart.  At each position it estimates the
self-similarity exponent on the trailing ``window`` log prices and pairs
it with the log price change over the *next* ``window`` days; positions
without a complete forward window yield no observation.  Observations
are then pooled per (window, method), bucketed by percentiles of the
exponent, and summarized as annualized expected returns per bucket next
to an unconditional benchmark row.

Everything here is a pure function of its inputs.  Observations are
independent across (instrument, window-end) pairs, and all aggregations
are order-independent (compensated sums, canonical sorting), so a
permuted universe produces bit-identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyUniverse, HurstLabError, TooFewObservations
from .estimators import DFA_MODE_PROFILE, EstimatorConfig, Method, default_config, estimate
from .series import LogSeries, PriceSeries, to_log_prices

__all__ = [
    "TRADING_DAYS_PER_YEAR",
    "QUINTILE_LABELS",
    "TAIL_LABELS",
    "ANY_LABEL",
    "ScanSpec",
    "Observation",
    "Diagnostic",
    "ScanResult",
    "scan",
    "bucketize",
    "annualize",
    "report",
    "BucketRow",
    "BucketReport",
]

TRADING_DAYS_PER_YEAR = 252

QUINTILE_LABELS = ("very low", "low", "normal", "high", "very high")
TAIL_LABELS = ("p90–95", "p>95")
ANY_LABEL = "any"

_MIN_OBS = {"quintile": 20, "tail": 40}


@dataclass(frozen=True)
class ScanSpec:
    """One scan's geometry and estimator selection."""

    window: int
    roll_step: int = 20
    methods: tuple[Method, ...] = (Method.GHE, Method.DFA, Method.GM2)
    configs: Mapping[Method, EstimatorConfig] | None = None
    dfa_mode: str = DFA_MODE_PROFILE

    def __post_init__(self):
        if self.window < 32:
            raise ValueError(f"window must be >= 32, got {self.window}")
        if self.roll_step < 1:
            raise ValueError(f"roll_step must be >= 1, got {self.roll_step}")
        if not self.methods:
            raise ValueError("at least one method required")
        object.__setattr__(self, "methods", tuple(self.methods))

    def config_for(self, method: Method) -> EstimatorConfig:
        if self.configs is not None and method in self.configs:
            return self.configs[method]
        return default_config(method, self.window, dfa_mode=self.dfa_mode)


@dataclass(frozen=True)
class Observation:
    """One (instrument, window-end, method) record of the protocol."""

    instrument_id: str
    window_end: int
    method: Method
    h: float
    suspect: bool
    forward_log_return: float
    forward_days: int


@dataclass(frozen=True)
class Diagnostic:
    """A skipped series or estimate, with the reason it was skipped."""

    instrument_id: str
    window_end: int | None
    method: Method | None
    reason: str


@dataclass(frozen=True)
class ScanResult:
    observations: tuple[Observation, ...]
    diagnostics: tuple[Diagnostic, ...] = field(default=())

    def for_group(self, window: int, method: Method) -> tuple[Observation, ...]:
        return tuple(
            o for o in self.observations if o.method is method and o.forward_days == window
        )


def window_end_positions(length: int, window: int, roll_step: int) -> list[int]:
    """0-based window-end indices with a full trailing and forward window."""
    last = length - 1 - window
    return list(range(window - 1, last + 1, roll_step))


def scan(universe: Iterable[PriceSeries], spec: ScanSpec) -> ScanResult:
    """Run the rolling protocol over every instrument in the universe.

    Estimator failures at a position skip that (position, method) pair and
    are tallied as diagnostics; series too short for even one observation
    produce a single diagnostic.
    """
    series_list = sorted(universe, key=lambda s: s.instrument_id)
    if not series_list:
        raise EmptyUniverse("scan requires at least one price series")
    configs = {method: spec.config_for(method) for method in spec.methods}
    observations: list[Observation] = []
    diagnostics: list[Diagnostic] = []
    for series in series_list:
        log = to_log_prices(series)
        values = log.values
        if len(values) < 2 * spec.window:
            diagnostics.append(
                Diagnostic(
                    series.instrument_id,
                    None,
                    None,
                    f"series of {len(values)} points is shorter than 2*window={2 * spec.window}",
                )
            )
            continue
        for t in window_end_positions(len(values), spec.window, spec.roll_step):
            window_series = LogSeries(
                log.instrument_id,
                log.dates[t - spec.window + 1 : t + 1],
                values[t - spec.window + 1 : t + 1],
            )
            forward = float(values[t + spec.window] - values[t])
            window_end = int(log.dates[t])
            for method in spec.methods:
                try:
                    est = estimate(method, window_series, configs[method], dfa_mode=spec.dfa_mode)
                except HurstLabError as exc:
                    diagnostics.append(Diagnostic(series.instrument_id, window_end, method, str(exc)))
                    continue
                observations.append(
                    Observation(
                        instrument_id=series.instrument_id,
                        window_end=window_end,
                        method=method,
                        h=est.h,
                        suspect=est.suspect,
                        forward_log_return=forward,
                        forward_days=spec.window,
                    )
                )
    observations.sort(key=lambda o: (o.instrument_id, o.window_end, o.method.value))
    return ScanResult(tuple(observations), tuple(diagnostics))


def _pooled(observations: Iterable[Observation]) -> list[Observation]:
    obs = list(observations)
    if obs:
        methods = {o.method for o in obs}
        windows = {o.forward_days for o in obs}
        if len(methods) > 1 or len(windows) > 1:
            raise ValueError("observations must share one (window, method) pool")
    return obs


def bucketize(observations: Iterable[Observation], scheme: str = "quintile") -> dict[Observation, str]:
    """Assign each observation a percentile bucket of its exponent.

    Percentiles are linear interpolations between order statistics over
    the pooled exponents; boundary ties go to the upper bucket.  The
    quintile scheme covers every observation; the tail scheme labels only
    observations at or above the 90th percentile.
    """
    if scheme not in _MIN_OBS:
        raise ValueError(f"unknown scheme {scheme!r}")
    obs = _pooled(observations)
    if len(obs) < _MIN_OBS[scheme]:
        raise TooFewObservations(
            f"{scheme} bucketing needs >= {_MIN_OBS[scheme]} observations, got {len(obs)}"
        )
    hs = np.array([o.h for o in obs])
    if scheme == "quintile":
        p20, p40, p60, p80 = np.percentile(hs, [20, 40, 60, 80])
        out = {}
        for o in obs:
            if o.h < p20:
                out[o] = QUINTILE_LABELS[0]
            elif o.h < p40:
                out[o] = QUINTILE_LABELS[1]
            elif o.h < p60:
                out[o] = QUINTILE_LABELS[2]
            elif o.h < p80:
                out[o] = QUINTILE_LABELS[3]
            else:
                out[o] = QUINTILE_LABELS[4]
        return out
    p90, p95 = np.percentile(hs, [90, 95])
    out = {}
    for o in obs:
        if o.h >= p95:
            out[o] = TAIL_LABELS[1]
        elif o.h >= p90:
            out[o] = TAIL_LABELS[0]
    return out


def annualize(mean_log_return: float, window: int) -> float:
    """Geometric annualization of a mean per-window log return, in percent."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    return (math.exp(mean_log_return * TRADING_DAYS_PER_YEAR / window) - 1.0) * 100.0


@dataclass(frozen=True)
class BucketRow:
    label: str
    count: int
    annualized_return: float


@dataclass(frozen=True)
class BucketReport:
    """Annualized expected return per exponent bucket for one (window, method)."""

    window: int
    method: Method
    scheme: str
    rows: tuple[BucketRow, ...]
    benchmark_row: BucketRow
    degenerate: bool


def _bucket_row(label: str, members: Sequence[Observation], window: int) -> BucketRow:
    if not members:
        return BucketRow(label, 0, math.nan)
    mean = math.fsum(o.forward_log_return for o in members) / len(members)
    return BucketRow(label, len(members), annualize(mean, window))


def report(
    observations: Iterable[Observation],
    window: int,
    method: Method,
    scheme: str = "quintile",
) -> BucketReport:
    """Bucketed annualized-return table plus the unconditional "any" row."""
    obs = _pooled(observations)
    for o in obs:
        if o.method is not method or o.forward_days != window:
            raise ValueError(
                f"observation {o.instrument_id}@{o.window_end} does not belong to "
                f"({window}, {method.value})"
            )
    labels = QUINTILE_LABELS if scheme == "quintile" else TAIL_LABELS
    assignment = bucketize(obs, scheme)
    rows = tuple(
        _bucket_row(label, [o for o in obs if assignment.get(o) == label], window)
        for label in labels
    )
    benchmark = _bucket_row(ANY_LABEL, obs, window)
    degenerate = any(row.count == 0 for row in rows)
    return BucketReport(window, method, scheme, rows, benchmark, degenerate)
