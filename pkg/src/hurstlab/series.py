"""Core series data model and the least-squares slope primitive.

``PriceSeries`` holds one instrument's positive price history on integer
trading-day ordinals, ``LogSeries`` its natural-log transform, and
``ols_slope`` the plain least-squares line every log-log scaling fit in
this package reduces to.  All types are immutable after construction and
all operations are pure functions, so values can be shared freely across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DegenerateRegression, NonFiniteInput, NonPositivePrice, SeriesTooShort

__all__ = [
    "PriceSeries",
    "LogSeries",
    "RegressionFit",
    "to_log_prices",
    "log_returns",
    "ols_slope",
    "ols_slope_xy",
]


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    if arr.ndim != 1:
        raise ValueError("series data must be one-dimensional")
    arr.flags.writeable = False
    return arr


def _check_dates(dates: np.ndarray) -> None:
    if len(dates) > 1 and not np.all(np.diff(dates) > 0):
        raise ValueError("dates must be strictly increasing with no duplicates")


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """One instrument's gap-free, date-ordered positive price history."""

    instrument_id: str
    dates: np.ndarray = field(repr=False)
    prices: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dates", _frozen_array(self.dates, np.int64))
        object.__setattr__(self, "prices", _frozen_array(self.prices, np.float64))
        if len(self.dates) != len(self.prices):
            raise ValueError("dates and prices must have equal length")
        _check_dates(self.dates)
        if not np.all(np.isfinite(self.prices)):
            raise NonFiniteInput(f"{self.instrument_id}: non-finite price")
        if np.any(self.prices <= 0.0):
            raise NonPositivePrice(f"{self.instrument_id}: prices must be strictly positive")

    def __len__(self) -> int:
        return len(self.prices)


@dataclass(frozen=True, eq=False)
class LogSeries:
    """Natural-log price values on the same date index as the source prices."""

    instrument_id: str
    dates: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dates", _frozen_array(self.dates, np.int64))
        object.__setattr__(self, "values", _frozen_array(self.values, np.float64))
        if len(self.dates) != len(self.values):
            raise ValueError("dates and values must have equal length")
        _check_dates(self.dates)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares line through n_points (x, y) pairs."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int


def to_log_prices(series: PriceSeries) -> LogSeries:
    """Natural log of each price; dates carried through unchanged."""
    if np.any(series.prices <= 0.0):
        raise NonPositivePrice(f"{series.instrument_id}: prices must be strictly positive")
    return LogSeries(series.instrument_id, series.dates, np.log(series.prices))


def log_returns(series: LogSeries) -> np.ndarray:
    """First differences of the log values; output is one element shorter."""
    if len(series) < 2:
        raise SeriesTooShort(f"{series.instrument_id}: need at least 2 points, got {len(series)}")
    return np.diff(series.values)


def ols_slope_xy(x, y) -> RegressionFit:
    """Least-squares slope/intercept of y on x with ``r_squared = 1 - SSres/SStot``.

    ``r_squared`` is defined as 1 when both sums of squares vanish (all
    points on a horizontal line) and clamped into [0, 1] against rounding.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be one-dimensional and equally long")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise NonFiniteInput("regression input contains NaN or infinity")
    n = len(x)
    if n < 2:
        raise DegenerateRegression(f"need at least 2 points, got {n}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DegenerateRegression("all x values identical")
    slope = float(dx @ dy) / sxx
    intercept = float(y.mean()) - slope * float(x.mean())
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(dy @ dy)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    r_squared = min(1.0, max(0.0, r_squared))
    return RegressionFit(slope, intercept, r_squared, n)


def ols_slope(points: Iterable[tuple[float, float]]) -> RegressionFit:
    """``ols_slope_xy`` over a sequence of (x, y) pairs."""
    pts = np.array(list(points), dtype=np.float64)
    if pts.size == 0:
        raise DegenerateRegression("need at least 2 points, got 0")
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be (x, y) pairs")
    return ols_slope_xy(pts[:, 0], pts[:, 1])
