"""Calendar-indexed daily series.

A :class:`DailySeries` stores one real value per consecutive calendar day
(index ``i`` corresponds to ``start_date + i`` days).  Values are kept as
floats even for event counts so that differenced or forecast values, which
can be fractional or negative, share the same representation.  Dates are
plain proleptic-Gregorian days; no time zones.
"""

from __future__ import annotations

import datetime as dt
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput, InsufficientData, NonMonotonicCumulative

INCREMENTS = "increments"
CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class DailySeries:
    start_date: dt.date
    values: np.ndarray
    kind: str = INCREMENTS

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise EmptyInput("a daily series needs at least one value")
        if self.kind not in (INCREMENTS, CUMULATIVE):
            raise ValueError(f"unknown series kind: {self.kind!r}")
        if self.kind == CUMULATIVE:
            if np.any(values < 0) or np.any(np.diff(values) < -1e-9):
                raise NonMonotonicCumulative(
                    "cumulative series must be non-negative and non-decreasing"
                )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    @property
    def end_date(self) -> dt.date:
        return self.start_date + dt.timedelta(days=len(self) - 1)

    def date_at(self, i: int) -> dt.date:
        return self.start_date + dt.timedelta(days=i)

    def slice(self, n: int) -> "DailySeries":
        """First ``n`` days as a new series (used by backtesting)."""
        if not 1 <= n <= len(self):
            raise InsufficientData(f"cannot take a {n}-day prefix of {len(self)} days")
        return DailySeries(self.start_date, self.values[:n].copy(), self.kind)


@dataclass(frozen=True)
class DifferencedSeries:
    """Order-d differenced view of a series, with the seed values needed to
    invert the differencing exactly.

    ``seed_values[k]`` is the first element of the k-times-differenced
    series, k = 0 .. d-1.
    """

    values: np.ndarray
    d: int
    seed_values: np.ndarray
    origin_start_date: dt.date
    origin_kind: str = field(default=INCREMENTS)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        seeds = np.asarray(self.seed_values, dtype=float)
        seeds.setflags(write=False)
        object.__setattr__(self, "seed_values", seeds)


def from_events(dates, date_range=None):
    """Count events per day into a gap-free increments series.

    ``date_range``, if given as ``(first, last)``, fixes the calendar window;
    events outside it are dropped.  Returns ``(series, dropped_count)``.
    """
    if not dates:
        raise EmptyInput("no event dates supplied")
    dropped = 0
    if date_range is not None:
        first, last = date_range
        kept = [day for day in dates if first <= day <= last]
        dropped = len(dates) - len(kept)
        if not kept:
            raise EmptyInput("no event dates fall inside the requested range")
    else:
        kept = list(dates)
        first, last = min(kept), max(kept)
    n_days = (last - first).days + 1
    counts = np.zeros(n_days)
    tally = Counter((day - first).days for day in kept)
    for offset, count in tally.items():
        counts[offset] = count
    return DailySeries(first, counts, INCREMENTS), dropped


def convert(series: DailySeries, to: str) -> DailySeries:
    """Convert between increments and cumulative views.

    increments -> cumulative is the prefix sum; the inverse is the first
    difference with the first value preserved.  Round trips are exact.
    """
    if to == series.kind:
        return series
    if to == CUMULATIVE:
        return DailySeries(series.start_date, np.cumsum(series.values), CUMULATIVE)
    if to == INCREMENTS:
        out = np.diff(series.values, prepend=0.0)
        return DailySeries(series.start_date, out, INCREMENTS)
    raise ValueError(f"unknown series kind: {to!r}")


def difference(series: DailySeries, d: int) -> DifferencedSeries:
    """Apply the first-difference operator ``d`` times."""
    if d < 0:
        raise ValueError("differencing order must be non-negative")
    if len(series) <= d:
        raise InsufficientData(
            f"need more than {d} observations to difference {d} times"
        )
    values = series.values.astype(float)
    seeds = np.empty(d)
    for k in range(d):
        seeds[k] = values[0]
        values = np.diff(values)
    return DifferencedSeries(values, d, seeds, series.start_date, series.kind)


def integrate(diff: DifferencedSeries, future) -> np.ndarray:
    """Map an extension of the differenced series back to the original scale.

    With ``future`` empty this returns an empty vector; otherwise the
    returned values continue the original series after its last observation.
    """
    future = np.asarray(future, dtype=float)
    n_future = future.size
    values = np.concatenate([diff.values, future])
    for k in range(diff.d - 1, -1, -1):
        rebuilt = np.empty(values.size + 1)
        rebuilt[0] = diff.seed_values[k]
        np.cumsum(values, out=rebuilt[1:])
        rebuilt[1:] += diff.seed_values[k]
        values = rebuilt
    if n_future == 0:
        return np.empty(0)
    return values[-n_future:]


def reconstruct(diff: DifferencedSeries) -> np.ndarray:
    """Rebuild the original-scale observations from a differenced view."""
    values = diff.values
    for k in range(diff.d - 1, -1, -1):
        rebuilt = np.empty(values.size + 1)
        rebuilt[0] = diff.seed_values[k]
        np.cumsum(values, out=rebuilt[1:])
        rebuilt[1:] += diff.seed_values[k]
        values = rebuilt
    return values
