"""Growth analytics derived from series and forecasts: linear trend fit,
doubling dates, and the 3/6/9/12-month horizon table."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientData, InvalidHorizon, WrongScale
from .arima.model import Forecast
from .series import CUMULATIVE, DailySeries

DEFAULT_OFFSETS = (90, 180, 270, 365)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float
    degenerate: bool = False


@dataclass(frozen=True)
class DoublingResult:
    start_count: float
    target_factor: float
    point_date: dt.date | None
    upper_date: dt.date | None


@dataclass(frozen=True)
class HorizonReport:
    series_name: str
    start_date: dt.date
    start_count: float
    rows: tuple

    def to_json_dict(self) -> dict:
        return {
            "series": self.series_name,
            "start": {"date": self.start_date.isoformat(), "count": self.start_count},
            "rows": [
                {
                    "offset_days": offset,
                    "date": date.isoformat(),
                    "point": point,
                    "lower": lower,
                    "upper": upper,
                }
                for offset, date, point, lower, upper in self.rows
            ],
        }


def linear_fit(series: DailySeries) -> LinearFit:
    """Ordinary least squares of value on day index, with R^2 = 1 - SSE/SST.

    A constant series has SST = 0; its fit is exact by convention and
    flagged degenerate.
    """
    y = series.values
    n = y.size
    if n < 3:
        raise InsufficientData("a linear fit needs at least 3 observations")
    t = np.arange(n, dtype=float)
    t_bar = t.mean()
    y_bar = y.mean()
    sst = float(((y - y_bar) ** 2).sum())
    if sst == 0.0:
        return LinearFit(0.0, float(y_bar), 1.0, degenerate=True)
    slope = float(((t - t_bar) @ (y - y_bar)) / ((t - t_bar) @ (t - t_bar)))
    intercept = float(y_bar - slope * t_bar)
    sse = float(((y - (intercept + slope * t)) ** 2).sum())
    return LinearFit(slope, intercept, 1.0 - sse / sst)


def _first_crossing(forecast: Forecast, values, threshold: float) -> dt.date | None:
    hits = np.nonzero(values >= threshold)[0]
    if hits.size == 0:
        return None
    return forecast.date_at(int(hits[0]) + 1)


def doubling_date(forecast: Forecast, start_count: float, factor: float = 2.0) -> DoublingResult:
    """First forecast dates (point and upper bound) reaching
    ``factor * start_count``, on the daily grid with no interpolation."""
    if forecast.scale != "original" or forecast.series_kind != CUMULATIVE:
        raise WrongScale("doubling dates need a cumulative original-scale forecast")
    if start_count <= 0:
        raise ValueError("start_count must be positive")
    threshold = factor * start_count
    return DoublingResult(
        start_count=start_count,
        target_factor=factor,
        point_date=_first_crossing(forecast, forecast.point, threshold),
        upper_date=_first_crossing(forecast, forecast.upper, threshold),
    )


def horizon_report(
    forecast: Forecast,
    series_name: str,
    start_count: float,
    offsets=DEFAULT_OFFSETS,
) -> HorizonReport:
    """Read the forecast at the given day offsets (exact vector reads, no
    recomputation)."""
    offsets = list(offsets)
    if not offsets or max(offsets) > forecast.horizon or min(offsets) < 1:
        raise InvalidHorizon(
            f"offsets must lie in [1, {forecast.horizon}], got {offsets}"
        )
    rows = tuple(
        (
            offset,
            forecast.date_at(offset),
            float(forecast.point[offset - 1]),
            float(forecast.lower[offset - 1]),
            float(forecast.upper[offset - 1]),
        )
        for offset in offsets
    )
    return HorizonReport(series_name, forecast.anchor_date, float(start_count), rows)
