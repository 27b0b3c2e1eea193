"""Simulation and verification harness: seeded ARIMA path generation,
Monte-Carlo interval-coverage checks, and rolling-origin backtests.

All randomness flows through NumPy's PCG64 generator; per-path seeds are
derived with ``SeedSequence((seed, path_index))`` so parallel evaluation
orders cannot change results.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from ._kernels import arma_recurse
from .arima.estimate import estimate_mle
from .arima.forecast import forecast as make_forecast
from .arima.model import ArimaCoefficients, ArimaOrder
from .arima.select import select_order
from .errors import InsufficientData, InvalidCoefficients, PubGrowthError
from .series import DailySeries

RNG_ALGORITHM = "numpy-pcg64"
DEFAULT_START = dt.date(2020, 1, 1)


@dataclass(frozen=True)
class SimulationSpec:
    order: ArimaOrder
    coefficients: ArimaCoefficients
    n: int
    seed: int
    burn_in: int = 200

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")


@dataclass(frozen=True)
class BacktestRecord:
    origin_index: int
    horizon: int
    point_error: float
    interval_hit: bool


@dataclass(frozen=True)
class BacktestReport:
    records: tuple
    mape: float
    coverage: float

    def to_json_dict(self) -> dict:
        return {
            "records": [
                {
                    "origin_index": r.origin_index,
                    "horizon": r.horizon,
                    "point_error": r.point_error,
                    "interval_hit": r.interval_hit,
                }
                for r in self.records
            ],
            "aggregates": {"mape": self.mape, "coverage": self.coverage},
        }


@dataclass(frozen=True)
class CoverageResult:
    coverage: float
    n_paths: int
    fit_failures: int


def _path_rng(seed: int, path_index: int | None = None) -> np.random.Generator:
    entropy = (seed,) if path_index is None else (seed, path_index)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def _simulate_values(spec: SimulationSpec, rng: np.random.Generator, n_extra: int = 0) -> np.ndarray:
    coef = spec.coefficients
    if not coef.is_stationary() or not coef.is_invertible():
        raise InvalidCoefficients("simulation needs stationary, invertible coefficients")
    n = spec.n + n_extra
    eps = rng.normal(0.0, np.sqrt(coef.sigma2), n + spec.burn_in)
    x = arma_recurse(eps, coef.phi, coef.theta, coef.constant)[spec.burn_in :]
    for _ in range(spec.order.d):
        x = np.cumsum(x)
    return x


def simulate_arima(spec: SimulationSpec, start_date: dt.date = DEFAULT_START) -> DailySeries:
    """Deterministic-for-seed ARIMA sample path anchored to a calendar date."""
    values = _simulate_values(spec, _path_rng(spec.seed))
    return DailySeries(start_date, values, "increments")


def empirical_coverage(
    spec: SimulationSpec, h: int, level: float, n_paths: int, seed: int
) -> CoverageResult:
    """Fraction of simulated continuations whose lead-``h`` value falls in
    the forecast interval of a model fit (true order) to the path prefix.

    Fit failures are excluded from the fraction and reported separately.
    """
    if n_paths < 100:
        raise ValueError("need at least 100 paths for a meaningful coverage estimate")
    hits = 0
    used = 0
    failures = 0
    for i in range(n_paths):
        values = _simulate_values(spec, _path_rng(seed, i), n_extra=h)
        train = DailySeries(DEFAULT_START, values[: spec.n], "increments")
        try:
            fit = estimate_mle(train, spec.order)
            fc = make_forecast(fit, h, level)
        except PubGrowthError:
            failures += 1
            continue
        actual = values[spec.n + h - 1]
        hits += int(fc.lower[h - 1] <= actual <= fc.upper[h - 1])
        used += 1
    if used == 0:
        raise PubGrowthError("every path failed to fit")
    return CoverageResult(hits / used, used, failures)


def rolling_backtest(
    series: DailySeries,
    initial_window: int,
    step: int,
    h: int,
    level: float = 0.95,
    p_max: int = 5,
    q_max: int = 5,
) -> BacktestReport:
    """Rolling-origin evaluation: fit on each prefix, forecast ``h`` days,
    and score the held-out actuals (MAPE and interval coverage)."""
    n = len(series)
    if initial_window + h > n:
        raise InsufficientData(
            f"need at least {initial_window + h} observations, have {n}"
        )
    records = []
    for origin in range(initial_window, n - h + 1, step):
        prefix = series.slice(origin)
        fit = select_order(prefix, p_max=p_max, q_max=q_max)
        fc = make_forecast(fit, h, level)
        actual = series.values[origin : origin + h]
        for lead in range(1, h + 1):
            err = float(fc.point[lead - 1] - actual[lead - 1])
            hit = bool(fc.lower[lead - 1] <= actual[lead - 1] <= fc.upper[lead - 1])
            records.append(BacktestRecord(origin, lead, err, hit))
    actuals = np.array(
        [series.values[r.origin_index + r.horizon - 1] for r in records]
    )
    errors = np.array([r.point_error for r in records])
    nonzero = np.abs(actuals) > 0
    mape = float(np.mean(np.abs(errors[nonzero] / actuals[nonzero]))) if nonzero.any() else 0.0
    coverage = float(np.mean([r.interval_hit for r in records]))
    return BacktestReport(tuple(records), mape, coverage)
