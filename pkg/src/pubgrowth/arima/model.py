"""Model orders, coefficient sets, fitted models and forecasts."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

import numpy as np

from ..series import DailySeries

P_MAX_DEFAULT = 5
Q_MAX_DEFAULT = 5
D_MAX_DEFAULT = 2


@dataclass(frozen=True, order=True)
class ArimaOrder:
    p: int
    d: int
    q: int
    with_constant: bool = False

    def __post_init__(self):
        if min(self.p, self.d, self.q) < 0:
            raise ValueError("orders must be non-negative")

    @property
    def n_params(self) -> int:
        # AR + MA + optional constant + innovation variance
        return self.p + self.q + int(self.with_constant) + 1

    def label(self) -> str:
        suffix = "+c" if self.with_constant else ""
        return f"ARIMA({self.p},{self.d},{self.q}){suffix}"


def ar_roots_outside(phi, margin: float = 1e-8) -> bool:
    """Whether 1 - phi_1 z - ... - phi_p z^p has all roots outside the unit circle."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    if phi.size == 0:
        return True
    poly = np.concatenate([[1.0], -phi])
    roots = np.roots(poly[::-1])
    if roots.size == 0:
        return True
    return bool(np.min(np.abs(roots)) > 1.0 + margin)


def ma_roots_outside(theta, margin: float = 1e-8) -> bool:
    """Whether 1 + theta_1 z + ... + theta_q z^q has all roots outside the unit circle."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return ar_roots_outside(-theta, margin)


@dataclass(frozen=True)
class ArimaCoefficients:
    """ARMA recursion parameters in intercept form.

    x_t = constant + sum_i phi_i x_{t-i} + e_t + sum_j theta_j e_{t-j},
    with innovation variance sigma2.  The implied process mean is
    constant / (1 - sum(phi)).
    """

    phi: np.ndarray
    theta: np.ndarray
    constant: float = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        for name in ("phi", "theta"):
            v = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        if not self.sigma2 > 0:
            raise ValueError("innovation variance must be positive")

    @property
    def mean(self) -> float:
        return self.constant / (1.0 - float(np.sum(self.phi)))

    def is_stationary(self, margin: float = 1e-8) -> bool:
        return ar_roots_outside(self.phi, margin)

    def is_invertible(self, margin: float = 1e-8) -> bool:
        return ma_roots_outside(self.theta, margin)


@dataclass(frozen=True)
class FittedModel:
    order: ArimaOrder
    coefficients: ArimaCoefficients
    loglik: float
    aicc: float
    residuals: np.ndarray
    series: DailySeries = field(repr=False)
    degenerate: bool = False
    css_fallback: bool = False

    def __post_init__(self):
        resid = np.asarray(self.residuals, dtype=float)
        resid.setflags(write=False)
        object.__setattr__(self, "residuals", resid)

    @property
    def series_meta(self) -> dict:
        return {
            "start_date": self.series.start_date.isoformat(),
            "length": len(self.series),
            "kind": self.series.kind,
        }

    def to_json_dict(self) -> dict:
        return {
            "order": {
                "p": self.order.p,
                "d": self.order.d,
                "q": self.order.q,
                "with_constant": self.order.with_constant,
            },
            "coefficients": {
                "phi": list(self.coefficients.phi),
                "theta": list(self.coefficients.theta),
                "constant": self.coefficients.constant,
                "sigma2": self.coefficients.sigma2,
            },
            "loglik": self.loglik,
            "aicc": self.aicc,
            "residuals": list(self.residuals),
            "series_meta": self.series_meta,
        }


@dataclass(frozen=True)
class Forecast:
    """Per-lead-time point forecasts with symmetric Gaussian bounds."""

    anchor_date: dt.date
    level: float
    point: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    scale: str = "original"
    series_kind: str = "increments"
    anchor_value: float = 0.0

    def __post_init__(self):
        for name in ("point", "lower", "upper"):
            v = np.asarray(getattr(self, name), dtype=float)
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        if not 0.0 < self.level < 1.0:
            raise ValueError("interval level must be in (0, 1)")

    @property
    def horizon(self) -> int:
        return self.point.size

    def date_at(self, lead: int) -> dt.date:
        """Calendar date of the ``lead``-step-ahead value (lead >= 1)."""
        return self.anchor_date + dt.timedelta(days=lead)

    def to_json_dict(self) -> dict:
        return {
            "anchor_date": self.anchor_date.isoformat(),
            "level": self.level,
            "point": list(self.point),
            "lower": list(self.lower),
            "upper": list(self.upper),
            "scale": self.scale,
        }
