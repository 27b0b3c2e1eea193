"""h-step forecasts with Gaussian prediction intervals.

Point forecasts come from the conditional-expectation recursion on the
differenced scale and are integrated back to the observation scale.  The
forecast variance at lead time l is sigma2 times the cumulative sum of
squared psi weights of the full integrated operator (the d unit roots
included), which makes interval half-widths non-decreasing in l.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import norm

from .._kernels import css_residuals
from ..errors import InvalidHorizon
from ..series import CUMULATIVE, difference, integrate
from .model import ArimaCoefficients, FittedModel, Forecast


def psi_weights(coefficients: ArimaCoefficients, h: int) -> np.ndarray:
    """First ``h`` MA-infinity weights psi_1 .. psi_h (psi_0 = 1 implied)."""
    if h < 1:
        raise InvalidHorizon("psi weights need h >= 1")
    return _psi_with_unit(coefficients.phi, coefficients.theta, h)[1:]


def _psi_with_unit(phi, theta, h: int) -> np.ndarray:
    """[psi_0, ..., psi_h] for the ARMA operator given by phi/theta."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    p, q = phi.size, theta.size
    psi = np.zeros(h + 1)
    psi[0] = 1.0
    for j in range(1, h + 1):
        value = theta[j - 1] if j <= q else 0.0
        for i in range(1, min(j, p) + 1):
            value += phi[i - 1] * psi[j - i]
        psi[j] = value
    return psi


def integrated_ar_coefficients(phi, d: int) -> np.ndarray:
    """AR coefficients of (1 - sum phi_i B^i)(1 - B)^d, as phi-tilde with
    operator 1 - sum phi_tilde_i B^i."""
    poly = np.concatenate([[1.0], -np.atleast_1d(np.asarray(phi, dtype=float))])
    for _ in range(d):
        poly = np.polymul(poly, [1.0, -1.0])
    return -poly[1:]


def _point_recursion(x, resid, coefficients: ArimaCoefficients, h: int) -> np.ndarray:
    phi = coefficients.phi
    theta = coefficients.theta
    p, q = phi.size, theta.size
    n = x.size
    xs = np.concatenate([x, np.zeros(h)])
    es = np.concatenate([resid, np.zeros(h)])
    for lead in range(1, h + 1):
        t = n + lead - 1
        value = coefficients.constant
        for i in range(1, p + 1):
            value += phi[i - 1] * xs[t - i]
        for j in range(1, q + 1):
            if t - j < n:
                value += theta[j - 1] * es[t - j]
        xs[t] = value
    return xs[n:]


def forecast(
    model: FittedModel,
    h: int,
    level: float = 0.95,
    accumulate_from: float | None = None,
) -> Forecast:
    """Forecast ``h`` days ahead of the fitted series.

    ``accumulate_from`` turns a forecast of an increments-fitted model into
    a cumulative-scale forecast anchored at that running total (one extra
    integration, applied to both points and psi weights).
    """
    if h < 1:
        raise InvalidHorizon(f"forecast horizon must be >= 1, got {h}")
    coef = model.coefficients
    d = model.order.d
    series = model.series
    diff = difference(series, d)
    x = diff.values
    mean = coef.mean if model.order.with_constant else 0.0
    resid = css_residuals(x - mean, coef.phi, coef.theta, 0.0)

    diff_points = _point_recursion(x, resid, coef, h)
    points = integrate(diff, diff_points)

    psi = _psi_with_unit(
        integrated_ar_coefficients(coef.phi, d), coef.theta, h - 1 if h > 1 else 0
    )
    if psi.size < h:
        psi = np.concatenate([psi, np.zeros(h - psi.size)])
    psi = psi[:h]
    kind = series.kind
    anchor_value = float(series.values[-1])
    if accumulate_from is not None:
        points = accumulate_from + np.cumsum(points)
        psi = np.cumsum(psi)
        kind = CUMULATIVE
        anchor_value = float(accumulate_from)
    variance = coef.sigma2 * np.cumsum(psi * psi)
    half = norm.ppf(0.5 * (1.0 + level)) * np.sqrt(variance)
    return Forecast(
        anchor_date=series.end_date,
        level=level,
        point=points,
        lower=points - half,
        upper=points + half,
        scale="original",
        series_kind=kind,
        anchor_value=anchor_value,
    )
