"""ARMA estimation: CSS initialization and exact Gaussian MLE.

The exact likelihood is the prediction-error decomposition of a Kalman
filter on the companion state-space form of the ARMA recursion, started
from the exact stationary state covariance.  Innovation variance is
concentrated out, so the optimizer only sees the transformed AR/MA
parameters (plus the mean when a constant is included).
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_discrete_lyapunov
from scipy.optimize import minimize

from .._kernels import css_residuals, kalman_run
from ..errors import ConvergenceFailure, InsufficientData, NumericalFailure
from ..series import DailySeries, difference
from .model import ArimaCoefficients, ArimaOrder, FittedModel
from .transform import (
    ar_to_unconstrained,
    ma_to_unconstrained,
    unconstrained_to_ar,
    unconstrained_to_ma,
)

_LOG2PI = float(np.log(2.0 * np.pi))
_SIGMA2_FLOOR = 1e-12
_BIG = 1e12
MAX_ITER = 500


def statespace(phi, theta):
    """Transition matrix, innovation loadings and stationary covariance for
    a zero-mean ARMA(p, q) with unit innovation variance."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    p, q = phi.size, theta.size
    r = max(p, q + 1, 1)
    T = np.zeros((r, r))
    T[:p, 0] = phi
    T[:-1, 1:] = np.eye(r - 1)
    R = np.zeros(r)
    R[0] = 1.0
    R[1 : q + 1] = theta
    if p == 0 and q == 0:
        P0 = np.ones((1, 1))
    else:
        P0 = solve_discrete_lyapunov(T, np.outer(R, R))
    return T, R, P0


def _filter_terms(z, phi, theta):
    T, R, P0 = statespace(phi, theta)
    return kalman_run(z, T, R, P0)


def differenced_values(series: DailySeries, order: ArimaOrder) -> np.ndarray:
    if order.d == 0:
        return series.values.astype(float)
    return difference(series, order.d).values


def _check_length(n: int, order: ArimaOrder):
    if n <= order.p + order.q + 2 or n <= order.n_params + 1:
        raise InsufficientData(
            f"{n} differenced observations are too few for {order.label()}"
        )


def log_likelihood(series: DailySeries, order: ArimaOrder, coefficients: ArimaCoefficients) -> float:
    """Exact Gaussian log-likelihood of the differenced, mean-adjusted series."""
    if not coefficients.is_stationary() or not coefficients.is_invertible():
        raise NumericalFailure("coefficients must be stationary and invertible")
    x = differenced_values(series, order)
    z = x - coefficients.mean
    ssq, sumlogf, _ = _filter_terms(z, coefficients.phi, coefficients.theta)
    if not np.isfinite(ssq):
        raise NumericalFailure("Kalman filter produced a non-finite prediction variance")
    n = z.size
    s2 = coefficients.sigma2
    return -0.5 * (n * _LOG2PI + n * np.log(s2) + sumlogf + ssq / s2)


def _pack(order: ArimaOrder, phi, theta, mu):
    parts = [ar_to_unconstrained(phi)[: order.p], ma_to_unconstrained(theta)[: order.q]]
    if order.with_constant:
        parts.append([mu])
    return np.concatenate([np.asarray(p, dtype=float) for p in parts]) if parts else np.empty(0)


def _unpack(order: ArimaOrder, params):
    p, q = order.p, order.q
    phi = unconstrained_to_ar(params[:p]) if p else np.empty(0)
    theta = unconstrained_to_ma(params[p : p + q]) if q else np.empty(0)
    mu = params[p + q] if order.with_constant else 0.0
    return phi, theta, mu


def _to_coefficients(order, phi, theta, mu, sigma2) -> ArimaCoefficients:
    constant = mu * (1.0 - float(np.sum(phi))) if order.with_constant else 0.0
    return ArimaCoefficients(phi, theta, constant, max(sigma2, _SIGMA2_FLOOR))


def _degenerate_fit(series, order, x) -> FittedModel:
    mu = float(np.mean(x)) if order.with_constant else 0.0
    resid = x - mu
    n = x.size
    s2 = _SIGMA2_FLOOR
    loglik = -0.5 * (n * _LOG2PI + n * np.log(s2) + float(resid @ resid) / s2)
    coef = ArimaCoefficients(
        np.zeros(order.p), np.zeros(order.q), mu, s2
    )
    return FittedModel(order, coef, loglik, _aicc(loglik, order, n), resid, series, degenerate=True)


def _aicc(loglik: float, order: ArimaOrder, n: int) -> float:
    k = order.n_params
    return -2.0 * loglik + 2.0 * k * n / (n - k - 1)


def estimate_css(series: DailySeries, order: ArimaOrder) -> ArimaCoefficients:
    """Conditional-sum-of-squares estimate (pre-sample terms set to zero)."""
    x = differenced_values(series, order)
    _check_length(x.size, order)
    n = x.size
    if np.var(x) < _SIGMA2_FLOOR:
        return _degenerate_fit(series, order, x).coefficients
    if order.p == 0 and order.q == 0:
        mu = float(np.mean(x)) if order.with_constant else 0.0
        e = x - mu
        return _to_coefficients(order, np.empty(0), np.empty(0), mu, float(e @ e) / n)

    def objective(params):
        phi, theta, mu = _unpack(order, params)
        e = css_residuals(x - mu, phi, theta, 0.0)
        ssq = float(e @ e)
        return np.log(ssq) if np.isfinite(ssq) and ssq > 0 else _BIG

    start = np.zeros(order.p + order.q + int(order.with_constant))
    if order.with_constant:
        start[-1] = float(np.mean(x))
    res = minimize(objective, start, method="BFGS", options={"maxiter": MAX_ITER})
    best = res.x if np.isfinite(res.fun) and res.fun <= objective(start) else start
    phi, theta, mu = _unpack(order, best)
    if not np.all(np.isfinite(best)):
        raise ConvergenceFailure(
            f"CSS optimizer diverged for {order.label()}",
            best=_to_coefficients(order, *_unpack(order, start), 1.0),
        )
    e = css_residuals(x - mu, phi, theta, 0.0)
    return _to_coefficients(order, phi, theta, mu, float(e @ e) / n)


def _concentrated_nll(x, order, params):
    """Negative log-likelihood with sigma2 profiled out; also returns the
    implied sigma2 and innovations."""
    phi, theta, mu = _unpack(order, params)
    ssq, sumlogf, resid = _filter_terms(x - mu, phi, theta)
    n = x.size
    if not np.isfinite(ssq) or ssq <= 0:
        return _BIG, np.nan, resid
    sigma2 = ssq / n
    nll = 0.5 * (n * _LOG2PI + n * np.log(sigma2) + sumlogf + n)
    return (nll, sigma2, resid) if np.isfinite(nll) else (_BIG, np.nan, resid)


def estimate_mle(series: DailySeries, order: ArimaOrder) -> FittedModel:
    """Exact Gaussian MLE, started from the CSS estimate.

    The returned log-likelihood never falls below the likelihood of the CSS
    initializer; if the optimizer cannot improve on it, the initializer is
    kept and the fit is flagged as a CSS fallback.
    """
    x = differenced_values(series, order)
    _check_length(x.size, order)
    n = x.size
    if np.var(x) < _SIGMA2_FLOOR:
        return _degenerate_fit(series, order, x)

    css = estimate_css(series, order)
    start = _pack(order, css.phi, css.theta, css.mean if order.with_constant else 0.0)

    if order.p == 0 and order.q == 0:
        nll, sigma2, resid = _concentrated_nll(x, order, start)
        coef = _to_coefficients(order, np.empty(0), np.empty(0), css.mean, sigma2)
        loglik = -nll
        return FittedModel(order, coef, loglik, _aicc(loglik, order, n), resid, series)

    def objective(params):
        return _concentrated_nll(x, order, params)[0]

    res = minimize(
        objective,
        start,
        method="L-BFGS-B",
        options={"maxiter": MAX_ITER, "ftol": 1e-12, "gtol": 1e-7},
    )
    start_nll = objective(start)
    css_fallback = not (np.all(np.isfinite(res.x)) and res.fun <= start_nll)
    best = start if css_fallback else res.x
    nll, sigma2, resid = _concentrated_nll(x, order, best)
    if not np.isfinite(nll) or nll >= _BIG:
        raise ConvergenceFailure(f"likelihood optimization failed for {order.label()}", best=css)
    phi, theta, mu = _unpack(order, best)
    coef = _to_coefficients(order, phi, theta, mu, sigma2)
    loglik = -nll
    return FittedModel(
        order, coef, loglik, _aicc(loglik, order, n), resid, series, css_fallback=css_fallback
    )
