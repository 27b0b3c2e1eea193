"""Pure NumPy implementations of the hot inner loops.

Semantics must match ``_c.pyx`` exactly; the test suite asserts agreement
between the two backends whenever the compiled one is available.
"""

import numpy as np

NAME = "python"


def kalman_run(y, T, R, P0):
    """Innovation filter for a zero-mean ARMA state-space model.

    ``T`` is the r x r transition matrix, ``R`` the r-vector of innovation
    loadings, ``P0`` the stationary state covariance for unit innovation
    variance.  Returns ``(ssq, sumlogf, resid)`` where ``ssq`` is the sum of
    squared innovations scaled by their prediction variances and ``sumlogf``
    the sum of log prediction variances; both are NaN on numerical failure.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    r = T.shape[0]
    RRt = np.outer(R, R)
    a = np.zeros(r)
    P = P0.copy()
    resid = np.empty(n)
    ssq = 0.0
    sumlogf = 0.0
    for t in range(n):
        F = P[0, 0]
        if not np.isfinite(F) or F < 1e-300:
            return np.nan, np.nan, resid
        v = y[t] - a[0]
        resid[t] = v
        ssq += v * v / F
        sumlogf += np.log(F)
        TP = T @ P
        K = TP[:, 0] / F
        a = T @ a + K * v
        P = TP @ T.T + RRt - np.outer(K, K) * F
        P = 0.5 * (P + P.T)
    return ssq, sumlogf, resid


def css_residuals(x, phi, theta, c):
    """Conditional-sum-of-squares innovation recursion.

    Pre-sample observations and innovations are taken as zero; ``c`` is the
    intercept of the ARMA recursion.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    p = len(phi)
    q = len(theta)
    e = np.zeros(n)
    for t in range(n):
        pred = c
        for i in range(min(p, t)):
            pred += phi[i] * x[t - 1 - i]
        for j in range(min(q, t)):
            pred += theta[j] * e[t - 1 - j]
        e[t] = x[t] - pred
    return e


def arma_recurse(eps, phi, theta, c):
    """Generate an ARMA path from innovations ``eps`` (pre-sample terms zero)."""
    eps = np.asarray(eps, dtype=float)
    n = eps.size
    p = len(phi)
    q = len(theta)
    x = np.empty(n)
    for t in range(n):
        value = c + eps[t]
        for i in range(min(p, t)):
            value += phi[i] * x[t - 1 - i]
        for j in range(min(q, t)):
            value += theta[j] * eps[t - 1 - j]
        x[t] = value
    return x
