"""Unconstrained parametrization of stationary AR / invertible MA coefficients.

Unconstrained reals are squashed to partial autocorrelations in (-1, 1) and
expanded to polynomial coefficients by the Levinson-Durbin recursion; the
resulting AR polynomial always has its roots outside the unit circle, which
keeps the likelihood surface smooth for the optimizer.  MA coefficients use
the same machinery with a sign flip.
"""

import numpy as np


def _pacf_to_coef(pacf):
    coef = np.empty(0)
    for k, pk in enumerate(pacf):
        new = np.empty(k + 1)
        new[:k] = coef - pk * coef[::-1]
        new[k] = pk
        coef = new
    return coef


def _coef_to_pacf(coef):
    coef = np.asarray(coef, dtype=float)
    pacf = np.empty(coef.size)
    work = coef.copy()
    for k in range(coef.size - 1, -1, -1):
        pk = work[k]
        pacf[k] = pk
        if k > 0:
            denom = 1.0 - pk * pk
            work = (work[:k] + pk * work[:k][::-1]) / denom
    return pacf


def unconstrained_to_ar(x):
    """Real vector -> stationary AR coefficients."""
    x = np.asarray(x, dtype=float)
    return _pacf_to_coef(x / np.sqrt(1.0 + x * x))


def ar_to_unconstrained(phi):
    """Stationary AR coefficients -> real vector (inverse of the above)."""
    pacf = np.clip(_coef_to_pacf(phi), -1.0 + 1e-12, 1.0 - 1e-12)
    return pacf / np.sqrt(1.0 - pacf * pacf)


def unconstrained_to_ma(x):
    """Real vector -> invertible MA coefficients (1 + theta_1 z + ...)."""
    return -unconstrained_to_ar(x)


def ma_to_unconstrained(theta):
    return ar_to_unconstrained(-np.asarray(theta, dtype=float))
