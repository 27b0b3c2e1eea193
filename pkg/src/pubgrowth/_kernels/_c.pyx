# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``py.py``; same contracts, same results."""

import numpy as np

from libc.math cimport log, isfinite

NAME = "cython"


def kalman_run(y, T, R, P0):
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef const double[:, ::1] Tm = np.ascontiguousarray(T, dtype=np.float64)
    cdef const double[::1] Rv = np.ascontiguousarray(R, dtype=np.float64)
    cdef int n = yv.shape[0]
    cdef int r = Tm.shape[0]
    cdef int t, i, j, k
    cdef double F, v, s, ssq = 0.0, sumlogf = 0.0

    P_arr = np.ascontiguousarray(P0, dtype=np.float64).copy()
    cdef double[:, ::1] P = P_arr
    RRt_arr = np.outer(np.asarray(Rv), np.asarray(Rv))
    cdef double[:, ::1] RRt = np.ascontiguousarray(RRt_arr)
    resid_arr = np.empty(n)
    cdef double[::1] resid = resid_arr
    a_arr = np.zeros(r)
    cdef double[::1] a = a_arr
    cdef double[::1] anew = np.empty(r)
    cdef double[::1] K = np.empty(r)
    cdef double[:, ::1] TP = np.empty((r, r))
    cdef double[:, ::1] Pn = np.empty((r, r))

    for t in range(n):
        F = P[0, 0]
        if not isfinite(F) or F < 1e-300:
            return np.nan, np.nan, resid_arr
        v = yv[t] - a[0]
        resid[t] = v
        ssq += v * v / F
        sumlogf += log(F)
        for i in range(r):
            for j in range(r):
                s = 0.0
                for k in range(r):
                    s += Tm[i, k] * P[k, j]
                TP[i, j] = s
        for i in range(r):
            K[i] = TP[i, 0] / F
        for i in range(r):
            s = 0.0
            for k in range(r):
                s += Tm[i, k] * a[k]
            anew[i] = s + K[i] * v
        for i in range(r):
            a[i] = anew[i]
        for i in range(r):
            for j in range(r):
                s = 0.0
                for k in range(r):
                    s += TP[i, k] * Tm[j, k]
                Pn[i, j] = s + RRt[i, j] - F * K[i] * K[j]
        for i in range(r):
            for j in range(r):
                P[i, j] = 0.5 * (Pn[i, j] + Pn[j, i])
    return ssq, sumlogf, resid_arr


def css_residuals(x, phi, theta, double c):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] ph = np.ascontiguousarray(phi, dtype=np.float64)
    cdef const double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef int n = xv.shape[0]
    cdef int p = ph.shape[0]
    cdef int q = th.shape[0]
    cdef int t, i, j, lim
    cdef double pred
    e_arr = np.zeros(n)
    cdef double[::1] e = e_arr
    for t in range(n):
        pred = c
        lim = p if p < t else t
        for i in range(lim):
            pred += ph[i] * xv[t - 1 - i]
        lim = q if q < t else t
        for j in range(lim):
            pred += th[j] * e[t - 1 - j]
        e[t] = xv[t] - pred
    return e_arr


def arma_recurse(eps, phi, theta, double c):
    cdef const double[::1] ev = np.ascontiguousarray(eps, dtype=np.float64)
    cdef const double[::1] ph = np.ascontiguousarray(phi, dtype=np.float64)
    cdef const double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef int n = ev.shape[0]
    cdef int p = ph.shape[0]
    cdef int q = th.shape[0]
    cdef int t, i, j, lim
    cdef double value
    x_arr = np.empty(n)
    cdef double[::1] x = x_arr
    for t in range(n):
        value = c + ev[t]
        lim = p if p < t else t
        for i in range(lim):
            value += ph[i] * x[t - 1 - i]
        lim = q if q < t else t
        for j in range(lim):
            value += th[j] * ev[t - 1 - j]
        x[t] = value
    return x_arr
