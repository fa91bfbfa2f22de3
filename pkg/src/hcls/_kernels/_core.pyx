# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise kernels: the O(n^2) inner loops of inference.

Semantics match hcls._kernels._numpy_impl exactly (up to floating-point
summation order); the parity test in tests/test_kernels.py pins this.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cosh, exp, fabs, hypot, isfinite, log1p, sin, sinh, sqrt

cnp.import_array()


cdef inline double _sigmoid(double x) nogil:
    cdef double e
    if x >= 0.0:
        return 1.0 / (1.0 + exp(-x))
    e = exp(x)
    return e / (1.0 + e)


cdef inline double _softplus(double x) nogil:
    if x > 0.0:
        return x + log1p(exp(-x))
    return log1p(exp(x))


def hyp_pairwise_distances(cnp.ndarray[cnp.float64_t, ndim=1] r,
                           cnp.ndarray[cnp.float64_t, ndim=1] theta):
    """Condensed hyperbolic distances from native polar coordinates."""
    cdef Py_ssize_t n = r.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n * (n - 1) // 2)
    cdef double[::1] rv = r
    cdef double[::1] tv = theta
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, k = 0
    cdef double sh, s2, x
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                sh = sinh(0.5 * (rv[i] - rv[j]))
                s2 = sin(0.5 * (tv[i] - tv[j]))
                s2 = s2 * s2
                x = 2.0 * (sh * sh + sinh(rv[i]) * sinh(rv[j]) * s2)
                ov[k] = log1p(x + sqrt(x * (x + 2.0)))
                k += 1
    return out


def euc_pairwise_distances(cnp.ndarray[cnp.float64_t, ndim=2] xy):
    """Condensed Euclidean distances for an (n, 2) coordinate array."""
    cdef Py_ssize_t n = xy.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n * (n - 1) // 2)
    cdef double[:, ::1] pv = np.ascontiguousarray(xy)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, k = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                ov[k] = hypot(pv[i, 0] - pv[j, 0], pv[i, 1] - pv[j, 1])
                k += 1
    return out


def hyp_loglik_grads(cnp.ndarray[cnp.float64_t, ndim=1] r,
                     cnp.ndarray[cnp.float64_t, ndim=1] theta,
                     cnp.ndarray[cnp.uint8_t, ndim=2] adj,
                     double alpha, double T):
    """Bernoulli log-likelihood and gradients under the distance link.

    Returns (ll, d_r, d_theta, d_alpha, d_T); ll is -inf with zero
    gradients when any pairwise term overflows.
    """
    cdef Py_ssize_t n = r.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] g_r = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] g_theta = np.zeros(n)
    cdef double[::1] rv = r
    cdef double[::1] tv = theta
    cdef cnp.uint8_t[:, ::1] av = np.ascontiguousarray(adj)
    cdef double[::1] grv = g_r
    cdef double[::1] gtv = g_theta
    cdef double ll = 0.0, g_alpha = 0.0, g_T = 0.0
    cdef double inv2T = 1.0 / (2.0 * T)
    cdef Py_ssize_t i, j
    cdef int bad = 0
    cdef double dr, sh, shi, shj, chi, chj, dth, s, s2, x, den, d
    cdef double eta, w, dll_dd, inv, sinh_dr, gth
    with nogil:
        for i in range(n):
            shi = sinh(rv[i])
            chi = cosh(rv[i])
            for j in range(i + 1, n):
                dr = rv[i] - rv[j]
                sh = sinh(0.5 * dr)
                shj = sinh(rv[j])
                chj = cosh(rv[j])
                dth = tv[i] - tv[j]
                s = sin(0.5 * dth)
                s2 = s * s
                x = 2.0 * (sh * sh + shi * shj * s2)
                if not isfinite(x):
                    bad = 1
                    break
                den = sqrt(x * (x + 2.0))
                d = log1p(x + den)
                eta = (alpha - d) * inv2T
                w = av[i, j]
                ll += w * eta - _softplus(eta)
                w = w - _sigmoid(eta)
                dll_dd = -w * inv2T
                if den < 1e-12:
                    den = 1e-12
                inv = 1.0 / den
                sinh_dr = sinh(dr)
                grv[i] += dll_dd * (sinh_dr + 2.0 * chi * shj * s2) * inv
                grv[j] += dll_dd * (-sinh_dr + 2.0 * shi * chj * s2) * inv
                gth = dll_dd * (shi * shj * sin(dth)) * inv
                gtv[i] += gth
                gtv[j] -= gth
                g_alpha += w * inv2T
                g_T += -w * eta / T
            if bad:
                break
    if bad or not isfinite(ll):
        return -np.inf, np.zeros(n), np.zeros(n), 0.0, 0.0
    return ll, g_r, g_theta, g_alpha, g_T


def euc_loglik_grads(cnp.ndarray[cnp.float64_t, ndim=2] xy,
                     cnp.ndarray[cnp.uint8_t, ndim=2] adj,
                     double alpha, double T):
    """Euclidean counterpart of hyp_loglik_grads; xy is (n, 2)."""
    cdef Py_ssize_t n = xy.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] g_xy = np.zeros((n, 2))
    cdef double[:, ::1] pv = np.ascontiguousarray(xy)
    cdef cnp.uint8_t[:, ::1] av = np.ascontiguousarray(adj)
    cdef double[:, ::1] gv = g_xy
    cdef double ll = 0.0, g_alpha = 0.0, g_T = 0.0
    cdef double inv2T = 1.0 / (2.0 * T)
    cdef Py_ssize_t i, j
    cdef int bad = 0
    cdef double dx, dy, d, eta, w, dll_dd, gx, gy, dsafe
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                dx = pv[i, 0] - pv[j, 0]
                dy = pv[i, 1] - pv[j, 1]
                d = hypot(dx, dy)
                if not isfinite(d):
                    bad = 1
                    break
                eta = (alpha - d) * inv2T
                w = av[i, j]
                ll += w * eta - _softplus(eta)
                w = w - _sigmoid(eta)
                dll_dd = -w * inv2T
                dsafe = d if d > 1e-12 else 1e-12
                gx = dll_dd * dx / dsafe
                gy = dll_dd * dy / dsafe
                gv[i, 0] += gx
                gv[i, 1] += gy
                gv[j, 0] -= gx
                gv[j, 1] -= gy
                g_alpha += w * inv2T
                g_T += -w * eta / T
            if bad:
                break
    if bad or not isfinite(ll):
        return -np.inf, np.zeros((n, 2)), 0.0, 0.0
    return ll, g_xy, g_alpha, g_T
