# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled normalized Legendre and generalized Laguerre tables.

Same signatures and results as the numpy fallback in ``_kernels_py``.
Recurrence coefficients are computed once per degree and the inner loops
run over contiguous point rows.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, M_PI

cnp.import_array()


def legendre_table(int lmax, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    if lmax < 0:
        raise ValueError("lmax must be nonnegative")
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] out = np.zeros((lmax + 1, lmax + 1, n))
    cdef double[:, :, ::1] o = out
    cdef double[::1] xv = xs
    cdef double[::1] st = np.empty(n)
    cdef double[::1] pmm = np.empty(n)
    cdef Py_ssize_t i
    cdef int l, m
    cdef double t, c, a, b
    for i in range(n):
        t = 1.0 - xv[i] * xv[i]
        st[i] = sqrt(t) if t > 0.0 else 0.0
        pmm[i] = 0.5 / sqrt(M_PI)
    for m in range(lmax + 1):
        if m > 0:
            c = sqrt((2.0 * m + 1.0) / (2.0 * m))
            for i in range(n):
                pmm[i] = pmm[i] * c * st[i]
        for i in range(n):
            o[m, m, i] = pmm[i]
        if m + 1 > lmax:
            continue
        c = sqrt(2.0 * m + 3.0)
        for i in range(n):
            o[m + 1, m, i] = c * xv[i] * pmm[i]
        for l in range(m + 2, lmax + 1):
            a = sqrt((4.0 * l * l - 1.0) / (<double>l * l - <double>m * m))
            b = sqrt(((l - 1.0) * (l - 1.0) - <double>m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0))
            for i in range(n):
                o[l, m, i] = a * (xv[i] * o[l - 1, m, i] - b * o[l - 2, m, i])
    return out


def laguerre_table(int pmax, double alpha, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t n = xs.shape[0]
    if pmax < 0:
        return np.zeros((0, n))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((pmax + 1, n))
    cdef double[:, ::1] o = out
    cdef double[::1] xv = xs
    cdef Py_ssize_t i
    cdef int k
    cdef double c1, c2, d
    for i in range(n):
        o[0, i] = 1.0
    if pmax >= 1:
        for i in range(n):
            o[1, i] = 1.0 + alpha - xv[i]
    for k in range(1, pmax):
        c1 = 2.0 * k + 1.0 + alpha
        c2 = k + alpha
        d = k + 1.0
        for i in range(n):
            o[k + 1, i] = ((c1 - xv[i]) * o[k, i] - c2 * o[k - 1, i]) / d
    return out
