# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels for power-log term sums.

Same contract as _pykernels: values of sum_i c_i * t**a_i * (1 - ln t)**b_i
on points in (0, 1], plus a fused weighted |f|^p reduction.  Loops run
term-outer / point-inner over precomputed log(t), log(1 - ln t) so the
compiler can vectorize the exp calls.
"""

import numpy as np

from libc.math cimport exp, fabs, log, log1p, pow

NAME = "cython"


cdef void _fill_logs(const double[::1] ts, double[::1] lt, double[::1] llt) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(ts.shape[0]):
        lt[j] = log(ts[j])
        llt[j] = log1p(-lt[j])


def eval_termsum(const double[::1] coeffs, const double[::1] apows,
                 const double[::1] bpows, const double[::1] ts):
    cdef Py_ssize_t n = ts.shape[0]
    cdef Py_ssize_t m = coeffs.shape[0]
    out_arr = np.zeros(n, dtype=np.float64)
    if m == 0 or n == 0:
        return out_arr
    lt_arr = np.empty(n, dtype=np.float64)
    llt_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] lt = lt_arr
    cdef double[::1] llt = llt_arr
    cdef Py_ssize_t i, j
    cdef double a, b, c
    with nogil:
        _fill_logs(ts, lt, llt)
        for i in range(m):
            c = coeffs[i]
            a = apows[i]
            b = bpows[i]
            if b == 0.0:
                for j in range(n):
                    out[j] += c * exp(a * lt[j])
            else:
                for j in range(n):
                    out[j] += c * exp(a * lt[j] + b * llt[j])
    return out_arr


def weighted_abs_pow_sum(const double[::1] coeffs, const double[::1] apows,
                         const double[::1] bpows, const double[::1] ts,
                         const double[::1] ws, double p):
    cdef Py_ssize_t n = ts.shape[0]
    cdef Py_ssize_t m = coeffs.shape[0]
    if m == 0 or n == 0:
        return 0.0
    vals_arr = eval_termsum(coeffs, apows, bpows, ts)
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t j
    cdef double total = 0.0
    with nogil:
        for j in range(n):
            total += ws[j] * pow(fabs(vals[j]), p)
    return total
