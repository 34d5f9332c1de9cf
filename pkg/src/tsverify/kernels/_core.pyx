# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled backend for the hot kernels.

Mirrors kernels._py operation for operation.  Expression grouping and
accumulation order are deliberately identical to the numpy routines so
both backends produce bit-identical doubles; the build disables
floating-point contraction for the same reason.
"""

import numpy as np


def forward_diff3(const double[:, :, ::1] F):
    """Third-order forward difference; see kernels._py.forward_diff3."""
    cdef Py_ssize_t m1 = F.shape[0] - 1
    cdef Py_ssize_t m2 = F.shape[1] - 1
    cdef Py_ssize_t m3 = F.shape[2] - 1
    out = np.empty((m1, m2, m3))
    cdef double[:, :, ::1] W = out
    cdef Py_ssize_t i, j, k
    for i in range(m1):
        for j in range(m2):
            for k in range(m3):
                # same left-to-right chain as the numpy expression
                W[i, j, k] = (
                    F[i + 1, j + 1, k + 1]
                    - F[i, j + 1, k + 1]
                    - F[i + 1, j, k + 1]
                    - F[i + 1, j + 1, k]
                    + F[i, j, k + 1]
                    + F[i, j + 1, k]
                    + F[i + 1, j, k]
                    - F[i, j, k]
                )
    return out


def prefix_sum3(const double[:, :, ::1] W):
    """Zero-padded inclusive prefix sums; see kernels._py.prefix_sum3."""
    cdef Py_ssize_t m1 = W.shape[0]
    cdef Py_ssize_t m2 = W.shape[1]
    cdef Py_ssize_t m3 = W.shape[2]
    out = np.zeros((m1 + 1, m2 + 1, m3 + 1))
    cdef double[:, :, ::1] P = out
    cdef Py_ssize_t i, j, k
    for i in range(m1):
        for j in range(m2):
            for k in range(m3):
                P[i + 1, j + 1, k + 1] = W[i, j, k]
    # sequential running sums per axis, matching cumsum(0).cumsum(1).cumsum(2)
    for i in range(2, m1 + 1):
        for j in range(1, m2 + 1):
            for k in range(1, m3 + 1):
                P[i, j, k] = P[i - 1, j, k] + P[i, j, k]
    for j in range(2, m2 + 1):
        for i in range(1, m1 + 1):
            for k in range(1, m3 + 1):
                P[i, j, k] = P[i, j - 1, k] + P[i, j, k]
    for k in range(2, m3 + 1):
        for i in range(1, m1 + 1):
            for j in range(1, m2 + 1):
                P[i, j, k] = P[i, j, k - 1] + P[i, j, k]
    return out


def octant_sums(const double[:, :, ::1] P, Py_ssize_t s1, Py_ssize_t s2, Py_ssize_t s3):
    """Octant box sums at all admissible points; see kernels._py.octant_sums."""
    cdef Py_ssize_t n1 = P.shape[0]
    cdef Py_ssize_t n2 = P.shape[1]
    cdef Py_ssize_t n3 = P.shape[2]
    out = np.empty((8, n1 - s1, n2 - s2, n3 - s3))
    cdef double[:, :, :, ::1] O = out
    cdef Py_ssize_t idx, h1, h2, h3, p1, p2, p3
    cdef Py_ssize_t lo1, hi1, lo2, hi2, lo3, hi3
    cdef double t111, t011, t101, t001, t110, t010, t100, t000
    for idx in range(8):
        h1 = (idx >> 2) & 1
        h2 = (idx >> 1) & 1
        h3 = idx & 1
        for p1 in range(s1, n1):
            if h1:
                lo1 = p1
                hi1 = n1 - 1
            else:
                lo1 = s1
                hi1 = p1
            for p2 in range(s2, n2):
                if h2:
                    lo2 = p2
                    hi2 = n2 - 1
                else:
                    lo2 = s2
                    hi2 = p2
                for p3 in range(s3, n3):
                    if h3:
                        lo3 = p3
                        hi3 = n3 - 1
                    else:
                        lo3 = s3
                        hi3 = p3
                    t111 = P[hi1, hi2, hi3]
                    t011 = P[lo1, hi2, hi3]
                    t101 = P[hi1, lo2, hi3]
                    t001 = P[lo1, lo2, hi3]
                    t110 = P[hi1, hi2, lo3]
                    t010 = P[lo1, hi2, lo3]
                    t100 = P[hi1, lo2, lo3]
                    t000 = P[lo1, lo2, lo3]
                    O[idx, p1 - s1, p2 - s2, p3 - s3] = (
                        (t111 - t011) - (t101 - t001)
                    ) - ((t110 - t010) - (t100 - t000))
    return out
