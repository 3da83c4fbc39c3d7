# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled versions of the hot kernels (see _kernels_py for the contract).

Both backends must return bitwise-identical results: identical products and
sums, first-index tie breaking on every argmax.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def max_mul(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double best, cand
    out_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        for j in range(n):
            best = a[i, 0] * b[0, j]
            for k in range(1, n):
                cand = a[i, k] * b[k, j]
                if cand > best:
                    best = cand
            out[i, j] = best
    return out_arr


def karp_table(const double[:, ::1] w):
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t k, u, v
    cdef double best, cand
    cdef Py_ssize_t arg
    d_arr = np.full((n + 1, n), -np.inf)
    parent_arr = np.zeros((n + 1, n), dtype=np.int64)
    cdef double[:, ::1] d = d_arr
    cdef long long[:, ::1] parent = parent_arr
    d[0, 0] = 0.0
    for k in range(1, n + 1):
        for v in range(n):
            best = d[k - 1, 0] + w[0, v]
            arg = 0
            for u in range(1, n):
                cand = d[k - 1, u] + w[u, v]
                if cand > best:
                    best = cand
                    arg = u
            d[k, v] = best
            parent[k, v] = arg
    return d_arr, parent_arr
