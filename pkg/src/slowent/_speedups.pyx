# cython: language_level=3
"""Compiled inner loops for the numeric verification layer.

Mirrors the numpy implementations in slowent.kernels; the accept mask
early-exits per sample once the translated norm passes eta.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def batch_sup(double[:, :, ::1] mats, double[:, ::1] ys):
    """Per sample: max over grid matrices g and rows i of |(mats[g] @ y)[i]|."""
    cdef Py_ssize_t G = mats.shape[0]
    cdef Py_ssize_t n = mats.shape[1]
    cdef Py_ssize_t m = mats.shape[2]
    cdef Py_ssize_t S = ys.shape[0]
    out_arr = np.empty(S, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t s, g, i, j
    cdef double best, acc
    for s in range(S):
        best = 0.0
        for g in range(G):
            for i in range(n):
                acc = 0.0
                for j in range(m):
                    acc += mats[g, i, j] * ys[s, j]
                acc = fabs(acc)
                if acc > best:
                    best = acc
        out[s] = best
    return out_arr


def accept_mask(double[:, :, ::1] mats, double[:, ::1] ys, double eta):
    """Per sample: 1 if the sup over the grid stays <= eta, else 0."""
    cdef Py_ssize_t G = mats.shape[0]
    cdef Py_ssize_t n = mats.shape[1]
    cdef Py_ssize_t m = mats.shape[2]
    cdef Py_ssize_t S = ys.shape[0]
    out_arr = np.empty(S, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t s, g, i, j
    cdef double acc
    cdef bint ok
    for s in range(S):
        ok = True
        for g in range(G):
            for i in range(n):
                acc = 0.0
                for j in range(m):
                    acc += mats[g, i, j] * ys[s, j]
                if fabs(acc) > eta:
                    ok = False
                    break
            if not ok:
                break
        out[s] = 1 if ok else 0
    return out_arr
