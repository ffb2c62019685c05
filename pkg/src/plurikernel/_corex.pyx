# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched defining-function evaluation and Horner
evaluation of truncated power series.  Mirrors `_core_py`."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline double ipow(double x, long p) noexcept nogil:
    cdef double out = 1.0
    cdef long k
    for k in range(p):
        out *= x
    return out


def eval_r_grad(z, a, double eps, bump_coefs, bump_pows):
    """Batched r(z) and holomorphic gradient; see `_core_py.eval_r_grad`."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] bc = np.ascontiguousarray(bump_coefs, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] bp = np.ascontiguousarray(bump_pows, dtype=np.int64)
    cdef Py_ssize_t b = zz.shape[0], n = zz.shape[1], t = bp.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r = np.empty(b, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] g = np.empty((b, n), dtype=np.complex128)
    cdef Py_ssize_t i, j, k, ax
    cdef double acc, x, y, mono, part_re, part_im, fac
    cdef double complex zij
    with nogil:
        for i in range(b):
            acc = -1.0
            for j in range(n):
                zij = zz[i, j]
                acc += aa[j] * (zij.real * zij.real + zij.imag * zij.imag)
                g[i, j] = aa[j] * zij.conjugate()
            r[i] = acc
    if eps != 0.0 and t > 0:
        xy = np.empty((b, 2 * n), dtype=np.float64)
        xy[:, 0::2] = zz.real
        xy[:, 1::2] = zz.imag
        _bump_accumulate(xy, eps, bc, bp, r, g)
    return r, g


cdef void _bump_accumulate(cnp.ndarray[cnp.float64_t, ndim=2] xy,
                           double eps,
                           cnp.ndarray[cnp.float64_t, ndim=1] bc,
                           cnp.ndarray[cnp.int64_t, ndim=2] bp,
                           cnp.ndarray[cnp.float64_t, ndim=1] r,
                           cnp.ndarray[cnp.complex128_t, ndim=2] g):
    cdef Py_ssize_t b = xy.shape[0], m = xy.shape[1], t = bp.shape[0]
    cdef Py_ssize_t i, k, ax, j
    cdef double mono, part
    cdef long p
    with nogil:
        for i in range(b):
            for k in range(t):
                mono = bc[k]
                for ax in range(m):
                    mono *= ipow(xy[i, ax], bp[k, ax])
                r[i] += eps * mono
                for ax in range(m):
                    p = bp[k, ax]
                    if p == 0:
                        continue
                    part = bc[k] * p * ipow(xy[i, ax], p - 1)
                    for j in range(m):
                        if j != ax:
                            part *= ipow(xy[i, j], bp[k, j])
                    j = ax // 2
                    if ax % 2 == 0:
                        g[i, j].real += eps * 0.5 * part
                    else:
                        g[i, j].imag -= eps * 0.5 * part


def eval_disc_batch(coeffs, zs):
    """Horner evaluation; see `_core_py.eval_disc_batch`."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] cc = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t n = cc.shape[0], kk = cc.shape[1], b = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((b, n), dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    cdef double complex acc, zi
    with nogil:
        for i in range(b):
            zi = zz[i]
            for j in range(n):
                acc = 0.0
                for k in range(kk - 1, -1, -1):
                    acc = acc * zi + cc[j, k]
                out[i, j] = acc
    return out
