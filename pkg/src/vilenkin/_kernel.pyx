# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled radix-p butterfly for the p-ary tensor character transform."""

from libc.math cimport cos, sin, M_PI

import numpy as np
cimport numpy as cnp

cnp.import_array()


def tensor_dft(double complex[::1] a, int p, int n, int sign):
    """In-place unnormalized p-point DFT along each of the ``n`` digit axes.

    ``sign = -1`` uses the kernel ``exp(-2 pi i jk/p)``, ``+1`` its conjugate.
    """
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t stride = 1, span, blk, start, off, base
    cdef int stage, q, k
    cdef double complex u, v, s
    cdef double complex[::1] w = np.empty(p, dtype=np.complex128)
    cdef double complex[::1] tmp = np.empty(p, dtype=np.complex128)

    for k in range(p):
        w[k] = cos(2.0 * M_PI * k / p) + 1j * sign * sin(2.0 * M_PI * k / p)
    w[0] = 1.0
    if p % 2 == 0:
        w[p // 2] = -1.0

    with nogil:
        for stage in range(n):
            span = stride * p
            if p == 2:
                for blk in range(m // span):
                    start = blk * span
                    for off in range(stride):
                        base = start + off
                        u = a[base]
                        v = a[base + stride]
                        a[base] = u + v
                        a[base + stride] = u - v
            else:
                for blk in range(m // span):
                    start = blk * span
                    for off in range(stride):
                        base = start + off
                        for k in range(p):
                            tmp[k] = a[base + k * stride]
                        for q in range(p):
                            s = tmp[0]
                            for k in range(1, p):
                                s = s + tmp[k] * w[(q * k) % p]
                            a[base + q * stride] = s
            stride = span
