# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels, operation-order identical to ``pykernels``.

The i-k-j loop order in matmul_classical accumulates each output element
over ascending k, exactly like the pure lane's dot products, so results are
bitwise equal (the build disables FMA contraction).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt
from libc.stdlib cimport free, malloc


def matmul_classical(double[:, ::1] a, double[:, ::1] b, double[:, ::1] out):
    cdef Py_ssize_t m = a.shape[0], kk = a.shape[1], n = b.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double aik
    with nogil:
        for i in range(m):
            for j in range(n):
                out[i, j] = 0.0
            for k in range(kk):
                aik = a[i, k]
                for j in range(n):
                    out[i, j] = out[i, j] + aik * b[k, j]


def cholesky_lower(double[:, ::1] a, double[:, ::1] l):
    cdef Py_ssize_t d = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double s
    cdef Py_ssize_t fail = -1
    with nogil:
        for j in range(d):
            s = a[j, j]
            for k in range(j):
                s -= l[j, k] * l[j, k]
            if not (s >= 1e-300):
                fail = j
                break
            l[j, j] = sqrt(s)
            for i in range(j + 1, d):
                s = a[i, j]
                for k in range(j):
                    s -= l[i, k] * l[j, k]
                l[i, j] = s / l[j, j]
    return fail


def invert_lower(double[:, ::1] l, double[:, ::1] out):
    cdef Py_ssize_t d = l.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double s
    with nogil:
        for j in range(d):
            out[j, j] = 1.0 / l[j, j]
            for i in range(j + 1, d):
                s = 0.0
                for k in range(j, i):
                    s += l[i, k] * out[k, j]
                out[i, j] = -s / l[i, i]


def lower_cross(double[:, ::1] linv, double[:, ::1] out):
    cdef Py_ssize_t d = linv.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double s
    with nogil:
        for i in range(d):
            for j in range(i, d):
                s = 0.0
                for k in range(j, d):
                    s += linv[k, i] * linv[k, j]
                out[i, j] = s
                out[j, i] = s


def sort_desc(double[::1] values, cnp.int64_t[::1] order):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t lo, mid, hi, i, j, k, width
    cdef long long comps = 0
    cdef cnp.int64_t *src
    cdef cnp.int64_t *dst
    cdef cnp.int64_t *tmp
    if n == 0:
        return 0
    src = <cnp.int64_t *> malloc(n * sizeof(cnp.int64_t))
    dst = <cnp.int64_t *> malloc(n * sizeof(cnp.int64_t))
    if src == NULL or dst == NULL:
        free(src)
        free(dst)
        raise MemoryError()
    with nogil:
        for i in range(n):
            src[i] = i
        width = 1
        while width < n:
            lo = 0
            while lo < n:
                mid = lo + width
                if mid > n:
                    mid = n
                hi = lo + 2 * width
                if hi > n:
                    hi = n
                i = lo
                j = mid
                k = lo
                while i < mid and j < hi:
                    comps += 1
                    if values[src[i]] >= values[src[j]]:
                        dst[k] = src[i]
                        i += 1
                    else:
                        dst[k] = src[j]
                        j += 1
                    k += 1
                while i < mid:
                    dst[k] = src[i]
                    i += 1
                    k += 1
                while j < hi:
                    dst[k] = src[j]
                    j += 1
                    k += 1
                lo = hi
            tmp = src
            src = dst
            dst = tmp
            width *= 2
        for i in range(n):
            order[i] = src[i]
    free(src)
    free(dst)
    return comps
