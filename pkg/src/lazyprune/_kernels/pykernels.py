"""Pure-Python reference kernels.

These are the fallback lane used when the compiled extension is missing.
Each routine performs scalar IEEE-754 double operations in exactly the same
order as its compiled twin in ``ckernels.pyx``, so the two lanes produce
bitwise-identical results (the extension is built with FMA contraction
disabled for the same reason).  Do not "optimize" the loops into numpy
reductions: that changes summation order.
"""

from __future__ import annotations

import math

import numpy as np


def matmul_classical(a: np.ndarray, b: np.ndarray, out: np.ndarray) -> None:
    """out = a @ b by the classical triple loop, k ascending per element."""
    m, kk = a.shape
    n = b.shape[1]
    al = a.tolist()
    bl = b.tolist()
    rows = []
    for i in range(m):
        ai = al[i]
        row = []
        for j in range(n):
            s = 0.0
            for k in range(kk):
                s += ai[k] * bl[k][j]
            row.append(s)
        rows.append(row)
    out[:, :] = rows


def cholesky_lower(a: np.ndarray, l: np.ndarray) -> int:
    """Fill l with the lower Cholesky factor of a.

    Returns -1 on success, or the failing pivot index when a pivot is
    non-positive or below 1e-300.  On failure l is unspecified.
    """
    d = a.shape[0]
    al = a.tolist()
    ll = [[0.0] * d for _ in range(d)]
    for j in range(d):
        s = al[j][j]
        lj = ll[j]
        for k in range(j):
            s -= lj[k] * lj[k]
        if not (s >= 1e-300):
            return j
        lj[j] = math.sqrt(s)
        for i in range(j + 1, d):
            li = ll[i]
            s = al[i][j]
            for k in range(j):
                s -= li[k] * lj[k]
            li[j] = s / lj[j]
    l[:, :] = ll
    return -1


def invert_lower(l: np.ndarray, out: np.ndarray) -> None:
    """out = inverse of the lower-triangular matrix l (also lower-triangular)."""
    d = l.shape[0]
    ll = l.tolist()
    inv = [[0.0] * d for _ in range(d)]
    for j in range(d):
        inv[j][j] = 1.0 / ll[j][j]
        for i in range(j + 1, d):
            li = ll[i]
            s = 0.0
            for k in range(j, i):
                s += li[k] * inv[k][j]
            inv[i][j] = -s / li[i]
    out[:, :] = inv


def lower_cross(linv: np.ndarray, out: np.ndarray) -> None:
    """out = linv^T @ linv for lower-triangular linv, filled symmetrically.

    Entry (i, j) with i <= j only needs k >= j; the mirror entry is copied,
    so the result is bitwise symmetric.
    """
    d = linv.shape[0]
    ml = linv.tolist()
    res = [[0.0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            s = 0.0
            for k in range(j, d):
                mk = ml[k]
                s += mk[i] * mk[j]
            res[i][j] = s
            res[j][i] = s
    out[:, :] = res


def sort_desc(values: np.ndarray, order: np.ndarray) -> int:
    """Fill order with indices sorting values descending, ties by index.

    Bottom-up stable merge sort; returns the number of element comparisons
    performed (deterministic for a given input).
    """
    n = values.shape[0]
    vals = values.tolist()
    src = list(range(n))
    dst = [0] * n
    comps = 0
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                comps += 1
                if vals[src[i]] >= vals[src[j]]:
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
        src, dst = dst, src
        width *= 2
    if n:
        order[:] = src
    return comps
