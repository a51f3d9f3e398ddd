# cython: language_level=3, boundscheck=False, wraparound=False
"""int64 kernels for exact integer linear algebra.

Every arithmetic step is overflow-checked; on overflow the kernels raise
OverflowError and the caller retries on Python integers.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(i64 a, i64 b, i64 *res) nogil
    bint add_ovf "__builtin_add_overflow"(i64 a, i64 b, i64 *res) nogil
    bint sub_ovf "__builtin_sub_overflow"(i64 a, i64 b, i64 *res) nogil


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def matmul(i64[:, ::1] a, i64[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, t
    cdef i64 acc, prod, x
    out = np.zeros((n, m), dtype=np.int64)
    cdef i64[:, ::1] o = out
    cdef bint bad = 0
    with nogil:
        for i in range(n):
            for t in range(k):
                x = a[i, t]
                if x == 0:
                    continue
                for j in range(m):
                    if b[t, j] == 0:
                        continue
                    if mul_ovf(x, b[t, j], &prod) or add_ovf(o[i, j], prod, &acc):
                        bad = 1
                        break
                    o[i, j] = acc
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 matmul overflow")
    return out


cdef int _combine(i64[:, ::1] a, Py_ssize_t dst, Py_ssize_t src, Py_ssize_t c0, Py_ssize_t c) nogil:
    # a[dst] <- x*a[dst] - y*a[src] with x/y the reduced pivot ratio, then
    # divide a[dst] by the gcd of its entries.
    cdef Py_ssize_t ncols = a.shape[1], j
    cdef i64 x = a[src, c], y = a[dst, c], g, p1, p2, v
    g = _gcd(x, y)
    x = x // g
    y = y // g
    if x < 0:
        x = -x
        y = -y
    g = 0
    for j in range(c0, ncols):
        if mul_ovf(x, a[dst, j], &p1) or mul_ovf(y, a[src, j], &p2) or sub_ovf(p1, p2, &v):
            return 1
        a[dst, j] = v
        if v:
            g = _gcd(g, v)
    if g > 1:
        for j in range(c0, ncols):
            a[dst, j] = a[dst, j] // g
    return 0


def echelon(i64[:, ::1] a):
    """Reduced row echelon form in place; returns (rank, pivot columns).

    Rows are primitive with positive pivots, so the result is the unique
    integer-normalized RREF.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p, k
    cdef i64 tmp, g
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(ncols):
                tmp = a[p, j]
                a[p, j] = a[r, j]
                a[r, j] = tmp
        for i in range(r + 1, nrows):
            if a[i, c] != 0:
                if _combine(a, i, r, c, c):
                    raise OverflowError("int64 elimination overflow")
        pivots.append(c)
        r += 1
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            if a[i, c] != 0:
                if _combine(a, i, k, 0, c):
                    raise OverflowError("int64 elimination overflow")
    for i in range(r):
        g = 0
        for j in range(ncols):
            if a[i, j]:
                g = _gcd(g, a[i, j])
        if a[i, pivots[i]] < 0:
            g = -g
        for j in range(ncols):
            a[i, j] = a[i, j] // g
    return r, pivots
