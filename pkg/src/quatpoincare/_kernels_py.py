"""Pure-Python counterparts of the compiled kernels, on Python integers."""
from math import gcd

import numpy as np


def matmul(a, b):
    return np.dot(a.astype(object), b.astype(object))


def _combine(dst, src, c):
    x, y = src[c], dst[c]
    g = gcd(x, y)
    x, y = x // g, y // g
    if x < 0:
        x, y = -x, -y
    out = {j: x * v for j, v in dst.items()}
    for j, v in src.items():
        w = out.get(j, 0) - y * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    g = gcd(*out.values()) if out else 0
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def echelon(rows, ncols):
    """RREF of sparse integer rows (dicts column -> int).

    Returns (rows, pivots) with primitive rows and positive pivots; the
    output coincides with the compiled kernel on the same input.
    """
    rest = [dict(r) for r in rows if r]
    done = []
    pivots = []
    for c in range(ncols):
        if not rest:
            break
        p = next((i for i, r in enumerate(rest) if c in r), None)
        if p is None:
            continue
        prow = rest.pop(p)
        nxt = []
        for r in rest:
            if c in r:
                r = _combine(r, prow, c)
            if r:
                nxt.append(r)
        rest = nxt
        done.append(prow)
        pivots.append(c)
    for k in range(len(done) - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            if c in done[i]:
                done[i] = _combine(done[i], done[k], c)
    out = []
    for r, c in zip(done, pivots):
        g = gcd(*r.values())
        if r[c] < 0:
            g = -g
        out.append({j: v // g for j, v in r.items()})
    return out, pivots
