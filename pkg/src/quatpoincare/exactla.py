"""Exact linear algebra over Q and Q(i).

Matrices are stored as an integer numerator array over one positive common
denominator.  The integer kernels come from the compiled extension when it
is importable and from :mod:`._kernels_py` otherwise.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels_py
from .errors import NotSymmetric

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
if os.environ.get("QUATPOINCARE_PURE"):
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

Rational = Fraction


def use_backend(name: str) -> str:
    """Switch kernels at runtime ("compiled" or "python"); returns the old name."""
    global _compiled, BACKEND
    old = BACKEND
    if name == "python":
        _compiled = None
    elif name == "compiled":
        from . import _kernels as mod
        _compiled = mod
    else:
        raise ValueError(name)
    BACKEND = name
    return old


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def fmt_rational(x) -> str:
    x = frac(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- kernels

def _int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if _compiled is not None:
        try:
            a64 = np.ascontiguousarray(a.astype(np.int64))
            b64 = np.ascontiguousarray(b.astype(np.int64))
            return _compiled.matmul(a64, b64).astype(object)
        except OverflowError:
            pass
    return _kernels_py.matmul(a, b)


# largest row-by-column product the compiled kernel densifies (int64 entries)
DENSE_LIMIT = 25_000_000


def echelon_rows(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Integer RREF of sparse rows (dict column -> int)."""
    rows = [r for r in rows if r]
    if _compiled is not None and rows and len(rows) * ncols <= DENSE_LIMIT:
        try:
            a = np.zeros((len(rows), ncols), dtype=np.int64)
            for i, r in enumerate(rows):
                for j, v in r.items():
                    a[i, j] = v
            rank, piv = _compiled.echelon(a)
            out = []
            for i in range(rank):
                nz = np.nonzero(a[i])[0]
                out.append({int(j): int(a[i, j]) for j in nz})
            return out, list(piv)
        except OverflowError:
            pass
    return _kernels_py.echelon(rows, ncols)


# ---------------------------------------------------------------- scalars

@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", frac(self.re))
        object.__setattr__(self, "im", frac(self.im))

    @staticmethod
    def coerce(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(frac(x))

    def __add__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.coerce(o))

    def __rsub__(self, o):
        return GaussianRational.coerce(o) - self

    def __mul__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = GaussianRational.coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        q = self * o.conjugate()
        return GaussianRational(q.re / n, q.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if not isinstance(o, GaussianRational):
            try:
                o = GaussianRational.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{fmt_rational(self.re)}{sign}{fmt_rational(abs(self.im))}i"


I = GaussianRational(0, 1)


# ---------------------------------------------------------------- matrices

def _normalize(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    if den < 0:
        num, den = -num, -den
    g = gcd(den, *num.ravel().tolist())
    if g > 1:
        num = num // g
        den //= g
    return num, den


class QMatrix:
    """Rational matrix: integer numerators over a common denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1, normalized: bool = False):
        num = np.asarray(num, dtype=object)
        if num.ndim != 2:
            num = num.reshape(num.shape[0] if num.ndim else 0, -1)
        if not normalized:
            num, den = _normalize(num, int(den))
        self.num = num
        self.den = den

    # construction
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "QMatrix":
        rows = [[frac(x) for x in r] for r in rows]
        if not rows:
            return cls.zeros(0, ncols or 0)
        den = lcm(*(x.denominator for r in rows for x in r)) if rows[0] else 1
        num = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                num[i, j] = x.numerator * (den // x.denominator)
        return cls(num, den)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "QMatrix":
        if not cols:
            return cls.zeros(nrows, 0)
        return cls.from_rows(cols).T

    @classmethod
    def from_dict(cls, entries: dict, shape: tuple[int, int]) -> "QMatrix":
        den = lcm(1, *(frac(v).denominator for v in entries.values()))
        num = np.zeros(shape, dtype=object)
        for (i, j), v in entries.items():
            v = frac(v)
            num[i, j] += v.numerator * (den // v.denominator)
        return cls(num, den)

    @classmethod
    def zeros(cls, r: int, c: int) -> "QMatrix":
        return cls(np.zeros((r, c), dtype=object), 1, normalized=True)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        num = np.zeros((n, n), dtype=object)
        for i in range(n):
            num[i, i] = 1
        return cls(num, 1, normalized=True)

    @classmethod
    def diag(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        return cls.from_dict({(i, i): e for i, e in enumerate(entries)}, (n, n))

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def __getitem__(self, key):
        if isinstance(key, tuple) and all(isinstance(k, (int, np.integer)) for k in key):
            return Fraction(self.num[key], self.den)
        sub = self.num[key]
        if sub.ndim == 1:
            sub = sub.reshape(1, -1) if isinstance(key, tuple) and isinstance(key[0], (int, np.integer)) else sub.reshape(-1, 1)
        return QMatrix(sub, self.den)

    def column(self, j: int) -> list[Fraction]:
        return [Fraction(v, self.den) for v in self.num[:, j].tolist()]

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(v, self.den) for v in row] for row in self.num.tolist()]

    def entries(self) -> dict:
        nz = np.nonzero(self.num != 0)
        return {(int(i), int(j)): Fraction(self.num[i, j], self.den) for i, j in zip(*nz)}

    # arithmetic
    def _align(self, other: "QMatrix"):
        l = lcm(self.den, other.den)
        return self.num * (l // self.den), other.num * (l // other.den), l

    def __add__(self, other: "QMatrix") -> "QMatrix":
        a, b, l = self._align(other)
        return QMatrix(a + b, l)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        a, b, l = self._align(other)
        return QMatrix(a - b, l)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.num, self.den, normalized=True)

    def scale(self, c) -> "QMatrix":
        c = frac(c)
        return QMatrix(self.num * c.numerator, self.den * c.denominator)

    def __mul__(self, c) -> "QMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if 0 in self.shape or 0 in other.shape:
            return QMatrix.zeros(self.shape[0], other.shape[1])
        return QMatrix(_int_matmul(self.num, other.num), self.den * other.den)

    @property
    def T(self) -> "QMatrix":
        return QMatrix(self.num.T.copy(), self.den, normalized=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.den == other.den
                and bool(np.all(self.num == other.num)))

    __hash__ = None

    def is_zero(self) -> bool:
        return not bool(np.any(self.num != 0))

    def trace(self) -> Fraction:
        return Fraction(sum(self.num[i, i] for i in range(min(self.shape))), self.den)

    def max_abs(self) -> Fraction:
        return Fraction(max((abs(v) for v in self.num.ravel().tolist()), default=0), self.den)

    def commutator(self, other: "QMatrix", sign: int = 1) -> "QMatrix":
        """self*other - sign*other*self."""
        return self @ other - (other @ self).scale(sign)

    def __repr__(self):
        return f"QMatrix({self.tolist()})"


def kron(a: QMatrix, b: QMatrix) -> QMatrix:
    ra, ca = a.shape
    rb, cb = b.shape
    num = np.empty((ra * rb, ca * cb), dtype=object)
    for i in range(ra):
        for j in range(ca):
            num[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = a.num[i, j] * b.num
    return QMatrix(num, a.den * b.den)


def hstack(mats: Sequence[QMatrix]) -> QMatrix:
    l = lcm(*(m.den for m in mats))
    return QMatrix(np.hstack([m.num * (l // m.den) for m in mats]), l)


def vstack(mats: Sequence[QMatrix]) -> QMatrix:
    l = lcm(*(m.den for m in mats))
    return QMatrix(np.vstack([m.num * (l // m.den) for m in mats]), l)


def block_diag(mats: Sequence[QMatrix]) -> QMatrix:
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    l = lcm(1, *(m.den for m in mats))
    num = np.zeros((r, c), dtype=object)
    i = j = 0
    for m in mats:
        num[i:i + m.shape[0], j:j + m.shape[1]] = m.num * (l // m.den)
        i += m.shape[0]
        j += m.shape[1]
    return QMatrix(num, l)


# ---------------------------------------------------------------- elimination

def _sparse_rows(a: QMatrix) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if v} for row in a.num.tolist()]


def rref(a: QMatrix) -> tuple[list[dict], list[int]]:
    return echelon_rows(_sparse_rows(a), a.shape[1])


def rank(a: QMatrix) -> int:
    return len(rref(a)[1])


def nullspace_from_rows(rows: list[dict], ncols: int) -> QMatrix:
    """Nullspace basis (as columns) of the system given by sparse integer rows.

    One basis vector per free column, with a 1 in that column: the basis is
    determined by the reduced echelon form alone.
    """
    red, piv = echelon_rows(rows, ncols)
    pivset = set(piv)
    free = [f for f in range(ncols) if f not in pivset]
    cols = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in zip(red, piv):
            if f in r:
                v[c] = Fraction(-r[f], r[c])
        cols.append(v)
    return QMatrix.from_columns(cols, ncols)


def nullspace(a: QMatrix) -> QMatrix:
    """Right nullspace basis of ``a`` as the columns of a matrix."""
    return nullspace_from_rows(_sparse_rows(a), a.shape[1])


def solve(a: QMatrix, b: QMatrix) -> QMatrix | None:
    """A particular solution X of a X = b (free variables zero), or None."""
    n = a.shape[1]
    aug = hstack([a, b])
    red, piv = rref(aug)
    if piv and piv[-1] >= n:
        return None
    sol = {}
    for r, c in zip(red, piv):
        for j in range(b.shape[1]):
            v = r.get(n + j, 0)
            if v:
                sol[(c, j)] = Fraction(v, r[c])
    return QMatrix.from_dict(sol, (n, b.shape[1]))


def inverse(a: QMatrix) -> QMatrix:
    n = a.shape[0]
    x = solve(a, QMatrix.identity(n))
    if x is None or rank(a) != n:
        raise ZeroDivisionError("singular matrix")
    return x


def same_column_span(a: QMatrix, b: QMatrix) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(hstack([a, b])) == ra


def in_column_span(a: QMatrix, v: QMatrix) -> bool:
    return rank(hstack([a, v])) == rank(a)


def solve_proportionality(x: QMatrix, y: QMatrix) -> Fraction | None:
    """The unique c with x == c*y, or None when no such c exists (y != 0)."""
    if y.is_zero():
        return Fraction(0) if x.is_zero() else None
    nz = np.nonzero(y.num != 0)
    i, j = int(nz[0][0]), int(nz[1][0])
    c = x[i, j] / y[i, j]
    return c if x == y.scale(c) else None


# ---------------------------------------------------------------- inertia

@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)


def is_symmetric(a: QMatrix) -> bool:
    return a.shape[0] == a.shape[1] and a == a.T


def inertia(a: QMatrix) -> Inertia:
    """Sylvester inertia by symmetric LDL^T with 1x1 and 2x2 pivots over Q."""
    if not is_symmetric(a):
        raise NotSymmetric("inertia needs a symmetric matrix")
    m = a.tolist()
    n = len(m)
    idx = list(range(n))
    plus = minus = 0
    while idx:
        k = next((i for i in idx if m[i][i] != 0), None)
        if k is not None:
            d = m[k][k]
            plus += d > 0
            minus += d < 0
            idx.remove(k)
            for i in idx:
                f = m[i][k] / d
                if f:
                    for j in idx:
                        m[i][j] -= f * m[k][j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and m[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        # 2x2 pivot [[0, c], [c, 0]] has one positive and one negative eigenvalue
        c = m[i0][j0]
        plus += 1
        minus += 1
        idx.remove(i0)
        idx.remove(j0)
        for i in idx:
            # solve [[0,c],[c,0]] [f0, f1]^T = [m[i][i0], m[i][j0]]^T
            f0 = m[i][j0] / c
            f1 = m[i][i0] / c
            if f0 or f1:
                for j in idx:
                    m[i][j] -= f0 * m[i0][j] + f1 * m[j0][j]
    return Inertia(plus, minus, n - plus - minus)


# ---------------------------------------------------------------- Q(i)

class GMatrix:
    """Matrix over Q(i) as a pair of rational matrices."""

    __slots__ = ("re", "im")

    def __init__(self, re: QMatrix, im: QMatrix | None = None):
        self.re = re
        self.im = im if im is not None else QMatrix.zeros(*re.shape)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[GaussianRational]], nrows: int) -> "GMatrix":
        re = QMatrix.from_columns([[GaussianRational.coerce(x).re for x in c] for c in cols], nrows)
        im = QMatrix.from_columns([[GaussianRational.coerce(x).im for x in c] for c in cols], nrows)
        return cls(re, im)

    @property
    def shape(self):
        return self.re.shape

    def __getitem__(self, key):
        if isinstance(key, tuple) and all(isinstance(k, int) for k in key):
            return GaussianRational(self.re[key], self.im[key])
        return GMatrix(self.re[key], self.im[key])

    def __add__(self, o: "GMatrix") -> "GMatrix":
        return GMatrix(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "GMatrix") -> "GMatrix":
        return GMatrix(self.re - o.re, self.im - o.im)

    def __matmul__(self, o: "GMatrix") -> "GMatrix":
        return GMatrix(self.re @ o.re - self.im @ o.im, self.re @ o.im + self.im @ o.re)

    def scale(self, z) -> "GMatrix":
        z = GaussianRational.coerce(z)
        return GMatrix(self.re.scale(z.re) - self.im.scale(z.im),
                       self.re.scale(z.im) + self.im.scale(z.re))

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def realify(self) -> QMatrix:
        return vstack([hstack([self.re, -self.im]), hstack([self.im, self.re])])

    def column(self, j: int) -> list[GaussianRational]:
        return [GaussianRational(a, b) for a, b in zip(self.re.column(j), self.im.column(j))]


def ghstack(mats: Sequence[GMatrix]) -> GMatrix:
    return GMatrix(hstack([m.re for m in mats]), hstack([m.im for m in mats]))


def grank(a: GMatrix) -> int:
    """Rank over Q(i): half the rank of the realification."""
    return rank(a.realify()) // 2


def gsolve(a: GMatrix, b: GMatrix) -> GMatrix | None:
    n = a.shape[1]
    rb = vstack([b.re, b.im])
    x = solve(a.realify(), rb)
    if x is None:
        return None
    return GMatrix(x[:n, :], x[n:, :])


def g_in_column_span(a: GMatrix, v: GMatrix) -> bool:
    return grank(ghstack([a, v])) == grank(a)


def vec(entries: Iterable) -> QMatrix:
    """Column vector."""
    return QMatrix.from_rows([[x] for x in entries], 1)
