"""Twistor space of the homogeneous quaternionic space as a complex
homogeneous space G/H with a holomorphic horizontal distribution.

z = R e1^e2 + R e1^e3 + m carries the complex structure with
e1^e2 -> e1^e3 and J_1 on m; h = (R e2^e3 + o(E'))^C + z^{0,1}.
Complex vectors of g^C are dicts basis index -> GaussianRational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ClosureViolation
from .exactla import I, GaussianRational, QMatrix, grank, GMatrix, nullspace, rank, solve
from .homgeom import QuaternionicSpace

CVec = dict


def _clean(v: CVec) -> CVec:
    return {k: GaussianRational.coerce(x) for k, x in v.items() if x}


def _add(*terms) -> CVec:
    out: dict = {}
    for coef, vec in terms:
        c = GaussianRational.coerce(coef)
        for k, x in vec.items():
            out[k] = out.get(k, GaussianRational(0)) + c * x
    return _clean(out)


class ComplexSubspace:
    """Span over Q(i) of a set of vectors in C^N, with exact membership."""

    def __init__(self, vectors: list[CVec], N: int):
        self.N = N
        self.vectors = [_clean(v) for v in vectors]
        cols = {}
        for c, v in enumerate(self.vectors):
            for k, x in v.items():
                # (v, i v) realified: columns 2c and 2c+1
                cols[(k, 2 * c)] = x.re
                cols[(N + k, 2 * c)] = x.im
                cols[(k, 2 * c + 1)] = -x.im
                cols[(N + k, 2 * c + 1)] = x.re
        self.real_span = QMatrix.from_dict(cols, (2 * N, 2 * len(self.vectors)))
        self.annihilator = nullspace(self.real_span.T).T if self.vectors else QMatrix.identity(2 * N)

    @property
    def dim(self) -> int:
        return rank(self.real_span) // 2 if self.vectors else 0

    def realify(self, v: CVec) -> QMatrix:
        ent = {}
        for k, x in _clean(v).items():
            ent[(k, 0)] = x.re
            ent[(self.N + k, 0)] = x.im
        return QMatrix.from_dict(ent, (2 * self.N, 1))

    def contains(self, v: CVec) -> bool:
        return (self.annihilator @ self.realify(v)).is_zero()

    def __add__(self, other: "ComplexSubspace") -> "ComplexSubspace":
        return ComplexSubspace(self.vectors + other.vectors, self.N)


@dataclass
class TwistorData:
    sp: QuaternionicSpace
    L: dict
    e12: int = 0
    e13: int = 0
    e23: int = 0
    omega: dict = field(default_factory=dict)

    def __post_init__(self):
        a = self.sp.alg
        self.e12 = a.wedge_index[(0, 1)]
        self.e13 = a.wedge_index[(0, 2)]
        self.e23 = a.wedge_index[(1, 2)]
        self.N = a.dim
        self.omega = {g: self.sp.omega_coefficients(self.L[g]) for g in self.sp.m_indices}

    def bracket(self, x: CVec, y: CVec) -> CVec:
        return _clean(self.sp.alg.bracket(x, y))

    def m_vector(self, col: QMatrix) -> CVec:
        return {self.sp.m_indices[i]: v for (i, _), v in col.entries().items()}

    def J1_of(self, g: int) -> CVec:
        sp = self.sp
        return self.m_vector(sp.J[1] @ sp.basis_vector(sp.m_pos[g]))

    def bbJ(self, g: int) -> CVec:
        """The complex structure of z on a basis vector."""
        if g == self.e12:
            return {self.e13: Fraction(1)}
        if g == self.e13:
            return {self.e12: Fraction(-1)}
        return self.J1_of(g)

    def lift(self, x: CVec) -> CVec:
        """Horizontal lift x + 2 omega_2(x) e1^e3 - 2 omega_3(x) e1^e2 of x in m."""
        w2 = sum((GaussianRational.coerce(c) * self.omega[g][1] for g, c in x.items()), GaussianRational(0))
        w3 = sum((GaussianRational.coerce(c) * self.omega[g][2] for g, c in x.items()), GaussianRational(0))
        return _add((1, x), (2 * w2, {self.e13: 1}), (-2 * w3, {self.e12: 1}))

    @property
    def z_basis(self) -> list[int]:
        return [self.e12, self.e13] + list(self.sp.m_indices)

    @property
    def gz0_basis(self) -> list[int]:
        return [self.e23] + self.oEprime

    @property
    def oEprime(self) -> list[int]:
        return [g for g in self.sp.k_indices if g not in (self.e12, self.e13, self.e23)]

    def z01(self) -> list[CVec]:
        return [_add((1, {g: 1}), (I, self.bbJ(g))) for g in self.z_basis]

    def z01_V(self) -> list[CVec]:
        W = set(self.sp.m_indices[self.sp.dmv:])
        return [v for g, v in zip(self.z_basis, self.z01()) if g not in W]

    def W01(self) -> list[CVec]:
        return [_add((1, {g: 1}), (I, self.J1_of(g))) for g in self.sp.m_indices[self.sp.dmv:]]

    def h_vectors(self) -> list[CVec]:
        return [{g: GaussianRational(1)} for g in self.gz0_basis] + self.z01()

    def hor10(self, which=None) -> list[CVec]:
        out = []
        for g in (self.sp.m_indices if which is None else which):
            x = {g: Fraction(1)}
            Jx = self.J1_of(g)
            out.append(_add((1, self.lift(x)), (-I, self.lift(Jx))))
        return out


def build_z_and_lift(sp: QuaternionicSpace, L: dict) -> TwistorData:
    return TwistorData(sp, L)


def _closure(td: TwistorData, left: list[CVec], right: list[CVec], target: ComplexSubspace):
    for i, x in enumerate(left):
        for j, y in enumerate(right):
            if not target.contains(td.bracket(x, y)):
                return (i, j)
    return None


def build_h(td: TwistorData) -> ComplexSubspace:
    h = ComplexSubspace(td.h_vectors(), td.N)
    bad = _closure(td, h.vectors, h.vectors, h)
    if bad is not None:
        raise ClosureViolation(bad)
    return h


def check_distribution_invariance(td: TwistorData) -> dict:
    h = ComplexSubspace(td.h_vectors(), td.N)
    hor = ComplexSubspace(td.hor10(), td.N)
    total = h + hor
    bad_h = _closure(td, h.vectors, h.vectors, h)
    bad_d = _closure(td, h.vectors, hor.vectors, total)
    return {"h_subalgebra": bad_h is None, "invariant": bad_d is None,
            "dim_h": h.dim, "dim_hor10": hor.dim, "dim_g": td.N,
            "codimension_one": h.dim + hor.dim + 1 == td.N,
            "first_failure": bad_h or bad_d}


def _quotient_functional(td: TwistorData, sub: ComplexSubspace, gen: CVec) -> QMatrix | None:
    """phi = (phi_r, phi_i) with phi|sub = 0 and phi(gen) = 1."""
    N = td.N
    rows = []
    rhs = []

    def eqs(v: CVec, val: GaussianRational):
        re_row, im_row = {}, {}
        for k, x in v.items():
            # (phi_r + i phi_i)(x_r + i x_i)
            re_row[k] = re_row.get(k, 0) + x.re
            re_row[N + k] = re_row.get(N + k, 0) - x.im
            im_row[k] = im_row.get(k, 0) + x.im
            im_row[N + k] = im_row.get(N + k, 0) + x.re
        rows.extend([re_row, im_row])
        rhs.extend([val.re, val.im])
    for v in sub.vectors:
        eqs(v, GaussianRational(0))
    eqs(_clean(gen), GaussianRational(1))
    A = QMatrix.from_dict({(r, c): x for r, row in enumerate(rows) for c, x in row.items()},
                          (len(rows), 2 * N))
    b = QMatrix.from_dict({(r, 0): x for r, x in enumerate(rhs)}, (len(rows), 1))
    return solve(A, b)


def _apply_functional(phi: QMatrix, N: int, v: CVec) -> GaussianRational:
    re = im = Fraction(0)
    for k, x in v.items():
        pr, pi = phi[k, 0], phi[N + k, 0]
        re += pr * x.re - pi * x.im
        im += pr * x.im + pi * x.re
    return GaussianRational(re, im)


def frobenius_form(td: TwistorData) -> dict:
    """omega(X, Y) = [X, Y] mod (h + D^{1,0}) on the horizontal distribution,
    valued in the line spanned by e2 - i e3."""
    sp = td.sp
    N = td.N
    a = sp.alg
    h = ComplexSubspace(td.h_vectors(), N)
    hor_all = td.hor10()
    total = h + ComplexSubspace(hor_all, N)
    gen = _add((1, {a.v(1): 1}), (-I, {a.v(2): 1}))
    phi = _quotient_functional(td, total, gen)
    if phi is None:
        raise ClosureViolation(("e2 - i e3 does not span the quotient",))
    dm = sp.dm
    Om = {}
    for i in range(dm):
        for j in range(dm):
            val = _apply_functional(phi, N, td.bracket(hor_all[i], hor_all[j]))
            if val:
                Om[(i, j)] = val
    re = QMatrix.from_dict({k: v.re for k, v in Om.items()}, (dm, dm))
    im = QMatrix.from_dict({k: v.im for k, v in Om.items()}, (dm, dm))
    Omega = GMatrix(re, im)
    rk = grank(Omega)
    dim = dm // 2
    mv = list(range(sp.dmv))
    wv = list(range(sp.dmv, dm))
    cross_zero = all((i, j) not in Om for i in mv for j in wv)
    sub = GMatrix(QMatrix(re.num[mv][:, mv], re.den), QMatrix(im.num[mv][:, mv], im.den))
    mv_rank = grank(sub)
    # omega(s - iJs, t - iJt) = 2(<e2,[s,t]> + i <e3,[s,t]>)
    formula_ok = True
    for i in wv:
        for j in wv:
            st = a.bracket({sp.m_indices[i]: 1}, {sp.m_indices[j]: 1})
            exp = GaussianRational(2 * st.get(a.v(1), 0), 2 * st.get(a.v(2), 0))
            if _formula_value(td, phi, i, j) != exp:
                formula_ok = False
    return {"rank": rk, "dim": dim, "verdict": "contact" if rk == dim else "not-contact",
            "cross_zero": cross_zero, "mV_nondegenerate": mv_rank == sp.dmv // 2,
            "formula_ok": formula_ok, "matrix": Omega}


def _formula_value(td: TwistorData, phi: QMatrix, i: int, j: int) -> GaussianRational:
    sp = td.sp
    s = {sp.m_indices[i]: Fraction(1)}
    t = {sp.m_indices[j]: Fraction(1)}
    X = _add((1, s), (-I, td.J1_of(sp.m_indices[i])))
    Y = _add((1, t), (-I, td.J1_of(sp.m_indices[j])))
    return _apply_functional(phi, td.N, td.bracket(X, Y))


def generated_subalgebra(td: TwistorData, gens: list[CVec]) -> ComplexSubspace:
    sub = ComplexSubspace(gens, td.N)
    frontier = list(sub.vectors)
    while frontier:
        new = []
        for x in frontier:
            for y in list(sub.vectors):
                z = td.bracket(x, y)
                if z and not sub.contains(z):
                    sub = ComplexSubspace(sub.vectors + [z], td.N)
                    new.append(z)
        frontier = new
    return sub


def z01_structure(td: TwistorData) -> dict:
    N = td.N
    z01 = td.z01()
    gen = generated_subalgebra(td, z01)
    a = td.sp.alg
    oEp = [{g: GaussianRational(1)} for g in td.oEprime]
    expected = ComplexSubspace(oEp + z01, N)
    same = gen.dim == expected.dim and all(expected.contains(v) for v in gen.vectors)
    W01 = td.W01()
    line = ComplexSubspace([_add((1, {a.v(1): 1}), (I, {a.v(2): 1}))], N)
    ww = all(line.contains(td.bracket(x, y)) for x in W01 for y in W01)
    Wsp = ComplexSubspace(W01, N)
    vw = [td.bracket(x, y) for x in td.z01_V() for y in W01]
    vw_span = ComplexSubspace(vw, N)
    vw_eq = all(Wsp.contains(v) for v in vw) and vw_span.dim == Wsp.dim
    return {"generated_equals_oEp_plus_z01": same, "W01_brackets_in_line": ww,
            "zV_W01_equals_W01": vw_eq}
