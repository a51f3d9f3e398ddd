"""Extended Poincare algebras g(Pi) = RD + o(V) + V + W and their invariants.

Basis order of g: D, the bivectors e_i^e_j (i<j, lexicographic), the vectors
e_0..e_{n-1} of V, then the basis of W.  In the symmetric (super) variant W
is odd and brackets follow the graded sign rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .clifford import SpinorModule, even_module, spin_generator, wedge_on_vectors
from .errors import InvalidSignature, JacobiViolation
from .exactla import (QMatrix, block_diag, inertia, nullspace, nullspace_from_rows,
                      rank, same_column_span, vstack)

ALTERNATING = "alternating"
SYMMETRIC = "symmetric"


def variant_sign(variant: str) -> int:
    """Pi(t,s) = sign * Pi(s,t)."""
    if variant == ALTERNATING:
        return -1
    if variant == SYMMETRIC:
        return 1
    raise ValueError(f"unknown variant {variant!r}")


def _pairs(m: int, variant: str):
    if variant == ALTERNATING:
        return [(s, t) for s in range(m) for t in range(s + 1, m)]
    return [(s, t) for s in range(m) for t in range(s, m)]


# ----------------------------------------------------------- equivariance

def solve_equivariant(W: SpinorModule, variant: str = ALTERNATING) -> list[list[QMatrix]]:
    """Basis of the o(V)-equivariant maps Pi: W x W -> V of the given symmetry.

    Each map is returned as the list of its components P_k (P_k[s,t] is the
    e_k-coefficient of Pi(s,t)).
    """
    sign = variant_sign(variant)
    n, m = W.n, W.dim
    if m == 0:
        return []
    pairs = _pairs(m, variant)
    unknown = {}
    for k in range(n):
        for (s, t) in pairs:
            unknown[(s, t, k)] = len(unknown)

    def var(s, t, k):
        # (column, coefficient) of P_k[s,t]
        if s == t and sign == -1:
            return None
        if s <= t:
            return unknown[(s, t, k)], 1
        return unknown[(t, s, k)], sign

    eta = W.metric
    mono = {key: val.num.tolist() for key, val in W.mono.items()}
    dens = {key: val.den for key, val in W.mono.items()}
    rows = []
    # the adjacent wedges e_i^e_{i+1} generate o(V), so they cut out the same space
    for i, j in ((i, i + 1) for i in range(n - 1)):
        # 2*rho = -e_i e_j ; integer matrix numerators over den
        E = mono[(i, j)]
        den = dens[(i, j)]
        col_nz = [[u for u in range(m) if E[u][s]] for s in range(m)]
        for k in range(n):
            for (s, t) in pairs:
                row: dict[int, int] = {}

                def add(entry, coef):
                    if entry is None or not coef:
                        return
                    c, sg = entry
                    v = row.get(c, 0) + sg * coef
                    if v:
                        row[c] = v
                    else:
                        row.pop(c, None)
                for u in col_nz[s]:
                    add(var(u, t, k), -E[u][s])
                for u in col_nz[t]:
                    add(var(s, u, k), -E[u][t])
                # A_V[k,l]: (e_i^e_j) e_j = eta_j e_i, e_i -> -eta_i e_j
                if k == i:
                    add(var(s, t, j), -2 * den * eta[j])
                elif k == j:
                    add(var(s, t, i), 2 * den * eta[i])
                if row:
                    rows.append(row)
    basis = nullspace_from_rows(rows, len(unknown))
    out = []
    for c in range(basis.shape[1]):
        colv = basis.column(c)
        comps = []
        for k in range(n):
            ent = {}
            for (s, t) in pairs:
                v = colv[unknown[(s, t, k)]]
                if v:
                    ent[(s, t)] = v
                    if s != t:
                        ent[(t, s)] = sign * v
            comps.append(QMatrix.from_dict(ent, (m, m)))
        out.append(comps)
    return out


def is_equivariant(W: SpinorModule, P: list[QMatrix]) -> bool:
    n = W.n
    eta = W.metric
    for i, j in combinations(range(n), 2):
        R = spin_generator(i, j, W)
        A = wedge_on_vectors(i, j, eta)
        for k in range(n):
            lhs = R.T @ P[k] + P[k] @ R
            rhs = QMatrix.zeros(W.dim, W.dim)
            for l in range(n):
                if A[k, l]:
                    rhs = rhs + P[l].scale(A[k, l])
            if lhs != rhs:
                return False
    return True


def first_b_entry(W: SpinorModule, P: list[QMatrix], frame) -> Fraction:
    b = b_from_components(W, P, frame)
    ent = b.entries()
    if not ent:
        return Fraction(0)
    return ent[min(ent)]


def normalize_pi(W: SpinorModule, P: list[QMatrix], frame=(0, 1, 2)) -> list[QMatrix]:
    """Positive rescaling making the first nonzero entry of b equal to +-1."""
    if W.p < len(frame):
        return P
    f = first_b_entry(W, P, frame)
    if f == 0:
        return P
    c = 1 / abs(f)
    return [x.scale(c) for x in P]


@lru_cache(maxsize=None)
def block_solution(p: int, q: int, label: str, variant: str) -> tuple[QMatrix, ...]:
    """Normalized first solver basis element on one irreducible block."""
    W = even_module(p, q, [label])
    sols = solve_equivariant(W, variant)
    if not sols:
        return ()
    frame = tuple(range(3)) if p >= 3 else ()
    P = normalize_pi(W, sols[0], frame) if frame else sols[0]
    return tuple(P)


def direct_sum_pi(W: SpinorModule, scales, variant: str = ALTERNATING) -> list[QMatrix]:
    """Block-diagonal Pi with the normalized block solution times scales[k]."""
    if len(scales) != len(W.blocks):
        raise ValueError("one scale per block is required")
    n = W.n
    comps = [[] for _ in range(n)]
    for lab, d, c in zip(W.blocks, W.block_dims, scales):
        c = Fraction(c)
        sol = block_solution(W.p, W.q, lab, variant) if c else ()
        for k in range(n):
            comps[k].append(sol[k].scale(c) if sol else QMatrix.zeros(d, d))
    if not W.blocks:
        return [QMatrix.zeros(0, 0) for _ in range(n)]
    return [block_diag(c) for c in comps]


def riemannian_scales(W: SpinorModule, variant: str = ALTERNATING) -> list[int]:
    """Per-block signs making -b positive definite on each block when possible
    (unit scales in the symmetric variant, where b is skew)."""
    if variant != ALTERNATING:
        return [1] * len(W.blocks)
    out = []
    for lab in W.blocks:
        sol = block_solution(W.p, W.q, lab, variant)
        Wb = even_module(W.p, W.q, [lab])
        b = b_from_components(Wb, list(sol), (0, 1, 2)) if sol else None
        out.append(-1 if b is not None and inertia(b).n_plus == b.shape[0] else 1)
    return out


def pi_from_coefficients(basis: list[list[QMatrix]], coeffs) -> list[QMatrix]:
    if len(coeffs) != len(basis):
        raise ValueError(f"expected {len(basis)} coefficients, got {len(coeffs)}")
    n = len(basis[0])
    m = basis[0][0].shape[0]
    out = [QMatrix.zeros(m, m) for _ in range(n)]
    for c, P in zip(coeffs, basis):
        c = Fraction(c)
        if c:
            out = [o + x.scale(c) for o, x in zip(out, P)]
    return out


def b_from_components(W: SpinorModule, P: list[QMatrix], frame) -> QMatrix:
    """b(s,t) = <e_f0, Pi(e_f1 ... e_fk s, t)> for the ordered frame."""
    f0 = frame[0]
    M = W.even_product(list(frame[1:]))
    return (M.T @ P[f0]).scale(W.metric[f0])


# ----------------------------------------------------------- the algebra

@dataclass
class EPA:
    W: SpinorModule
    P: list[QMatrix]
    variant: str = ALTERNATING
    structure: dict = field(default=None, repr=False)

    def __post_init__(self):
        n = self.W.n
        self.wedges = list(combinations(range(n), 2))
        self.wedge_index = {w: 1 + i for i, w in enumerate(self.wedges)}
        self.v0 = 1 + len(self.wedges)
        self.w0 = self.v0 + n
        self.dim = self.w0 + self.W.dim
        if self.structure is None:
            self.structure = self._structure_constants()

    # indices
    @property
    def p(self) -> int:
        return self.W.p

    @property
    def q(self) -> int:
        return self.W.q

    @property
    def n(self) -> int:
        return self.W.n

    @property
    def metric(self) -> list[int]:
        return self.W.metric

    def v(self, k: int) -> int:
        return self.v0 + k

    def s(self, a: int) -> int:
        return self.w0 + a

    def wedge(self, i: int, j: int) -> tuple[int, int]:
        """(index, sign) of e_i ^ e_j."""
        if i < j:
            return self.wedge_index[(i, j)], 1
        return self.wedge_index[(j, i)], -1

    @cached_property
    def parity(self) -> list[int]:
        odd = 1 if self.variant == SYMMETRIC else 0
        return [0] * self.w0 + [odd] * self.W.dim

    def sign(self, a: int, b: int) -> int:
        return -1 if self.parity[a] and self.parity[b] else 1

    @cached_property
    def labels(self) -> list[str]:
        p = self.p
        vl = [f"e{k + 1}" if k < p else f"f{k - p + 1}" for k in range(self.n)]
        return (["D"] + [f"{vl[i]}^{vl[j]}" for i, j in self.wedges] + vl
                + [f"s{a + 1}" for a in range(self.W.dim)])

    def pi_is_zero(self) -> bool:
        return all(x.is_zero() for x in self.P)

    # structure constants
    def _structure_constants(self) -> dict:
        n, m = self.n, self.W.dim
        eta = self.metric
        C: dict[tuple[int, int], dict[int, Fraction]] = {}

        def put(a, b, vec):
            vec = {c: Fraction(x) for c, x in vec.items() if x}
            if not vec:
                return
            C[(a, b)] = vec
            sg = -self.sign(a, b)
            C[(b, a)] = {c: sg * x for c, x in vec.items()} if a != b else vec
        half = Fraction(1, 2)
        for k in range(n):
            put(0, self.v(k), {self.v(k): 1})
        for a in range(m):
            put(0, self.s(a), {self.s(a): half})
        wmats = {w: wedge_on_vectors(*w, eta) for w in self.wedges}
        smats = {w: spin_generator(*w, self.W) for w in self.wedges}
        for w1, w2 in combinations(self.wedges, 2):
            X = wmats[w1] @ wmats[w2] - wmats[w2] @ wmats[w1]
            vec = {}
            for (i, j), x in X.entries().items():
                if i < j:
                    vec[self.wedge_index[(i, j)]] = x * eta[j]
            put(self.wedge_index[w1], self.wedge_index[w2], vec)
        for w in self.wedges:
            A = wmats[w]
            R = smats[w]
            wi = self.wedge_index[w]
            for k in range(n):
                put(wi, self.v(k), {self.v(l): A[l, k] for l in range(n) if A[l, k]})
            for a in range(m):
                put(wi, self.s(a), {self.s(u): R[u, a] for u in range(m) if R[u, a]})
        for a in range(m):
            for b in range(a, m):
                put(self.s(a), self.s(b), {self.v(k): self.P[k][a, b] for k in range(n)})
        return C

    def bracket_basis(self, a: int, b: int) -> dict[int, Fraction]:
        return self.structure.get((a, b), {})

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        for a, xa in x.items():
            for b, yb in y.items():
                for c, v in self.structure.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + xa * yb * v
        return {c: v for c, v in out.items() if v}

    @cached_property
    def ad(self) -> list[QMatrix]:
        mats = []
        for a in range(self.dim):
            ent = {}
            for b in range(self.dim):
                for c, v in self.structure.get((a, b), {}).items():
                    ent[(c, b)] = v
            mats.append(QMatrix.from_dict(ent, (self.dim, self.dim)))
        return mats

    def ad_of(self, x: dict) -> QMatrix:
        out = QMatrix.zeros(self.dim, self.dim)
        for a, v in x.items():
            out = out + self.ad[a].scale(v)
        return out

    # checks
    def jacobi_violation(self):
        """First basis triple violating the (graded) Jacobi identity, or None."""
        ad = self.ad
        for a in range(self.dim):
            for b in range(a, self.dim):
                lhs = self.ad_of(self.bracket_basis(a, b))
                rhs = ad[a] @ ad[b] - (ad[b] @ ad[a]).scale(self.sign(a, b))
                if lhs != rhs:
                    diff = lhs - rhs
                    c = next(iter(sorted(diff.entries())))[1]
                    return (a, b, c), diff
        return None

    def graded_antisymmetry_ok(self) -> bool:
        for (a, b), vec in self.structure.items():
            other = self.structure.get((b, a), {})
            sg = -self.sign(a, b)
            if {c: sg * v for c, v in vec.items()} != other:
                return False
        return True

    def verify(self):
        if not self.graded_antisymmetry_ok():
            raise JacobiViolation(("antisymmetry",))
        bad = self.jacobi_violation()
        if bad is not None:
            raise JacobiViolation(bad[0], bad[1])
        return self


def build_epa(W: SpinorModule, P: list[QMatrix], variant: str = ALTERNATING,
              check: bool = True) -> EPA:
    alg = EPA(W, P, variant)
    if check:
        alg.verify()
    return alg


# ----------------------------------------------------------- canonical form

def canonical_b(alg: EPA, frame=None) -> QMatrix:
    if frame is None:
        frame = (0, 1, 2)
    if len(frame) % 4 != 3 or any(f >= alg.p for f in frame):
        raise InvalidSignature(f"frame {frame} is not an orthonormal positive frame")
    return b_from_components(alg.W, alg.P, frame)


def generator_classes(n: int, pprime: int) -> dict[str, list[tuple[int, int]]]:
    out = {"wedge2_E": [], "wedge2_Eprime": [], "E_wedge_Eprime": []}
    for i, j in combinations(range(n), 2):
        if j < pprime:
            out["wedge2_E"].append((i, j))
        elif i >= pprime:
            out["wedge2_Eprime"].append((i, j))
        else:
            out["E_wedge_Eprime"].append((i, j))
    return out


def check_b_equivariance(alg: EPA, pprime: int = 3) -> dict:
    b = canonical_b(alg, tuple(range(pprime)))
    sym_expected = alg.variant == ALTERNATING
    out = {"b_symmetric": b == b.T, "b_skew": b == -b.T,
           "symmetry_ok": (b == b.T) if sym_expected else (b == -b.T)}
    classes = generator_classes(alg.n, pprime)
    for name, gens in classes.items():
        want_sym = name == "E_wedge_Eprime"
        bad = []
        for (i, j) in gens:
            R = spin_generator(i, j, alg.W)
            res = R.T @ b - b @ R if want_sym else R.T @ b + b @ R
            if not res.is_zero():
                bad.append((i, j))
        out[name] = {"expected": "b-symmetric" if want_sym else "b-skew",
                     "violations": bad}
    rot = canonical_b(alg, (1, 2, 0))
    swp = canonical_b(alg, (1, 0, 2))
    out["frame_rotation_ok"] = rot == b
    out["frame_swap_ok"] = swp == -b
    out["ok"] = (out["symmetry_ok"] and out["frame_rotation_ok"] and out["frame_swap_ok"]
                 and all(not out[k]["violations"] for k in classes))
    return out


def kernel_pi(alg: EPA) -> QMatrix:
    if alg.W.dim == 0:
        return QMatrix.zeros(0, 0)
    return nullspace(vstack([x.T for x in alg.P]))


def kernel_b(alg: EPA, frame=(0, 1, 2)) -> QMatrix:
    if alg.W.dim == 0:
        return QMatrix.zeros(0, 0)
    return nullspace(canonical_b(alg, frame).T)


def kernel_compare(alg: EPA, frame=(0, 1, 2)) -> dict:
    kp, kb = kernel_pi(alg), kernel_b(alg, frame)
    equal = kp.shape[1] == kb.shape[1] and (kp.shape[1] == 0 or same_column_span(kp, kb))
    return {"dim_ker_pi": kp.shape[1], "dim_ker_b": kb.shape[1], "equal": equal,
            "ker_pi": kp, "ker_b": kb}


# ----------------------------------------------------------- decomposition

@dataclass
class BlockInfo:
    label: str
    inertia: tuple[int, int, int]
    flag: str


def decompose(alg: EPA, frame=(0, 1, 2)) -> dict:
    W = alg.W
    b = canonical_b(alg, frame)
    nb = len(W.blocks)
    sl = [W.block_slice(k) for k in range(nb)]
    infos = []
    for k in range(nb):
        bk = b[sl[k], sl[k]]
        d = bk.shape[0]
        if alg.variant == ALTERNATING:
            inn = inertia(bk).as_tuple()
            if inn[2] == d:
                flag = "kernel"
            elif inn[0] == d:
                flag = "definite+"
            elif inn[1] == d:
                flag = "definite-"
            else:
                flag = "indefinite"
        else:
            r = rank(bk)
            inn = (None, None, d - r)
            flag = "kernel" if r == 0 else ("symplectic" if r == d else "degenerate")
        if flag == "kernel":
            pairs = [j for j in range(nb) if j != k and not b[sl[k], sl[j]].is_zero()]
            if pairs:
                flag = "isotropic-pair"
        infos.append(BlockInfo(W.blocks[k], inn, flag))
    b_orth = all(b[sl[i], sl[j]].is_zero() for i in range(nb) for j in range(nb) if i != j)
    pi_orth = all(x[sl[i], sl[j]].is_zero() for x in alg.P
                  for i in range(nb) for j in range(nb) if i != j)
    kern = kernel_compare(alg, frame)
    return {"blocks": infos, "b_orthogonal": b_orth, "pi_orthogonal": pi_orth,
            "kernel_equal": kern["equal"], "dim_kernel": kern["dim_ker_b"]}


# ----------------------------------------------------------- classification

@dataclass(frozen=True)
class ClassLabel:
    value: tuple[int, ...]

    @property
    def kind(self) -> str:
        return "triple" if len(self.value) == 3 else "sextuple"

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.value) + ")"


def _counts(b: QMatrix, d: int) -> tuple[int, int, int]:
    pl, mi, ze = inertia(b).as_tuple()
    if pl % d or mi % d or ze % d:
        raise ValueError("inertia of b is not a multiple of the irreducible dimension")
    return (ze // d, pl // d, mi // d)


def triple_orbit(t: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    return [t, (t[0], t[2], t[1])]


def sextuple_orbit(t: tuple[int, ...]) -> list[tuple[int, ...]]:
    def swap_signs(x):
        return (x[0], x[2], x[1], x[3], x[5], x[4])

    def swap_types(x):
        return x[3:] + x[:3]
    return [t, swap_signs(t), swap_types(t), swap_types(swap_signs(t))]


def classify(alg: EPA) -> ClassLabel:
    """Canonical (lexicographically minimal) representative of the class of Pi."""
    if alg.variant != ALTERNATING:
        raise ValueError("classification applies to the alternating variant")
    if alg.p % 4 != 3:
        raise InvalidSignature("classification needs p = 3 mod 4")
    W = alg.W
    b = canonical_b(alg, tuple(range(alg.p)))
    if not W.blocks:
        return ClassLabel((0, 0, 0))
    d = W.block_dims[0]
    if "Sigma" in W.blocks:
        return ClassLabel(min(triple_orbit(_counts(b, d))))
    idx = {lab: [i for k, lab2 in enumerate(W.blocks) if lab2 == lab
                 for i in range(W.block_slice(k).start, W.block_slice(k).stop)]
           for lab in ("S+", "S-")}
    if not _select(b, idx["S+"], idx["S-"]).is_zero():
        raise ValueError("b pairs the two semispinor isotypic components")
    parts = []
    for lab in ("S+", "S-"):
        ii = idx[lab]
        parts.extend(_counts(_select(b, ii, ii), d) if ii else (0, 0, 0))
    return ClassLabel(min(sextuple_orbit(tuple(parts))))


def _select(b: QMatrix, rows, cols) -> QMatrix:
    if not rows or not cols:
        return QMatrix.zeros(len(rows), len(cols))
    return QMatrix(b.num[rows][:, cols], b.den)


# ----------------------------------------------------------- structure

def radical_indices(alg: EPA) -> list[int]:
    return [0] + list(range(alg.v0, alg.dim))


def check_ad_faithful_on_radical(alg: EPA) -> dict:
    r = radical_indices(alg)
    ent = {}
    for x in range(alg.dim):
        for jr, y in enumerate(r):
            for c, v in alg.bracket_basis(x, y).items():
                ent[(jr * alg.dim + c, x)] = v
    M = QMatrix.from_dict(ent, (len(r) * alg.dim, alg.dim))
    rk = rank(M)
    return {"rank": rk, "dim": alg.dim, "faithful": rk == alg.dim}


def levi_properties(alg: EPA) -> dict:
    nil = list(range(alg.v0, alg.dim))
    vset = set(range(alg.v0, alg.w0))
    derived_in_v = all(set(alg.bracket_basis(a, b)) <= vset for a in nil for b in nil)
    derived_nonzero = any(alg.bracket_basis(a, b) for a in nil for b in nil)
    step3 = all(not alg.bracket({c: v}, {e: 1})
                for a in nil for b in nil
                for c, v in alg.bracket_basis(a, b).items() for e in nil)
    radical = radical_indices(alg)
    rset = set(radical)
    ideal = all(set(alg.bracket_basis(x, y)) <= rset for x in range(alg.dim) for y in radical)
    return {"radical_ideal": ideal, "derived_in_V": derived_in_v,
            "two_step": derived_in_v and step3 and derived_nonzero,
            "abelian": not derived_nonzero, "pi_nonzero": not alg.pi_is_zero()}


def check_emb_gV(p: int, q: int) -> dict:
    """g(V) -> o(p+1,q+1): D -> e0^e0', A -> A, v -> (e0 - e0')^v."""
    W = even_module(p, q, [])
    alg = EPA(W, [QMatrix.zeros(0, 0)] * (p + q))
    n = p + q
    eta = alg.metric
    big = [1] + eta + [-1]
    N = n + 2
    e0, e0p = 0, n + 1

    def wedge(x: dict, y: dict) -> QMatrix:
        out = QMatrix.zeros(N, N)
        for i, a in x.items():
            for j, c in y.items():
                if i != j:
                    out = out + wedge_on_vectors(i, j, big).scale(a * c)
        return out
    images = [wedge({e0: 1}, {e0p: 1})]
    images += [wedge({i + 1: 1}, {j + 1: 1}) for i, j in alg.wedges]
    images += [wedge({e0: 1, e0p: -1}, {k + 1: 1}) for k in range(n)]
    hom = True
    bad = None
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            lhs = QMatrix.zeros(N, N)
            for c, v in alg.bracket_basis(a, b).items():
                lhs = lhs + images[c].scale(v)
            if lhs != images[a].commutator(images[b]):
                hom, bad = False, (a, b)
                break
        if not hom:
            break
    M = vstack([QMatrix(m.num.reshape(1, -1), m.den) for m in images])
    injective = rank(M) == alg.dim
    return {"homomorphism": hom, "injective": injective, "first_failure": bad}
