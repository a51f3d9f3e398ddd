"""Homogeneous quaternionic geometry on G/K for an extended Poincare algebra.

With V = E + E' (E spanned by the first three positive vectors), the
isotropy algebra is k = o(E) + o(E') and the reductive complement is
m = m(V) + W, m(V) = E^E' + RD + V.  m(V) has the basis e_{iota,i}
(iota = 0..3, i = 0..r+q) ordered iota-major:

    e_00 = D,  e_0a = e'_a,  e_alpha0 = e_alpha,  e_alpha,a = e_alpha ^ e'_a.

Linear maps on m are matrices in this basis followed by the basis of W.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .epa import ALTERNATING, EPA, SYMMETRIC, canonical_b, kernel_pi
from .errors import DegenerateMetric, InvalidSignature, KernelMismatch, NotRiemannian
from .exactla import (QMatrix, inertia, inverse, rank, same_column_span,
                      solve_proportionality)

HALF = Fraction(1, 2)
CYCLIC = {1: (2, 3), 2: (3, 1), 3: (1, 2)}

# Nomizu maps follow the sign convention in which the Koszul formula,
# T(x,y) = -(L_x y - L_y x + [x,y]_m) and R(x,y) = [L_x,L_y] + L_[x,y] are
# mutually consistent; this forces L_x = -ad_x on m for x in k.
ISOTROPY_SIGN = -1


@dataclass
class QuaternionicSpace:
    alg: EPA
    metric_sign_W: int = field(default=None)

    def __post_init__(self):
        a = self.alg
        if a.p < 3:
            raise InvalidSignature("the homogeneous geometry needs p >= 3")
        if self.metric_sign_W is None:
            self.metric_sign_W = -1
        self.r = a.p - 3
        self.R = self.r + a.q
        R = self.R
        idx = []
        for iota in range(4):
            for i in range(R + 1):
                idx.append(self._gindex(iota, i))
        idx += [a.s(t) for t in range(a.W.dim)]
        self.m_indices = idx
        self.m_pos = {g: k for k, g in enumerate(idx)}
        self.k_indices = [a.wedge_index[(i, j)] for (i, j) in a.wedges
                          if (j < 3) or (i >= 3)]
        self.dmv = 4 * (R + 1)
        self.dm = len(idx)

    def _gindex(self, iota: int, i: int) -> int:
        a = self.alg
        if iota == 0:
            return 0 if i == 0 else a.v(2 + i)
        if i == 0:
            return a.v(iota - 1)
        return a.wedge_index[(iota - 1, 2 + i)]

    def pos(self, iota: int, i: int) -> int:
        return iota * (self.R + 1) + i

    def wpos(self, t: int) -> int:
        return self.dmv + t

    @cached_property
    def eps(self) -> list[int]:
        per = [1] + [-1] * self.r + [1] * self.alg.q
        return per * 4

    @cached_property
    def parity(self) -> list[int]:
        return [self.alg.parity[g] for g in self.m_indices]

    @cached_property
    def b(self) -> QMatrix:
        return canonical_b(self.alg)

    @cached_property
    def gram(self) -> QMatrix:
        ent = {(k, k): e for k, e in enumerate(self.eps)}
        bW = self.b.scale(self.metric_sign_W)
        for (i, j), v in bW.entries().items():
            ent[(self.dmv + i, self.dmv + j)] = v
        return QMatrix.from_dict(ent, (self.dm, self.dm))

    @cached_property
    def gram_inverse(self) -> QMatrix:
        return inverse(self.gram)

    def is_nondegenerate(self) -> bool:
        return rank(self.gram) == self.dm

    # projection and brackets on m
    def project(self, vec: dict) -> QMatrix:
        ent = {(self.m_pos[g], 0): v for g, v in vec.items() if g in self.m_pos}
        return QMatrix.from_dict(ent, (self.dm, 1))

    def basis_vector(self, k: int) -> QMatrix:
        return QMatrix.from_dict({(k, 0): 1}, (self.dm, 1))

    def ad_on_m(self, g: int) -> QMatrix:
        """pi o ad_g restricted to m."""
        ent = {}
        for col, y in enumerate(self.m_indices):
            for c, v in self.alg.bracket_basis(g, y).items():
                if c in self.m_pos:
                    ent[(self.m_pos[c], col)] = v
        return QMatrix.from_dict(ent, (self.dm, self.dm))

    def parity_diag(self, xpar: int) -> QMatrix:
        return QMatrix.diag([-1 if xpar and py else 1 for py in self.parity])

    def wedge_g(self, x: QMatrix, y: QMatrix) -> QMatrix:
        """z -> g(y,z) x - g(x,z) y."""
        G = self.gram
        return x @ (y.T @ G) - y @ (x.T @ G)

    # quaternionic structure
    @cached_property
    def J(self) -> dict[int, QMatrix]:
        W = self.alg.W
        out = {}
        for al, (be, ga) in CYCLIC.items():
            ent = {}
            for i in range(self.R + 1):
                ent[(self.pos(al, i), self.pos(0, i))] = 1
                ent[(self.pos(0, i), self.pos(al, i))] = -1
                ent[(self.pos(ga, i), self.pos(be, i))] = 1
                ent[(self.pos(be, i), self.pos(ga, i))] = -1
            if W.dim:
                JW = W.mono[(be - 1, ga - 1)]
                for (u, v), x in JW.entries().items():
                    ent[(self.dmv + u, self.dmv + v)] = x
            out[al] = QMatrix.from_dict(ent, (self.dm, self.dm))
        return out

    def w_operator(self, indices) -> QMatrix:
        """Even Clifford product on W embedded in End(m)."""
        M = self.alg.W.even_product(indices)
        return self.embed_W(M)

    def embed_W(self, M: QMatrix) -> QMatrix:
        ent = {(self.dmv + u, self.dmv + v): x for (u, v), x in M.entries().items()}
        return QMatrix.from_dict(ent, (self.dm, self.dm))

    def omega_coefficients(self, N: QMatrix) -> tuple[Fraction, Fraction, Fraction]:
        """sp(1)-components: tr(J_a J_b) = -dim m delta_ab."""
        return tuple(-(N @ self.J[a]).trace() / self.dm for a in (1, 2, 3))


def isotropy_split(alg: EPA) -> dict:
    sp = QuaternionicSpace(alg)
    return {"k": sp.k_indices, "m": sp.m_indices, "dim_m": sp.dm,
            "dim_mV": sp.dmv, "space": sp}


def build_metric(alg: EPA) -> tuple[QuaternionicSpace, QMatrix]:
    sp = QuaternionicSpace(alg)
    if not sp.is_nondegenerate():
        raise DegenerateMetric("b is degenerate, so the invariant metric is degenerate")
    return sp, sp.gram


def metric_signature(sp: QuaternionicSpace) -> dict:
    if sp.alg.variant != ALTERNATING:
        raise ValueError("signature is defined for the even variant")
    inn = inertia(sp.gram)
    return {"inertia": inn.as_tuple(), "positive_definite": inn.n_plus == sp.dm,
            "predicted_positive": sp.alg.p == 3 and inertia(-sp.b).n_plus == sp.alg.W.dim}


def build_quaternionic_frame(sp: QuaternionicSpace) -> dict:
    J = sp.J
    one = QMatrix.identity(sp.dm)
    G = sp.gram
    ok = all(J[a] @ J[a] == -one for a in J) and J[1] @ J[2] == J[3] \
        and J[2] @ J[3] == J[1] and J[3] @ J[1] == J[2]
    herm = all((J[a].T @ G + G @ J[a]).is_zero() for a in J)
    return {"J": J, "quaternionic": ok, "hermitian": herm}


# ------------------------------------------------------------ Nomizu maps

def _k_part(sp: QuaternionicSpace) -> dict[int, QMatrix]:
    return {g: sp.ad_on_m(g).scale(ISOTROPY_SIGN) for g in sp.k_indices}


def _L_s_on_mV(sp: QuaternionicSpace, t: int) -> dict[int, QMatrix]:
    """Images L_s e_{iota,i} in W (as W-vectors) for s the t-th basis vector."""
    W = sp.alg.W
    s = QMatrix.from_dict({(t, 0): 1}, (W.dim, 1))
    base = {0: s.scale(HALF)}
    for a in range(1, sp.R + 1):
        base[a] = (W.even_product([0, 1, 2, 2 + a]) @ s).scale(HALF)
    out = {}
    for i, u in base.items():
        out[sp.pos(0, i)] = u
        for al, (be, ga) in CYCLIC.items():
            out[sp.pos(al, i)] = W.mono[(be - 1, ga - 1)] @ u
    return out


def nomizu_closed_form(sp: QuaternionicSpace) -> dict[int, QMatrix]:
    """Levi-Civita Nomizu map from the closed formulas, for all basis elements of g."""
    if not sp.is_nondegenerate():
        raise DegenerateMetric("closed form needs a nondegenerate metric")
    alg = sp.alg
    R, dm = sp.R, sp.dm
    eps = sp.eps
    L = _k_part(sp)
    zero = QMatrix.zeros(dm, dm)
    e = sp.basis_vector
    L[0] = zero
    for al in (1, 2, 3):
        for a in range(1, R + 1):
            L[sp._gindex(al, a)] = zero
    for al, (be, ga) in CYCLIC.items():
        Lbar = zero
        for i in range(R + 1):
            Lbar = Lbar + sp.wedge_g(e(sp.pos(al, i)), e(sp.pos(0, i))).scale(HALF * eps[i])
            Lbar = Lbar - sp.wedge_g(e(sp.pos(ga, i)), e(sp.pos(be, i))).scale(HALF * eps[i])
        L[sp._gindex(al, 0)] = sp.J[al].scale(HALF) + Lbar
    for a in range(1, R + 1):
        M = zero
        for iota in range(4):
            M = M + sp.wedge_g(e(sp.pos(iota, a)), e(sp.pos(iota, 0)))
        if alg.W.dim:
            M = M + sp.w_operator([0, 1, 2, 2 + a]).scale(HALF)
        L[sp._gindex(0, a)] = M
    sigma = -1 if alg.variant == ALTERNATING else 1
    GW = sp.gram[sp.dmv:, sp.dmv:]
    for t in range(alg.W.dim):
        imgs = _L_s_on_mV(sp, t)
        ent = {}
        for x, u in imgs.items():
            for (w, _), v in u.entries().items():
                ent[(sp.dmv + w, x)] = v
            # g(L_s t', x) = sigma g(t', L_s x) fixes the W -> m(V) block
            gu = GW @ u
            for (tp, _), v in gu.entries().items():
                ent[(x, sp.dmv + tp)] = sigma * eps[x] * v
        L[alg.s(t)] = QMatrix.from_dict(ent, (dm, dm))
    return L


def koszul_rhs_tensor(sp: QuaternionicSpace) -> list[QMatrix]:
    """T_w[y,z] = w-th m-component of [m_y, m_z]."""
    dm = sp.dm
    ent = [dict() for _ in range(dm)]
    for y, gy in enumerate(sp.m_indices):
        for z, gz in enumerate(sp.m_indices):
            for c, v in sp.alg.bracket_basis(gy, gz).items():
                if c in sp.m_pos:
                    ent[sp.m_pos[c]][(y, z)] = v
    return [QMatrix.from_dict(e, (dm, dm)) for e in ent]


def nomizu_koszul_oracle(sp: QuaternionicSpace) -> dict[int, QMatrix]:
    """Levi-Civita Nomizu map solved from the Koszul formula
    -2<L_x y, z> = <[x,y]_m, z> - <x_m, [y,z]_m> - (-1)^{xy} <y, [x,z]_m>."""
    if not sp.is_nondegenerate():
        raise DegenerateMetric("Koszul formula needs a nondegenerate metric")
    G, Gi = sp.gram, sp.gram_inverse
    T = koszul_rhs_tensor(sp)
    out = {}
    for x in range(sp.alg.dim):
        A = sp.ad_on_m(x)
        rhs = A.T @ G - sp.parity_diag(sp.alg.parity[x]) @ G @ A
        if x in sp.m_pos:
            row = G[sp.m_pos[x], :]
            B = QMatrix.zeros(sp.dm, sp.dm)
            for w, v in row.entries().items():
                B = B + T[w[1]].scale(v)
            rhs = rhs - B
        out[x] = (rhs @ Gi).scale(-HALF).T
    return out


def nomizu_equal(L1: dict, L2: dict) -> tuple[bool, list[int]]:
    bad = [x for x in sorted(L1) if L1[x] != L2[x]]
    return not bad, bad


def apply_L(L: dict, vec: dict, dm: int) -> QMatrix:
    out = QMatrix.zeros(dm, dm)
    for g, v in vec.items():
        out = out + L[g].scale(v)
    return out


def torsion(sp: QuaternionicSpace, L: dict) -> dict:
    """T(x,y) = -(L_x y - (-1)^{xy} L_y x + [x,y]_m) on pairs of m basis vectors."""
    bad = []
    par = sp.parity
    for i, gx in enumerate(sp.m_indices):
        for j in range(i, sp.dm):
            gy = sp.m_indices[j]
            sg = -1 if par[i] and par[j] else 1
            t = L[gx] @ sp.basis_vector(j) - (L[gy] @ sp.basis_vector(i)).scale(sg) \
                + sp.project(sp.alg.bracket_basis(gx, gy))
            if not t.is_zero():
                bad.append((gx, gy))
    return {"zero": not bad, "violations": bad}


def metricity(sp: QuaternionicSpace, L: dict) -> dict:
    G = sp.gram
    bad = [x for x in sorted(L)
           if not (L[x].T @ G + sp.parity_diag(sp.alg.parity[x]) @ G @ L[x]).is_zero()]
    return {"metric": not bad, "violations": bad}


def check_normalizer(sp: QuaternionicSpace, L: dict) -> dict:
    """Each L_x must normalize Q = span(J_1, J_2, J_3); reports omega(x)."""
    J = sp.J
    omega = {}
    bad = []
    for x in sorted(L):
        N = L[x]
        ok = True
        for a in (1, 2, 3):
            C = N @ J[a] - J[a] @ N
            co = sp.omega_coefficients(C)
            if C != sum((J[b].scale(co[b - 1]) for b in (1, 2, 3)), QMatrix.zeros(sp.dm, sp.dm)):
                ok = False
        if not ok:
            bad.append(x)
        omega[x] = sp.omega_coefficients(N)
    return {"normalizes": not bad, "violations": bad, "omega": omega}


def negative_control(sp: QuaternionicSpace, L: dict) -> dict:
    """L with e_0 ^_g e_1 added to L_{e_0}; must leave the normalizer."""
    bad = dict(L)
    bad[0] = L[0] + sp.wedge_g(sp.basis_vector(sp.pos(0, 0)), sp.basis_vector(sp.pos(1, 0)))
    return bad


def curvature(sp: QuaternionicSpace, L: dict) -> dict[tuple[int, int], QMatrix]:
    """R(x,y) = [L_x, L_y] + L_[x,y] (graded commutator) for m basis pairs i <= j."""
    par = sp.parity
    out = {}
    for i, gx in enumerate(sp.m_indices):
        for j in range(i, sp.dm):
            gy = sp.m_indices[j]
            sg = -1 if par[i] and par[j] else 1
            out[(i, j)] = L[gx].commutator(L[gy], sg) + apply_L(L, sp.alg.bracket_basis(gx, gy), sp.dm)
    return out


def curvature_get(Rc: dict, i: int, j: int, par) -> QMatrix:
    if i <= j:
        return Rc[(i, j)]
    sg = -1 if par[i] and par[j] else 1
    return Rc[(j, i)].scale(-sg)


def ricci(sp: QuaternionicSpace, Rc: dict) -> QMatrix:
    """Ric(y,z) = str(x -> R(x,y)z)."""
    par = sp.parity
    ent = {}
    for y in range(sp.dm):
        for z in range(sp.dm):
            tot = Fraction(0)
            for x in range(sp.dm):
                v = curvature_get(Rc, x, y, par)[x, z]
                if v:
                    tot += -v if par[x] else v
            if tot:
                ent[(y, z)] = tot
    return QMatrix.from_dict(ent, (sp.dm, sp.dm))


def curvature_and_einstein(sp: QuaternionicSpace, L: dict) -> dict:
    Rc = curvature(sp, L)
    Ric = ricci(sp, Rc)
    c = solve_proportionality(Ric, sp.gram)
    J = sp.J
    q_bad = []
    for key, Rm in Rc.items():
        for a in (1, 2, 3):
            C = Rm @ J[a] - J[a] @ Rm
            co = sp.omega_coefficients(C)
            if C != sum((J[b].scale(co[b - 1]) for b in (1, 2, 3)), QMatrix.zeros(sp.dm, sp.dm)):
                q_bad.append(key)
                break
    return {"ricci": Ric, "einstein_c": c, "einstein": c is not None,
            "Q_preserved_by_R": not q_bad, "violations": q_bad, "curvature": Rc}


# ------------------------------------------------------ degenerate extension

def nomizu_degenerate_extension(sp: QuaternionicSpace, kernel_blocks: list[int]) -> dict[int, QMatrix]:
    """Torsion-free Q-connection on m(Pi) with W = W0 + W', W0 = ker Pi given
    as the listed blocks, extended from the Levi-Civita map of m(Pi')."""
    alg = sp.alg
    W = alg.W
    w0 = [i for k in kernel_blocks for i in range(W.block_slice(k).start, W.block_slice(k).stop)]
    kp = kernel_pi(alg)
    if len(w0) != kp.shape[1] or (w0 and not same_column_span(
            QMatrix.from_dict({(i, c): 1 for c, i in enumerate(w0)}, (W.dim, len(w0))), kp)):
        raise KernelMismatch("the listed blocks do not span ker Pi")
    from .clifford import even_module
    keep = [k for k in range(len(W.blocks)) if k not in set(kernel_blocks)]
    wprime = [i for k in keep for i in range(W.block_slice(k).start, W.block_slice(k).stop)]
    Wp = even_module(alg.p, alg.q, [W.blocks[k] for k in keep])
    Pp = [QMatrix(x.num[wprime][:, wprime], x.den) if wprime else QMatrix.zeros(0, 0)
          for x in alg.P]
    algp = EPA(Wp, Pp, alg.variant)
    spp = QuaternionicSpace(algp)
    Lp = nomizu_closed_form(spp)
    dm = sp.dm
    # full-m position of each m(Pi') position
    emb = list(range(sp.dmv)) + [sp.dmv + i for i in wprime]
    w0pos = [sp.dmv + i for i in w0]

    def lift(M: QMatrix) -> dict:
        return {(emb[i], emb[j]): v for (i, j), v in M.entries().items()}

    def w0_block(M: QMatrix) -> dict:
        return {(w0pos[i], w0pos[j]): v for (i, j), v in M.entries().items()}
    W0mono = {key: QMatrix(val.num[w0][:, w0], val.den) for key, val in W.mono.items()} if w0 else {}
    L = _k_part(sp)
    gprime_to_g = {gp: (alg.s(wprime[gp - algp.w0]) if gp >= algp.w0 else gp) for gp in Lp}
    for gp, M in Lp.items():
        g = gprime_to_g[gp]
        if g in L and g not in sp.m_pos:
            continue
        ent = lift(M)
        if w0:
            om = spp.omega_coefficients(M)
            blk = QMatrix.zeros(len(w0), len(w0))
            for al, (be, ga) in CYCLIC.items():
                blk = blk + W0mono[(be - 1, ga - 1)].scale(om[al - 1])
            if g in [sp._gindex(0, a) for a in range(1, sp.R + 1)]:
                a = [sp._gindex(0, a) for a in range(1, sp.R + 1)].index(g) + 1
                blk = blk + (W0mono[(0, 1)] @ W0mono[(2, 2 + a)]).scale(HALF)
            ent.update(w0_block(blk))
        L[g] = QMatrix.from_dict(ent, (dm, dm))
    super_ = alg.variant == SYMMETRIC
    for t in w0:
        g = alg.s(t)
        ent = {}
        for xpos in emb:
            gx = sp.m_indices[xpos]
            col = L[gx] @ sp.basis_vector(sp.wpos(t))
            if super_ and sp.parity[xpos]:
                col = -col
            col = col - sp.project(alg.bracket_basis(g, gx))
            for (u, _), v in col.entries().items():
                ent[(u, xpos)] = v
        L[g] = QMatrix.from_dict(ent, (dm, dm))
    return L


# ------------------------------------------------------------ Riemannian case

def N_of(q: int) -> int:
    if q >= 8:
        return 16 * N_of(q - 8)
    return [1, 1, 1, 1, 2, 4, 8, 8][q]


def alekseevsky_labels(alg: EPA) -> dict:
    if alg.variant != ALTERNATING or alg.p != 3:
        raise NotRiemannian("Riemannian only for p = 3 in the even variant")
    b = canonical_b(alg)
    if inertia(-b).n_plus != alg.W.dim:
        raise NotRiemannian("-b is not positive definite")
    sp = QuaternionicSpace(alg)
    q = alg.q
    dimH = sp.dm // 4
    lp, lm = alg.W.blocks.count("S+"), alg.W.blocks.count("S-")
    l = len(alg.W.blocks)
    if q == 3:
        fam, name = "W", f"W({lp},{lm})"
    elif q == 0:
        fam, name = "quaternionic hyperbolic", f"Sp({l + 1},1)/Sp({l + 1})Sp(1)"
    elif q == 1:
        fam, name = "SU(l+2,2)-type", f"SU({l + 2},2)/S(U({l + 2})xU(2))"
    elif q == 2:
        fam, name = "T", f"T({l})"
    elif lp + lm:
        fam, name = "V", f"V({lp},{lm},{q - 3})"
    else:
        fam, name = "V", f"V({l},{q - 3})"
    return {"dim_H": dimH, "predicted_dim_H": q + 1 + l * N_of(q), "family": fam, "name": name,
            "l": l}
