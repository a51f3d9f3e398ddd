"""Real Clifford algebras Cl(p,q) and irreducible modules of their even parts.

Convention: v*v = -<v,v>, so a positive basis vector squares to -1 and a
negative one to +1.  Basis indices 0..p-1 are positive, p..p+q-1 negative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import InvalidBlockLabel, InvalidSignature
from .exactla import QMatrix, block_diag, kron, rank, vstack

_J = QMatrix.from_rows([[0, -1], [1, 0]])
_X = QMatrix.from_rows([[0, 1], [1, 0]])
_Z = QMatrix.from_rows([[1, 0], [0, -1]])

BLOCK_LABELS = ("Sigma", "S+", "S-")


def _quaternion_left(u: int) -> QMatrix:
    # left multiplication by 1, i, j, k on H with basis (1, i, j, k)
    table = {(1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    ent = {}
    for b in range(4):
        if b == 0:
            s, img = 1, u
        else:
            s, img = table[(u, b)]
        ent[(img, b)] = s
    return QMatrix.from_dict(ent, (4, 4))


def _seq_product(mats, n):
    out = QMatrix.identity(n)
    for m in mats:
        out = out @ m
    return out


@lru_cache(maxsize=None)
def irreducible_generators(a: int, b: int) -> tuple[tuple[QMatrix, ...], tuple[QMatrix, ...]]:
    """Irreducible real module of the algebra with a generators squaring to -1
    and b anticommuting generators squaring to +1.

    Returns (squares -1, squares +1).
    """
    if a < 0 or b < 0:
        raise InvalidSignature((a, b))
    if (a, b) == (0, 0):
        return (), ()
    if (a, b) == (1, 0):
        return (_J,), ()
    if (a, b) == (0, 1):
        return (), (QMatrix.identity(1),)
    if (a, b) == (2, 0):
        return (_quaternion_left(1), _quaternion_left(2)), ()
    if (a, b) == (3, 0):
        return (_quaternion_left(1), _quaternion_left(2), _quaternion_left(3)), ()
    if a > 0 and b > 0:
        neg, pos = irreducible_generators(a - 1, b - 1)
        d = (neg + pos)[0].shape[0] if neg + pos else 1
        one = QMatrix.identity(d)
        return (tuple(kron(g, _Z) for g in neg) + (kron(one, _J),),
                tuple(kron(g, _Z) for g in pos) + (kron(one, _X),))
    if b == 0:
        # four generators squaring to +1 turn into four squaring to -1
        neg, pos = irreducible_generators(a - 4, 4)
        w = _seq_product(pos, pos[0].shape[0])
        return neg + tuple(g @ w for g in pos), ()
    neg, pos = irreducible_generators(b - 1, 1)
    h = pos[0]
    return (), (h,) + tuple(h @ f for f in neg)


def _metric(p: int, q: int) -> list[int]:
    return [1] * p + [-1] * q


@dataclass
class CliffordRep:
    p: int
    q: int
    generators: list[QMatrix]

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0] if self.generators else 1

    @property
    def metric(self) -> list[int]:
        return _metric(self.p, self.q)


def product(mats, indices, n) -> QMatrix:
    out = QMatrix.identity(n)
    for i in indices:
        out = out @ mats[i]
    return out


def build_clifford(p: int, q: int) -> CliffordRep:
    """Irreducible module of Cl(p,q); when two classes exist, the one on which
    the full volume element acts as +1."""
    if p < 0 or q < 0 or p + q == 0:
        raise InvalidSignature((p, q))
    neg, pos = irreducible_generators(p, q)
    gens = list(neg) + list(pos)
    n = gens[0].shape[0]
    if (p + q) % 2 == 1:
        vol = product(gens, range(p + q), n)
        if vol == -QMatrix.identity(n):
            gens[-1] = -gens[-1]
    return CliffordRep(p, q, gens)


def volume_element(rep: CliffordRep, indices) -> QMatrix:
    return product(rep.generators, list(indices), rep.dim)


# ------------------------------------------------------------- even modules

def _has_semispinors(p: int, q: int) -> bool:
    return (p - q) % 4 == 0


def _irreducible_even(p: int, q: int, sign: int) -> dict[tuple[int, int], QMatrix]:
    """Quadratic monomials e_i e_j acting on an irreducible Cl^0(p,q)-module,
    via Cl^0(p,q) = algebra generated by g_k = e_k e_d (k != d)."""
    eta = _metric(p, q)
    n = p + q
    d = p - 1 if p >= 1 else n - 1
    others = [k for k in range(n) if k != d]
    # g_k^2 = -eta_k*eta_d
    minus = [k for k in others if eta[k] * eta[d] == 1]
    plus = [k for k in others if eta[k] * eta[d] == -1]
    neg, pos = irreducible_generators(len(minus), len(plus))
    gen = dict(zip(minus, neg))
    gen.update(zip(plus, pos))
    dim = (neg + pos)[0].shape[0] if neg + pos else 1
    one = QMatrix.identity(dim)
    mono = {}

    def fill():
        for i in range(n):
            mono[(i, i)] = one.scale(-eta[i])
        for i in others:
            mono[(i, d)] = gen[i]
            mono[(d, i)] = -gen[i]
            for j in others:
                if i != j:
                    mono[(i, j)] = (gen[i] @ gen[j]).scale(eta[d])

    fill()
    if _has_semispinors(p, q) and n >= 2:
        vol = full_volume(mono, n, dim)
        if vol != one.scale(sign):
            k = others[0]
            gen[k] = -gen[k]
            fill()
    return mono


def full_volume(mono, n, dim) -> QMatrix:
    out = QMatrix.identity(dim)
    for i in range(0, n - 1, 2):
        out = out @ mono[(i, i + 1)]
    return out


@dataclass
class SpinorModule:
    """Direct sum of labeled irreducible modules of the even Clifford algebra."""

    p: int
    q: int
    blocks: list[str]
    block_dims: list[int]
    mono: dict[tuple[int, int], QMatrix] = field(repr=False)

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return sum(self.block_dims)

    @property
    def metric(self) -> list[int]:
        return _metric(self.p, self.q)

    def offsets(self) -> list[int]:
        out, o = [], 0
        for d in self.block_dims:
            out.append(o)
            o += d
        return out

    def block_slice(self, k: int) -> slice:
        o = self.offsets()[k]
        return slice(o, o + self.block_dims[k])

    def even_product(self, indices) -> QMatrix:
        """Action of e_{i1} e_{i2} ... for an even-length index list."""
        indices = list(indices)
        if len(indices) % 2:
            raise ValueError("even_product needs an even number of factors")
        out = QMatrix.identity(self.dim)
        for a, b in zip(indices[::2], indices[1::2]):
            out = out @ self.mono[(a, b)]
        return out


def parse_blocks(spec: str) -> list[str]:
    """'Sigma*2,S+*1' -> ['Sigma', 'Sigma', 'S+']."""
    out: list[str] = []
    spec = spec.strip()
    if not spec:
        return out
    for part in spec.split(","):
        part = part.strip()
        label, _, k = part.partition("*")
        label = label.strip()
        if label not in BLOCK_LABELS:
            raise InvalidBlockLabel(label)
        k = k.strip()
        if k and not k.isdigit():
            raise InvalidBlockLabel(f"bad multiplicity in {part!r}")
        count = int(k) if k else 1
        out.extend([label] * count)
    return out


def format_blocks(blocks: list[str]) -> str:
    parts = []
    for b in blocks:
        if parts and parts[-1][0] == b:
            parts[-1][1] += 1
        else:
            parts.append([b, 1])
    return ",".join(f"{b}*{k}" for b, k in parts)


def even_module(p: int, q: int, blocks: list[str] | str) -> SpinorModule:
    if p < 0 or q < 0 or p + q == 0:
        raise InvalidSignature((p, q))
    if isinstance(blocks, str):
        blocks = parse_blocks(blocks)
    semi = _has_semispinors(p, q) and p + q >= 2
    per = []
    for lab in blocks:
        if lab not in BLOCK_LABELS:
            raise InvalidBlockLabel(lab)
        if semi == (lab == "Sigma"):
            raise InvalidBlockLabel(
                f"{lab} is not an irreducible label for signature ({p},{q})")
        per.append(_cached_block(p, q, lab))
    n = p + q
    if per:
        mono = {key: block_diag([m[key] for m in per]) for key in per[0]}
        dims = [m[(0, 0)].shape[0] for m in per]
    else:
        mono = {(i, j): QMatrix.zeros(0, 0) for i in range(n) for j in range(n)}
        dims = []
    return SpinorModule(p, q, list(blocks), dims, mono)


@lru_cache(maxsize=None)
def _cached_block(p: int, q: int, label: str):
    return _irreducible_even(p, q, -1 if label == "S-" else 1)


def faithful_even_module(p: int, q: int) -> SpinorModule:
    if _has_semispinors(p, q) and p + q >= 2:
        return even_module(p, q, ["S+", "S-"])
    return even_module(p, q, ["Sigma"])


def spin_generator(i: int, j: int, W: SpinorModule) -> QMatrix:
    """Action of e_i ^ e_j in o(V) on W, i.e. -1/2 e_i e_j."""
    if i == j:
        raise ValueError("spin generator needs distinct indices")
    return W.mono[(i, j)].scale(Fraction(-1, 2))


def wedge_on_vectors(i: int, j: int, metric: list[int]) -> QMatrix:
    """(e_i ^ e_j)(z) = <e_j,z> e_i - <e_i,z> e_j as a matrix on V."""
    n = len(metric)
    return QMatrix.from_dict({(i, j): metric[j], (j, i): -metric[i]}, (n, n))


def iota_embedding(p: int, q: int, pprime: int = 3) -> dict:
    """Images of the E' basis vectors x -> e_1...e_{p'} x in Cl^0(p,q),
    on the faithful even module, with the algebra checks."""
    if pprime % 4 != 3 or pprime > p:
        raise InvalidSignature((p, q, pprime))
    W = faithful_even_module(p, q)
    n = p + q
    eta = W.metric
    lead = list(range(pprime))
    images = {a: W.even_product(lead + [a]) for a in range(pprime, n)}
    one = QMatrix.identity(W.dim)
    squares = all(images[a] @ images[a] == one.scale(eta[a]) for a in images)
    anti = all((images[a] @ images[b] + images[b] @ images[a]).is_zero()
               for a, b in combinations(images, 2))
    keys = sorted(images)
    monos = []
    for k in range(len(keys) + 1):
        for sub in combinations(keys, k):
            m = one
            for a in sub:
                m = m @ images[a]
            monos.append(m.num.reshape(1, -1) * 1)
    flat = vstack([QMatrix(row, 1) for row in monos]) if monos else QMatrix.zeros(0, 0)
    injective = rank(flat) == len(monos)
    return {"images": images, "squares_ok": squares, "anticommute_ok": anti,
            "injective": injective}
