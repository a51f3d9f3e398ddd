from fractions import Fraction

import pytest

from conftest import instance, levi_civita, space
from quatpoincare.clifford import spin_generator
from quatpoincare.epa import SYMMETRIC
from quatpoincare.errors import DegenerateMetric, KernelMismatch, NotRiemannian
from quatpoincare.exactla import QMatrix
from quatpoincare.homgeom import (
    ISOTROPY_SIGN, N_of, QuaternionicSpace, alekseevsky_labels, build_metric,
    build_quaternionic_frame, check_normalizer, curvature, curvature_and_einstein,
    isotropy_split, metric_signature, metricity, negative_control, nomizu_closed_form,
    nomizu_degenerate_extension, nomizu_equal, nomizu_koszul_oracle, torsion,
)

NONDEGENERATE = [(3, 0, ("Sigma",)), (3, 1, ("Sigma",)), (3, 2, ("Sigma",)), (7, 0, ("Sigma",))]
# [DERIVED] Einstein constants Ric = c g; each also checked for exact proportionality
EINSTEIN = {(3, 0, ("Sigma",)): Fraction(-4), (3, 1, ("Sigma",)): Fraction(-5),
            (3, 2, ("Sigma",)): Fraction(-6), (7, 0, ("Sigma",)): Fraction(-9)}


@pytest.mark.parametrize("key,dm,dmv", [
    ((3, 0, ("Sigma",)), 8, 4), ((3, 2, ("Sigma",)), 16, 12), ((7, 0, ("Sigma",)), 28, 20),
    ((3, 1, ("Sigma", "Sigma")), 16, 8),
])
def test_isotropy_split_dimensions(key, dm, dmv):
    r = isotropy_split(instance(*key))
    assert (r["dim_m"], r["dim_mV"]) == (dm, dmv)
    alg = instance(*key)
    assert len(r["k"]) + r["dim_m"] == alg.dim


@pytest.mark.parametrize("key,signature", [
    ((3, 0, ("Sigma",)), (8, 0, 0)), ((3, 1, ("Sigma",)), (12, 0, 0)),
    ((3, 2, ("Sigma",)), (16, 0, 0)), ((7, 0, ("Sigma",)), (8, 20, 0)),
])
def test_metric_signature(key, signature):
    r = metric_signature(space(*key))
    assert r["inertia"] == signature
    assert r["positive_definite"] == r["predicted_positive"] == (signature[1] == 0)


def test_signature_flips_with_sign_of_b():
    r = metric_signature(space(3, 0, ("Sigma",), (-1,)))
    assert not r["positive_definite"] and not r["predicted_positive"]


def test_degenerate_metric_rejected():
    with pytest.raises(DegenerateMetric):
        build_metric(instance(3, 0, ("Sigma",), (0,)))
    with pytest.raises(DegenerateMetric):
        nomizu_closed_form(space(3, 0, ("Sigma", "Sigma"), (1, 0)))


@pytest.mark.parametrize("key", NONDEGENERATE + [(3, 0, ("Sigma",), (0,))])
def test_quaternionic_frame(key):
    r = build_quaternionic_frame(space(*key))
    assert r["quaternionic"] and r["hermitian"]


def test_J_on_W_is_spin_action():
    sp = space(3, 1, ("Sigma",))
    W = sp.alg.W
    for al, (be, ga) in {1: (2, 3), 2: (3, 1), 3: (1, 2)}.items():
        JW = QMatrix(sp.J[al].num[sp.dmv:, sp.dmv:], sp.J[al].den)
        assert spin_generator(be - 1, ga - 1, W).scale(-2) == JW


def test_J_relation_on_W():
    W = instance(3, 0, ("Sigma",)).W
    assert W.mono[(1, 2)] @ W.mono[(2, 0)] == W.mono[(0, 1)]


@pytest.mark.parametrize("key", NONDEGENERATE)
def test_closed_form_equals_koszul(key):
    sp = space(*key)
    ok, bad = nomizu_equal(levi_civita(*key), nomizu_koszul_oracle(sp))
    assert ok, bad


def test_closed_form_equals_koszul_super():
    sp = space(3, 0, ("Sigma",), None, SYMMETRIC)
    assert nomizu_equal(nomizu_closed_form(sp), nomizu_koszul_oracle(sp))[0]


def test_closed_form_equals_koszul_two_blocks():
    key = (3, 1, ("Sigma", "Sigma"), (-1, 1))
    assert nomizu_equal(levi_civita(*key), nomizu_koszul_oracle(space(*key)))[0]


def test_isotropy_acts_by_minus_ad():
    sp = space(3, 1, ("Sigma",))
    K = nomizu_koszul_oracle(sp)
    assert ISOTROPY_SIGN == -1
    for x in sp.k_indices:
        assert K[x] == -sp.ad_on_m(x)


def test_closed_form_landmarks():
    sp, L = space(3, 1, ("Sigma",)), levi_civita(3, 1, ("Sigma",))
    alg = sp.alg
    assert L[0].is_zero()
    for t in range(alg.W.dim):
        img = L[alg.s(t)] @ sp.basis_vector(sp.pos(0, 0))
        assert img == sp.basis_vector(sp.wpos(t)).scale(Fraction(1, 2))
    om = check_normalizer(sp, L)["omega"]
    for al in (1, 2, 3):
        assert om[sp._gindex(al, 0)] == tuple(Fraction(1, 2) if b == al else 0 for b in (1, 2, 3))


def test_isotropy_of_eprime_centralizes_Q():
    sp, L = space(3, 2, ("Sigma",)), levi_civita(3, 2, ("Sigma",))
    x = sp.alg.wedge_index[(3, 4)]
    for a in (1, 2, 3):
        assert L[x] @ sp.J[a] == sp.J[a] @ L[x]


@pytest.mark.parametrize("key", NONDEGENERATE + [(3, 0, ("Sigma",), None, SYMMETRIC)])
def test_torsion_metric_normalizer(key):
    sp, L = space(*key), levi_civita(*key)
    assert torsion(sp, L)["zero"]
    assert metricity(sp, L)["metric"]
    assert check_normalizer(sp, L)["normalizes"]
    assert not check_normalizer(sp, negative_control(sp, L))["normalizes"]


def test_zero_map_has_torsion():
    sp = space(3, 0, ("Sigma",))
    zero = {g: QMatrix.zeros(sp.dm, sp.dm) for g in range(sp.alg.dim)}
    assert not torsion(sp, zero)["zero"]


@pytest.mark.parametrize("key", NONDEGENERATE)
def test_einstein(key):
    r = curvature_and_einstein(space(*key), levi_civita(*key))
    assert r["einstein"] and r["einstein_c"] == EINSTEIN[key]
    assert r["Q_preserved_by_R"]
    assert r["ricci"] == space(*key).gram.scale(r["einstein_c"])


def test_einstein_super():
    """[DERIVED] super Ricci as a supertrace: c = -2 on (3,0), -3 on (3,1)."""
    for key, c in (((3, 0, ("Sigma",)), -2), ((3, 1, ("Sigma",)), -3)):
        sp = space(*key, None, SYMMETRIC)
        r = curvature_and_einstein(sp, nomizu_closed_form(sp))
        assert r["einstein_c"] == c and r["Q_preserved_by_R"]


def test_einstein_constant_follows_quaternionic_dimension():
    for key, c in EINSTEIN.items():
        assert c == -(space(*key).dm // 4 + 2)


def test_flat_on_abelian_pairs():
    sp = space(3, 0, ("Sigma",), (0,))
    zero = {g: QMatrix.zeros(sp.dm, sp.dm) for g in range(sp.alg.dim)}
    Rc = curvature(sp, zero)
    for i in range(sp.dmv, sp.dm):
        for j in range(i, sp.dm):
            assert Rc[(i, j)].is_zero()


# ---- degenerate extension

@pytest.mark.parametrize("key,kernel,variant", [
    ((3, 0, ("Sigma", "Sigma"), (1, 0)), [1], None),
    ((3, 1, ("Sigma", "Sigma"), (1, 0)), [1], None),
    ((3, 0, ("Sigma", "Sigma"), (0, 1)), [0], None),
    ((3, 0, ("Sigma",), (0,)), [0], None),
    ((3, 0, ("Sigma", "Sigma"), (1, 0)), [1], SYMMETRIC),
])
def test_degenerate_extension(key, kernel, variant):
    sp = space(*key) if variant is None else space(*key, SYMMETRIC)
    L = nomizu_degenerate_extension(sp, kernel)
    assert torsion(sp, L)["zero"]
    norm = check_normalizer(sp, L)
    assert norm["normalizes"]
    W = sp.alg.W
    for k in kernel:
        for t in range(W.block_slice(k).start, W.block_slice(k).stop):
            g = sp.alg.s(t)
            assert norm["omega"][g] == (0, 0, 0)
            assert all(L[g] @ sp.J[a] == sp.J[a] @ L[g] for a in (1, 2, 3))


def test_degenerate_extension_zero_pi_has_no_W_omega():
    sp = space(3, 0, ("Sigma",), (0,))
    om = check_normalizer(sp, nomizu_degenerate_extension(sp, [0]))["omega"]
    assert all(om[sp.alg.s(t)] == (0, 0, 0) for t in range(4))


def test_degenerate_extension_wrong_blocks():
    sp = space(3, 0, ("Sigma", "Sigma"), (1, 0))
    with pytest.raises(KernelMismatch):
        nomizu_degenerate_extension(sp, [0])
    with pytest.raises(KernelMismatch):
        nomizu_degenerate_extension(sp, [])


# ---- Riemannian classification

@pytest.mark.parametrize("q", range(5))
@pytest.mark.parametrize("l", [1, 2])
def test_dimension_formula(q, l):
    blocks = ("S+",) * l if q == 3 else ("Sigma",) * l
    lab = alekseevsky_labels(instance(3, q, blocks))
    assert lab["dim_H"] == lab["predicted_dim_H"] == q + 1 + l * N_of(q)


def test_N_table():
    assert [N_of(q) for q in range(5)] == [1, 1, 1, 1, 2]
    assert N_of(8) == 16 * N_of(0)


def test_family_labels():
    lab = alekseevsky_labels(instance(3, 0, ("Sigma",)))
    assert (lab["dim_H"], lab["family"], lab["name"]) == (2, "quaternionic hyperbolic",
                                                          "Sp(2,1)/Sp(2)Sp(1)")
    lab = alekseevsky_labels(instance(3, 1, ()))
    assert (lab["dim_H"], lab["family"]) == (2, "SU(l+2,2)-type")
    assert alekseevsky_labels(instance(3, 2, ("Sigma",)))["name"] == "T(1)"
    assert alekseevsky_labels(instance(3, 3, ("S+", "S-")))["name"] == "W(1,1)"
    lab = alekseevsky_labels(instance(3, 4, ("Sigma",)))
    assert (lab["dim_H"], lab["family"]) == (7, "V")


def test_not_riemannian():
    with pytest.raises(NotRiemannian):
        alekseevsky_labels(instance(7, 0, ("Sigma",)))
    with pytest.raises(NotRiemannian):
        alekseevsky_labels(instance(3, 0, ("Sigma",), (-1,)))


def test_space_needs_three_positive_directions():
    from quatpoincare.errors import InvalidSignature
    with pytest.raises(InvalidSignature):
        QuaternionicSpace(instance(2, 0, ()))


def test_semispinor_V_family_label():
    """q = 7 carries semispinors; labels count both chiralities."""
    from quatpoincare.clifford import even_module
    from quatpoincare.epa import build_epa, direct_sum_pi, riemannian_scales
    W = even_module(3, 7, "S+*1,S-*1")
    alg = build_epa(W, direct_sum_pi(W, riemannian_scales(W)), check=False)
    lab = alekseevsky_labels(alg)
    assert (lab["dim_H"], lab["name"]) == (24, "V(1,1,4)") == (7 + 1 + 2 * N_of(7), lab["name"])
