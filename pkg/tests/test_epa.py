from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instance
from oracles import brute_jacobi, equivariant_dim_dense
from quatpoincare.clifford import even_module
from quatpoincare.epa import (
    ALTERNATING, SYMMETRIC, build_epa, canonical_b, check_ad_faithful_on_radical,
    check_b_equivariance, check_emb_gV, classify, decompose, direct_sum_pi, is_equivariant,
    kernel_compare, levi_properties, normalize_pi, pi_from_coefficients, solve_equivariant,
)
from quatpoincare.errors import InvalidSignature, JacobiViolation
from quatpoincare.exactla import QMatrix, same_column_span

# [DERIVED] solver dimensions, each confirmed by the dense kron oracle below
SOLVER_GOLDENS = [
    (3, 0, "Sigma*1", ALTERNATING, 1), (3, 1, "Sigma*1", ALTERNATING, 1),
    (3, 2, "Sigma*1", ALTERNATING, 1), (3, 0, "Sigma*2", ALTERNATING, 6),
    (3, 3, "S+*1,S-*1", ALTERNATING, 2), (3, 3, "S+*1", ALTERNATING, 1),
    (5, 0, "Sigma*1", ALTERNATING, 3), (2, 0, "Sigma*1", ALTERNATING, 0),
    (3, 0, "Sigma*1", SYMMETRIC, 3), (3, 1, "Sigma*1", SYMMETRIC, 1),
    (3, 2, "Sigma*1", SYMMETRIC, 0), (3, 0, "Sigma*2", SYMMETRIC, 10),
    (5, 0, "Sigma*1", SYMMETRIC, 1), (3, 3, "S+*1,S-*1", SYMMETRIC, 0),
]


@pytest.mark.parametrize("p,q,blocks,variant,dim", SOLVER_GOLDENS)
def test_solver_dimension(p, q, blocks, variant, dim):
    W = even_module(p, q, blocks)
    sols = solve_equivariant(W, variant)
    assert len(sols) == dim
    assert equivariant_dim_dense(W, variant == SYMMETRIC) == dim
    for P in sols:
        assert is_equivariant(W, P)
        sign = -1 if variant == ALTERNATING else 1
        assert all(x.T == x.scale(sign) for x in P)


@pytest.mark.parametrize("p,q", [(3, 4), (7, 0)])
def test_solver_irreducible_large(p, q):
    assert len(solve_equivariant(even_module(p, q, "Sigma*1"), ALTERNATING)) == 1


def test_solver_empty_module():
    assert solve_equivariant(even_module(3, 0, ""), ALTERNATING) == []


def _structure_dict(alg):
    return {k: dict(v) for k, v in alg.structure.items()}


@pytest.mark.parametrize("p,q,blocks,variant", [
    (3, 0, "Sigma*1", ALTERNATING), (3, 1, "Sigma*1", ALTERNATING),
    (3, 0, "Sigma*1", SYMMETRIC), (2, 1, "Sigma*1", SYMMETRIC),
])
def test_jacobi_matches_brute_force(p, q, blocks, variant):
    W = even_module(p, q, blocks)
    for P in solve_equivariant(W, variant):
        alg = build_epa(W, P, variant)
        assert alg.jacobi_violation() is None
        assert brute_jacobi(_structure_dict(alg), alg.parity, alg.dim) is None


def test_jacobi_violation_detected():
    W = even_module(3, 0, "Sigma*1")
    P = list(solve_equivariant(W)[0])
    bump = QMatrix.from_dict({(0, 1): 1, (1, 0): -1}, (4, 4))
    P[0] = P[0] + bump
    alg = build_epa(W, P, check=False)
    found = alg.jacobi_violation()
    assert found is not None
    assert brute_jacobi(_structure_dict(alg), alg.parity, alg.dim) is not None
    with pytest.raises(JacobiViolation):
        build_epa(W, P)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_super_jacobi_random_combinations(coeffs):
    W = even_module(3, 0, "Sigma*1")
    basis = solve_equivariant(W, SYMMETRIC)
    alg = build_epa(W, pi_from_coefficients(basis, coeffs), SYMMETRIC, check=False)
    assert alg.jacobi_violation() is None


def test_bracket_rules():
    alg = instance(3, 0, ("Sigma",))
    for t in range(alg.W.dim):
        assert alg.bracket({0: 1}, {alg.s(t): 1}) == {alg.s(t): Fraction(1, 2)}
    for k in range(3):
        assert alg.bracket({0: 1}, {alg.v(k): 1}) == {alg.v(k): 1}
    assert alg.graded_antisymmetry_ok()
    assert alg.labels[:4] == ["D", "e1^e2", "e1^e3", "e2^e3"]


def test_pi_variant_mismatch_fails_jacobi():
    W = even_module(3, 0, "Sigma*1")
    P = solve_equivariant(W, ALTERNATING)[0]
    with pytest.raises(JacobiViolation):
        build_epa(W, P, SYMMETRIC)


# ---- canonical form

def test_b_golden_3_0():
    """[DERIVED] normalized (3,0) solution: b = -Id."""
    alg = instance(3, 0, ("Sigma",))
    assert canonical_b(alg) == -QMatrix.identity(4)


def test_b_from_bracket_route():
    """b(s,t) = <e1, [e2 e3 s, t]> evaluated through the algebra bracket."""
    for key in [(3, 0, ("Sigma",)), (3, 1, ("Sigma",)), (3, 2, ("Sigma",))]:
        alg = instance(*key)
        W = alg.W
        M = W.even_product([1, 2])
        b = canonical_b(alg)
        for s in range(W.dim):
            x = {alg.s(u): M[u, s] for u in range(W.dim) if M[u, s]}
            for t in range(W.dim):
                val = alg.bracket(x, {alg.s(t): 1}).get(alg.v(0), 0)
                assert b[s, t] == W.metric[0] * val


@pytest.mark.parametrize("key", [
    (3, 0, ("Sigma",)), (3, 1, ("Sigma",)), (3, 2, ("Sigma",)), (3, 4, ("Sigma",)),
    (7, 0, ("Sigma",)), (3, 3, ("S+", "S-")), (3, 0, ("Sigma", "Sigma"), (1, 0)),
])
def test_b_properties_even(key):
    r = check_b_equivariance(instance(*key))
    assert r["ok"] and r["b_symmetric"]


@pytest.mark.parametrize("key", [(3, 0, ("Sigma",)), (3, 1, ("Sigma",))])
def test_b_properties_super(key):
    alg = instance(*key, variant=SYMMETRIC)
    r = check_b_equivariance(alg)
    assert r["ok"] and r["b_skew"]


def test_b_zero_pi():
    alg = instance(3, 0, ("Sigma",), (0,))
    assert canonical_b(alg).is_zero() and check_b_equivariance(alg)["ok"]


def test_b_frame_must_be_positive():
    with pytest.raises(InvalidSignature):
        canonical_b(instance(3, 1, ("Sigma",)), (0, 1, 3))


# ---- kernels and decomposition

@pytest.mark.parametrize("key,dim_ker", [
    ((3, 0, ("Sigma",)), 0), ((3, 0, ("Sigma",), (0,)), 4),
    ((3, 0, ("Sigma", "Sigma"), (1, 0)), 4), ((3, 1, ("Sigma", "Sigma"), (1, 0)), 4),
])
def test_kernel_pi_equals_kernel_b(key, dim_ker):
    k = kernel_compare(instance(*key))
    assert k["equal"] and k["dim_ker_pi"] == dim_ker


def test_kernel_is_second_block():
    k = kernel_compare(instance(3, 0, ("Sigma", "Sigma"), (1, 0)))
    block2 = QMatrix.from_columns([[0] * 4 + [int(i == j) for i in range(4)] for j in range(4)], 8)
    assert same_column_span(k["ker_pi"], block2)


def test_super_kernel():
    assert kernel_compare(instance(3, 0, ("Sigma", "Sigma"), (1, 0), SYMMETRIC))["dim_ker_b"] == 4
    assert kernel_compare(instance(3, 0, ("Sigma",), None, SYMMETRIC))["dim_ker_b"] == 0


def test_decompose_flags():
    d = decompose(instance(3, 0, ("Sigma",)))
    assert [x.flag for x in d["blocks"]] == ["definite-"]
    d = decompose(instance(3, 0, ("Sigma",), (0,)))
    assert [x.flag for x in d["blocks"]] == ["kernel"]
    d = decompose(instance(3, 0, ("Sigma", "Sigma"), (1, 0)))
    assert [x.flag for x in d["blocks"]] == ["definite-", "kernel"]
    assert d["b_orthogonal"] and d["pi_orthogonal"] and d["kernel_equal"]
    d = decompose(instance(3, 0, ("Sigma",), None, SYMMETRIC))
    assert [x.flag for x in d["blocks"]] == ["symplectic"]


def test_decompose_isotropic_pair():
    """Pi pairing two blocks only off-diagonally gives an isotropic pair."""
    W = even_module(3, 0, "Sigma*2")
    sols = solve_equivariant(W)
    for P in sols:
        alg = build_epa(W, P)
        b = canonical_b(alg)
        if b[0:4, 0:4].is_zero() and b[4:8, 4:8].is_zero() and not b.is_zero():
            flags = [x.flag for x in decompose(alg)["blocks"]]
            assert flags == ["isotropic-pair", "isotropic-pair"]
            return
    pytest.fail("no purely off-diagonal solution in the solver basis")


# ---- classification

def test_classify_examples():
    assert classify(instance(3, 0, ("Sigma",))).value == (0, 0, 1)
    assert classify(instance(3, 0, ("Sigma",), (0,))).value == (1, 0, 0)
    assert classify(instance(3, 0, ("Sigma", "Sigma"), (1, -1))).value == (0, 1, 1)


@pytest.mark.parametrize("key", [
    (3, 0, ("Sigma",)), (3, 0, ("Sigma", "Sigma"), (1, 0)),
    (3, 0, ("Sigma", "Sigma", "Sigma"), (1, 1, -1)), (3, 3, ("S+", "S-")),
    (3, 3, ("S+", "S+", "S-"), (1, -1, 0)),
])
def test_classify_invariance(key):
    alg = instance(*key)
    c = classify(alg)
    for s in (-1, 4, Fraction(1, 9)):
        other = build_epa(alg.W, [x.scale(s) for x in alg.P])
        assert classify(other) == c


def test_classify_super_rejected():
    with pytest.raises(ValueError):
        classify(instance(3, 0, ("Sigma",), None, SYMMETRIC))


def test_normalize_pi_positive_rescale():
    W = even_module(3, 1, "Sigma*1")
    P = solve_equivariant(W)[0]
    N = normalize_pi(W, [x.scale(7) for x in P])
    assert abs(canonical_b(build_epa(W, N)).entries()[min(canonical_b(build_epa(W, N)).entries())]) == 1
    assert normalize_pi(W, N) == N


# ---- structure

@pytest.mark.parametrize("key", [
    (3, 0, ("Sigma",)), (3, 1, ("Sigma",)), (3, 0, ("Sigma",), (0,)),
    (3, 0, ("Sigma",), None, SYMMETRIC),
])
def test_ad_faithful_on_radical(key):
    assert check_ad_faithful_on_radical(instance(*key))["faithful"]


def test_levi_two_step_iff_pi_nonzero():
    r = levi_properties(instance(3, 0, ("Sigma",)))
    assert r["two_step"] and not r["abelian"] and r["radical_ideal"]
    r = levi_properties(instance(3, 0, ("Sigma",), (0,)))
    assert r["abelian"] and not r["two_step"]


@pytest.mark.parametrize("p,q", [(3, 0), (3, 1), (2, 2), (7, 0)])
def test_emb_gV(p, q):
    r = check_emb_gV(p, q)
    assert r["homomorphism"] and r["injective"]


def test_direct_sum_scale_arity():
    with pytest.raises(ValueError):
        direct_sum_pi(even_module(3, 0, "Sigma*2"), [1])
