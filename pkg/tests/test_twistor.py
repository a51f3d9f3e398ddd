from fractions import Fraction

import pytest

from conftest import levi_civita, space
from quatpoincare.errors import ClosureViolation
from quatpoincare.exactla import GaussianRational
from quatpoincare.homgeom import nomizu_degenerate_extension
from quatpoincare.twistor import (
    ComplexSubspace, build_h, build_z_and_lift, check_distribution_invariance,
    frobenius_form, z01_structure,
)


def twistor(key, kernel=None):
    sp = space(*key)
    L = levi_civita(*key) if kernel is None else nomizu_degenerate_extension(sp, kernel)
    return build_z_and_lift(sp, L)


def neg(v):
    return {k: -GaussianRational.coerce(x) for k, x in v.items()}


def test_horizontal_lift_examples():
    td = twistor((3, 0, ("Sigma",)))
    sp = td.sp
    e2 = sp._gindex(2, 0)
    assert td.lift({e2: 1}) == {e2: 1, td.e13: 1}
    assert td.lift({0: 1}) == {0: 1}


def test_bbJ_squares_to_minus_one():
    td = twistor((3, 1, ("Sigma",)))
    for g in td.z_basis:
        img = {}
        for k, c in td.bbJ(g).items():
            for k2, c2 in td.bbJ(k).items():
                img[k2] = img.get(k2, 0) + c * c2
        assert {k: v for k, v in img.items() if v} == {g: -1}


@pytest.mark.parametrize("key,dims", [
    ((3, 0, ("Sigma",)), (6, 4, 11)), ((3, 1, ("Sigma",)), (8, 6, 15)),
    ((3, 2, ("Sigma",)), (11, 8, 20)),
])
def test_distribution_invariance(key, dims):
    r = check_distribution_invariance(twistor(key))
    assert r["h_subalgebra"] and r["invariant"] and r["codimension_one"]
    assert (r["dim_h"], r["dim_hor10"], r["dim_g"]) == dims


def test_build_h():
    td = twistor((3, 0, ("Sigma",)))
    assert build_h(td).dim == 6


def _basis(vectors, N):
    out = []
    for v in vectors:
        if ComplexSubspace(out + [v], N).dim > len(out):
            out.append(v)
    return out


def test_dropping_h_vector_breaks_invariance():
    td = twistor((3, 0, ("Sigma",)))
    basis = _basis(td.h_vectors(), td.N)
    hor = td.hor10()
    assert len(basis) == 6
    failures = 0
    for drop in range(len(basis)):
        h = basis[:drop] + basis[drop + 1:]
        total = ComplexSubspace(h + hor, td.N)
        if any(not total.contains(td.bracket(x, y)) for x in h for y in h + hor):
            failures += 1
    assert failures > 0


def test_tampered_complex_structure_raises():
    td = twistor((3, 0, ("Sigma",)))
    good = td.bbJ
    td.bbJ = lambda g: neg(good(g)) if g == td.e12 else good(g)
    with pytest.raises(ClosureViolation):
        build_h(td)


@pytest.mark.parametrize("key", [(3, 0, ("Sigma",)), (3, 1, ("Sigma",)), (3, 2, ("Sigma",))])
def test_contact_nondegenerate(key):
    r = frobenius_form(twistor(key))
    assert r["verdict"] == "contact" and r["rank"] == r["dim"]
    assert r["cross_zero"] and r["mV_nondegenerate"] and r["formula_ok"]


@pytest.mark.parametrize("key,kernel,rank,dim", [
    ((3, 0, ("Sigma", "Sigma"), (1, 0)), [1], 4, 6),
    ((3, 0, ("Sigma",), (0,)), [0], 2, 4),
])
def test_not_contact_degenerate(key, kernel, rank, dim):
    td = twistor(key, kernel)
    assert check_distribution_invariance(td)["invariant"]
    r = frobenius_form(td)
    assert r["verdict"] == "not-contact" and (r["rank"], r["dim"]) == (rank, dim)
    assert r["cross_zero"] and r["mV_nondegenerate"] and r["formula_ok"]


def test_rank_deficit_equals_kernel_dimension():
    """[DERIVED] the W part loses half the real dimension of ker Pi."""
    r = frobenius_form(twistor((3, 0, ("Sigma", "Sigma"), (1, 0)), [1]))
    assert r["dim"] - r["rank"] == 4 // 2


@pytest.mark.parametrize("key", [(3, 0, ("Sigma",)), (3, 1, ("Sigma",))])
def test_z01_structure(key):
    r = z01_structure(twistor(key))
    assert all(r.values()), r


def test_complex_subspace_membership():
    i = GaussianRational(0, 1)
    sub = ComplexSubspace([{0: GaussianRational(1), 1: i}], 3)
    assert sub.dim == 1
    assert sub.contains({0: i, 1: GaussianRational(-1)})
    assert not sub.contains({0: GaussianRational(1), 1: GaussianRational(1)})
    assert not sub.contains({2: Fraction(1)})
