import pytest

from quatpoincare.superepa import NO_SUPEREXTENSION, NoSuperextension, build_super_instance


def test_super_3_0_pipeline():
    r = build_super_instance(3, 0, "Sigma*1")
    assert r["solver_dim"] == 3 and r["jacobi"]
    assert r["kernel"]["equal"] and r["kernel"]["dim_ker_b"] == 0
    assert r["oracle_equal"] and r["torsion_zero"] and r["metric"]
    assert r["normalizer"] and r["negative_control_fails"]
    assert r["einstein_c"] == -2 and r["Q_preserved_by_R"]


@pytest.mark.parametrize("coeffs", [[0, 1, 0], [0, 0, 1]])
def test_super_3_0_other_basis_elements(coeffs):
    r = build_super_instance(3, 0, "Sigma*1", coefficients=coeffs)
    assert r["oracle_equal"] and r["torsion_zero"] and r["einstein_c"] == -2


def test_super_3_1_pipeline():
    r = build_super_instance(3, 1, "Sigma*1")
    assert r["solver_dim"] == 1 and r["oracle_equal"] and r["torsion_zero"]
    assert r["einstein_c"] == -3


def test_super_block_degenerate():
    r = build_super_instance(3, 0, "Sigma*2", scales=[1, 0], kernel_blocks=[1])
    assert r["kernel"]["equal"] and r["kernel"]["dim_ker_pi"] == 4
    assert r["torsion_zero"] and r["normalizer"] and r["negative_control_fails"]


def test_super_zero_pi():
    r = build_super_instance(3, 0, "Sigma*1", scales=[0], kernel_blocks=[0])
    assert r["kernel"]["dim_ker_b"] == 4 and r["torsion_zero"]


@pytest.mark.parametrize("p,q,blocks", [(3, 2, "Sigma*1"), (7, 0, "Sigma*1"), (3, 3, "S+*1")])
def test_no_superextension(p, q, blocks):
    with pytest.raises(NoSuperextension, match=NO_SUPEREXTENSION):
        build_super_instance(p, q, blocks)


def test_super_low_signature_algebra_only():
    r = build_super_instance(2, 1, "Sigma*1")
    assert r["jacobi"] and "space" not in r
