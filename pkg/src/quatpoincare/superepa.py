"""Superextended Poincare algebras: symmetric Pi on an odd W, run through the
same pipeline as the even case."""
from __future__ import annotations

from .clifford import even_module
from .epa import SYMMETRIC, build_epa, direct_sum_pi, kernel_compare, normalize_pi, pi_from_coefficients, solve_equivariant
from .errors import QuatPoincareError
from .homgeom import (QuaternionicSpace, check_normalizer, curvature_and_einstein, metricity,
                      negative_control, nomizu_closed_form, nomizu_degenerate_extension,
                      nomizu_equal, nomizu_koszul_oracle, torsion)

NO_SUPEREXTENSION = "no superextension exists for this module"


class NoSuperextension(QuatPoincareError):
    pass


def super_kernel_compare(alg) -> dict:
    return kernel_compare(alg)


def build_super_instance(p: int, q: int, blocks, coefficients=None, scales=None,
                         kernel_blocks=None, geometry: bool = True) -> dict:
    """Solve, build, verify and (for p >= 3) run the geometry of a super instance.

    Pi is either a combination of the symmetric solver basis (coefficients)
    or a block direct sum of normalized block solutions (scales).
    """
    W = even_module(p, q, blocks)
    if scales is not None:
        P = direct_sum_pi(W, scales, SYMMETRIC)
        basis_dim = None
    else:
        basis = solve_equivariant(W, SYMMETRIC)
        basis_dim = len(basis)
        if not basis:
            raise NoSuperextension(NO_SUPEREXTENSION)
        basis = [normalize_pi(W, P) for P in basis] if p >= 3 else basis
        coefficients = coefficients or [1] + [0] * (len(basis) - 1)
        P = pi_from_coefficients(basis, coefficients)
    alg = build_epa(W, P, SYMMETRIC)
    out = {"algebra": alg, "solver_dim": basis_dim, "jacobi": True}
    if p < 3 or not geometry:
        return out
    out["kernel"] = super_kernel_compare(alg)
    sp = QuaternionicSpace(alg)
    out["space"] = sp
    if sp.is_nondegenerate():
        Lc = nomizu_closed_form(sp)
        Lk = nomizu_koszul_oracle(sp)
        out["oracle_equal"] = nomizu_equal(Lc, Lk)[0]
        L = Lc
    else:
        if kernel_blocks is None:
            raise QuatPoincareError("degenerate super instance needs kernel blocks")
        L = nomizu_degenerate_extension(sp, kernel_blocks)
    out["L"] = L
    out["torsion_zero"] = torsion(sp, L)["zero"]
    out["normalizer"] = check_normalizer(sp, L)["normalizes"]
    out["negative_control_fails"] = not check_normalizer(sp, negative_control(sp, L))["normalizes"]
    if sp.is_nondegenerate():
        out["metric"] = metricity(sp, L)["metric"]
        ce = curvature_and_einstein(sp, L)
        out["einstein_c"] = ce["einstein_c"]
        out["Q_preserved_by_R"] = ce["Q_preserved_by_R"]
    return out
