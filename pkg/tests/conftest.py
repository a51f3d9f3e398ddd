import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quatpoincare.clifford import even_module
from quatpoincare.epa import ALTERNATING, build_epa, direct_sum_pi, riemannian_scales
from quatpoincare.homgeom import QuaternionicSpace, nomizu_closed_form


@lru_cache(maxsize=None)
def instance(p, q, blocks, scales=None, variant=ALTERNATING):
    """Block direct-sum algebra; scales=None means Riemannian signs."""
    W = even_module(p, q, blocks)
    if scales is None:
        scales = tuple(riemannian_scales(W, variant))
    return build_epa(W, direct_sum_pi(W, list(scales), variant), variant)


@lru_cache(maxsize=None)
def space(p, q, blocks, scales=None, variant=ALTERNATING):
    return QuaternionicSpace(instance(p, q, blocks, scales, variant))


@lru_cache(maxsize=None)
def levi_civita(p, q, blocks, scales=None, variant=ALTERNATING):
    return nomizu_closed_form(space(p, q, blocks, scales, variant))


@pytest.fixture(scope="session")
def inst():
    return instance


@pytest.fixture(scope="session")
def geo():
    return space


@pytest.fixture(scope="session")
def lc():
    return levi_civita
