import cmath
import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quartic_qes.group import IDENTITY, BetaVector, GroupElement, compose
from quartic_qes.rep import (
    GeneratorId,
    PolyFunction,
    apply_generator,
    commutator,
    commutator_defect,
    expected_commutator,
    irrep_apply,
    scale_conjugate_defect,
)

X0, X1, X2, X3 = GeneratorId
B111 = BetaVector(1.0, 1.0, 1.0)


def test_x0_is_i_derivative():
    out = apply_generator(X0, B111, PolyFunction.monomial(2))
    assert out == PolyFunction((0,), (0, 2))


def test_x3_is_scalar():
    f = PolyFunction.real([1, -2, 3])
    assert apply_generator(X3, BetaVector(0, 0, 0.6), f) == f.scale(re=Fraction(0.6))


def test_x0_x1_relation_on_x():
    f = PolyFunction.monomial(1)
    d = commutator(X0, X1, B111, f) - apply_generator(X2, B111, f).times_i()
    assert d.is_zero()


@pytest.mark.parametrize("a,b", list(itertools.combinations(GeneratorId, 2)))
def test_all_commutators_exact(a, b):
    beta = BetaVector(-0.7, 0.41857142857142826, 0.1)
    assert commutator_defect(a, b, beta, degree=10) == 0.0
    assert commutator_defect(b, a, beta, degree=10) == 0.0


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.01, 5))
def test_commutators_random_beta(b1, b2, b3):
    beta = BetaVector(b1, b2, b3)
    for a, b in ((X0, X1), (X1, X2), (X0, X3), (X0, X2)):
        assert commutator_defect(a, b, beta, degree=6) == 0.0


def test_expected_commutator_is_nonzero_where_it_should_be():
    f = PolyFunction.monomial(3)
    assert not expected_commutator(X0, X1, B111, f).is_zero()
    assert expected_commutator(X1, X2, B111, f).is_zero()


def test_degree_growth_at_most_two():
    beta = BetaVector(0.5, -1.5, 2.0)
    for k in range(8):
        f = PolyFunction.monomial(k)
        for g in GeneratorId:
            assert apply_generator(g, beta, f).degree <= k + 2


@pytest.mark.parametrize("gid", list(GeneratorId))
@pytest.mark.parametrize("t", [0.5, 1, 2, 3])
def test_scaling_defects(gid, t):
    beta = BetaVector(0.3, -1.25, 0.6)
    assert scale_conjugate_defect(gid, beta, t, degree=10) <= 1e-12


def test_scaling_examples():
    assert scale_conjugate_defect(X3, B111, 7) == 0
    assert scale_conjugate_defect(X0, B111, 2, degree=5) == 0
    assert scale_conjugate_defect(X1, B111, 3, degree=5) == 0


def gauss(x):
    return cmath.exp(-0.5 * x * x + 0.3j * x)


def test_irrep_identity_and_translation():
    beta = BetaVector(0.2, 0.5, 1.0)
    for x in (-1.0, 0.0, 2.5):
        assert irrep_apply(IDENTITY, beta, gauss, x) == gauss(x)
        assert irrep_apply(GroupElement(0.7, 0, 0, 0), beta, gauss, x) == gauss(x + 0.7)


coord = st.floats(-2, 2)
elements = st.builds(GroupElement, coord, coord, coord, coord)


@given(elements, elements, st.floats(-5, 5))
def test_irrep_homomorphism(g, h, x):
    beta = BetaVector(0.4, -0.3, 0.8)
    lhs = irrep_apply(g, beta, lambda u: irrep_apply(h, beta, gauss, u), x)
    rhs = irrep_apply(compose(g, h), beta, gauss, x)
    assert abs(lhs - rhs) <= 1e-12
    assert abs(abs(lhs) - abs(gauss(x + g.a + h.a))) <= 1e-12


def test_polyfunction_trims_and_evaluates():
    f = PolyFunction((1, 2, 0, 0), (0, 0, 0))
    assert f.degree == 1
    assert f(2.0) == 5
    assert PolyFunction.zero().is_zero()
    assert math.isclose(PolyFunction.real([0, 0, 3]).dilate(2)(1.0).real, 12.0)
