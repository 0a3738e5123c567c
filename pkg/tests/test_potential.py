import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quartic_qes.group import BetaVector, scale_beta
from quartic_qes.potential import (
    PotentialParams,
    WellClass,
    classify_well,
    eval_potential,
    slope_at_zero_plus,
    to_monomial,
)


def n1_even(b1, b3=0.1):
    return PotentialParams(-2.0, BetaVector(b1, b1 * b1 + b3 / (2 * b1), b3))


def test_requires_positive_beta3():
    with pytest.raises(ValueError):
        PotentialParams(-1.0, BetaVector(0, 1, 0))


def test_value_at_origin_and_example():
    p = PotentialParams(-1.0, BetaVector(0, 0.3, 0.6))
    assert eval_potential(p, 0.0) == pytest.approx(0.5 * (0 - 0.3))
    assert eval_potential(p, 1.0) == pytest.approx(-0.27, abs=1e-15)


@given(st.floats(-4, 4), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.01, 3), st.floats(-20, 20))
def test_symmetry_exact(alpha, b1, b2, b3, x):
    p = PotentialParams(alpha, BetaVector(b1, b2, b3))
    assert eval_potential(p, x) == eval_potential(p, -x)


def test_monomial_examples():
    m = to_monomial(PotentialParams(0.0, BetaVector(0, 0, 0.7)))
    assert (m.V0, m.A, m.B, m.C) == (0, 0, 0, 0)
    assert m.D == pytest.approx(0.49 / 8)
    assert to_monomial(PotentialParams(0.0, BetaVector(0, 0, np.sqrt(8)))).D == pytest.approx(1.0, rel=1e-15)


@given(st.floats(-4, 4), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.01, 3))
def test_monomial_round_trip(alpha, b1, b2, b3):
    p = PotentialParams(alpha, BetaVector(b1, b2, b3))
    x = np.linspace(-10, 10, 41)
    v = eval_potential(p, x)
    assert np.max(np.abs(to_monomial(p)(x) - v)) <= 1e-12 * max(1.0, np.max(np.abs(v)))


@given(st.floats(-4, 4), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.01, 3), st.floats(0.3, 3))
def test_scaling(alpha, b1, b2, b3, t):
    p = PotentialParams(alpha, BetaVector(b1, b2, b3))
    pt = PotentialParams(alpha, scale_beta(p.beta, t))
    x = np.linspace(-5, 5, 21)
    lhs = eval_potential(pt, x / t)
    rhs = t * t * eval_potential(p, x)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


def test_slopes():
    assert slope_at_zero_plus(PotentialParams(-1.0, BetaVector(0, 0.3, 0.6))) == pytest.approx(-0.3)
    assert slope_at_zero_plus(PotentialParams(-2.0, BetaVector(0, 0.3, 0.6))) == pytest.approx(-0.6)
    assert slope_at_zero_plus(PotentialParams(0.0, BetaVector(1, 2, 0.6))) == 2


def test_slope_matches_one_sided_difference():
    p = n1_even(-0.7)
    h = 1e-7
    fd = (eval_potential(p, h) - eval_potential(p, 0.0)) / h
    assert fd == pytest.approx(slope_at_zero_plus(p), abs=1e-6)
    # N=1 even along the closed-form family: beta1**3 - beta3/2
    assert slope_at_zero_plus(p) == pytest.approx((-0.7) ** 3 - 0.05, abs=1e-15)


def test_well_classes():
    assert classify_well(n1_even(0.7), 10).kind is WellClass.SINGLE
    dbl = classify_well(n1_even(-0.7), 10)
    assert dbl.kind is WellClass.DOUBLE
    assert dbl.minima[0] == pytest.approx(-dbl.minima[1], abs=1e-9)
    assert classify_well(PotentialParams(0.0, BetaVector(0, 1, 1)), 10).kind is WellClass.SINGLE


def test_double_well_minimum_location():
    p = n1_even(-0.7)
    m = classify_well(p, 10).minima[1]
    d = 1e-6
    assert eval_potential(p, m) < eval_potential(p, m + d)
    assert eval_potential(p, m) < eval_potential(p, m - d)


def test_bad_scan_range():
    with pytest.raises(ValueError):
        classify_well(n1_even(0.7), 0.0)
