from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from b2dunkl.dunkl import Kappa, apply_T, check_commutativity, parse_rational
from b2dunkl.poly import SIGMA1, Polynomial, VarSet, act, monomials

from conftest import rationals

X = VarSet.X
x1, x2 = Polynomial.var(X, 0), Polynomial.var(X, 1)


def explicit_T(i, k, f, point):
    # the operators written out with substitutions and divisions at a rational point
    a, b = point
    fx = f.evaluate((a, b))
    swap = (fx - f.evaluate((b, a))) / (a - b)
    anti = (fx - f.evaluate((-b, -a))) / (a + b)
    if i == 1:
        return f.diff(0).evaluate(point) + k * ((fx - f.evaluate((-a, b))) / a + swap + anti)
    return f.diff(1).evaluate(point) + k * ((fx - f.evaluate((a, -b))) / b - swap + anti)


def test_parse_rational():
    assert parse_rational("5/2") == Fr(5, 2)
    assert parse_rational(" -7 ") == -7
    for bad in ("1.5", "1e3", "abc"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@pytest.mark.parametrize(
    "value,singular",
    [("-1/2", True), ("-1/4", True), ("-3/4", True), ("-7/4", True), ("-5/2", True),
     ("-1", False), ("0", False), ("1/4", False), ("-1/3", False), ("5/2", False)],
)
def test_singular_classification(value, singular):
    assert Kappa.parse(value).singular is singular


def test_T_examples():
    k = Fr(3, 7)
    assert apply_T(1, k, x1) == Polynomial.const(X, 1 + 4 * k)
    assert apply_T(1, k, x2).is_zero()
    assert apply_T(1, k, Polynomial.const(X, 5)).is_zero()
    assert apply_T(2, k, x2) == Polynomial.const(X, 1 + 4 * k)


@given(rationals(), st.integers(0, 6), st.integers(0, 6), st.sampled_from([1, 2]))
def test_T_matches_explicit_difference_quotients(k, a, b, i):
    f = x1**a * x2**b + x1 ** (a + 1) * x2
    point = (Fr(3, 7), Fr(-5, 11))
    assert apply_T(i, k, f).evaluate(point) == explicit_T(i, k, f, point)


@pytest.mark.parametrize("k", [1, Fr(-7, 3), 0, Fr(5, 2), Fr(-1, 2)])
def test_commutativity(k):
    assert check_commutativity(k, 6)


def test_degree_lowering_and_zero_kappa():
    k = Fr(2, 9)
    for d in range(11):
        for e in monomials(X, d):
            m = Polynomial.monomial(X, e)
            for i in (1, 2):
                t = apply_T(i, k, m)
                assert t.is_zero() or (t.is_homogeneous() and t.degree == d - 1)
                assert apply_T(i, 0, m) == m.diff(i - 1)


def test_reflection_covariance():
    k = Fr(5, 3)
    for d in range(7):
        for e in monomials(X, d):
            m = Polynomial.monomial(X, e)
            assert act(SIGMA1, apply_T(1, k, act(SIGMA1, m))) == -apply_T(1, k, m)
