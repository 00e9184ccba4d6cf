from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given, strategies as st

from b2dunkl.errors import DivisionByZero, NotBalanced, ZeroDenominatorTerm
from b2dunkl.hyper import (
    HyperParams,
    check_3f2_transforms,
    check_whipple,
    chu_vandermonde_residual,
    contiguity1_residual,
    contiguity2_residual,
    eval_F,
    f_recurrence_residual,
    hyp,
    pochhammer,
    terminating_series,
)

from conftest import rationals


def brute_series(numer, denom, terms):
    # term-by-term oracle with its own running products
    total, term = Fr(0), Fr(1)
    for i in range(terms + 1):
        total += term
        for a in numer:
            term *= a + i
        for b in denom:
            term /= b + i
        term /= i + 1
    return total


@pytest.mark.parametrize(
    "a,k,expected",
    [(Fr(7, 3), 0, 1), (3, 4, 360), (-2, 5, 0), (Fr(-1, 2), 2, Fr(-1, 4))],
)
def test_pochhammer(a, k, expected):
    assert pochhammer(a, k) == expected


def test_series_examples():
    assert hyp((-2, 1), (Fr(1, 2),)) == Fr(-1, 3)
    assert hyp((0, 5, 7), (Fr(1, 3), 2), 4) == 1
    a, b, c, d = Fr(2, 3), Fr(5, 7), Fr(9, 4), Fr(1, 5)
    assert hyp((-1, a, b), (c, d)) == 1 - a * b / (c * d)


def test_zero_denominator_is_rejected():
    with pytest.raises(ZeroDenominatorTerm):
        terminating_series(HyperParams((-3, 1), (-1,), 3))


def test_F_examples():
    assert eval_F(0, 3, 1, 2, 5) == 1
    assert eval_F(1, Fr(2, 7), 1, 2, 5) == 1
    assert eval_F(2, 1, 1, 1, 1) == Fr(21, 5)
    assert eval_F(-1, 1, 1, 1, 1) == 0


@given(st.integers(0, 9), rationals(), rationals(), rationals(), rationals())
def test_F_matches_direct_sum(n, u, v1, v2, v3):
    numer = (Fr(-n, 2), Fr(1 - n, 2), u, -u - v1 - v2 - v3)
    denom = (Fr(1, 2) - v1 - n, Fr(1, 2) - v2, Fr(1, 2) - v3)
    try:
        expected = brute_series(numer, denom, n // 2)
    except ZeroDivisionError:
        assume(False)
    assert eval_F(n, u, v1, v2, v3) == expected
    assert eval_F(n, u, v1, v3, v2) == expected


@given(st.integers(0, 10), rationals(), rationals(), rationals())
def test_F_at_zero_kappa_is_one(n, v1, v2, v3):
    try:
        assert eval_F(n, 0, v1, v2, v3) == 1
    except ZeroDenominatorTerm:
        assume(False)


@pytest.mark.parametrize("n,a,b,c,d", [(0, 3, 1, 2, 5), (2, Fr(1, 3), 2, Fr(5, 2), Fr(7, 3)), (3, 1, Fr(1, 2), 3, Fr(9, 2))])
def test_3f2_transform_examples(n, a, b, c, d):
    assert check_3f2_transforms(n, a, b, c, d) == (0, 0)


@given(st.integers(0, 8), rationals(), rationals(), rationals(), rationals())
def test_3f2_transforms_random(n, a, b, c, d):
    try:
        assert check_3f2_transforms(n, a, b, c, d) == (0, 0)
    except ZeroDenominatorTerm:
        assume(False)


@given(st.integers(0, 8), rationals(), rationals(), rationals(), rationals(), rationals())
def test_whipple_random(n, a, b, c, d, e):
    f = a + b + c - n + 1 - d - e
    try:
        assert check_whipple(n, a, b, c, d, e, f) == 0
    except ZeroDenominatorTerm:
        assume(False)


def test_whipple_substitution_from_symmetry_argument():
    # alpha = (2,2,2,2), kappa = 1: n = alpha4/2 = 1, a = kappa, d = 1/2 - b1 with b1 = 2
    n, a, d = 1, Fr(1), Fr(1, 2) - 2
    b, c, e = Fr(-1, 2), Fr(-5), Fr(-3, 2)
    f = a + b + c - n + 1 - d - e
    assert check_whipple(n, a, b, c, d, e, f) == 0
    assert check_whipple(0, 1, 2, 3, 4, 5, 6 - 9 + 1 - 4 - 5 + 9) == 0


def test_whipple_requires_balance():
    with pytest.raises(NotBalanced):
        check_whipple(2, 1, 2, 3, 4, 5, 6)


@given(st.integers(0, 12), rationals(), rationals())
def test_chu_vandermonde(n, a, c):
    try:
        assert chu_vandermonde_residual(n, a, c) == 0
    except ZeroDenominatorTerm:
        assume(False)


@pytest.mark.parametrize(
    "n,k,v", [(1, 1, (1, 1, 1)), (4, Fr(2, 3), (Fr(3, 2), 2, Fr(5, 2))), (2, 0, (Fr(1, 3), Fr(2, 5), Fr(7, 4)))]
)
def test_F_recurrence_examples(n, k, v):
    assert f_recurrence_residual(n, k, *v) == 0


@given(st.integers(1, 8), rationals(), rationals(), rationals(), rationals())
def test_F_recurrence_random(n, k, v1, v2, v3):
    try:
        assert f_recurrence_residual(n, k, v1, v2, v3) == 0
    except ZeroDenominatorTerm:
        assume(False)


@pytest.mark.parametrize("m,k,v", [(1, 1, (1, 2, 3)), (2, Fr(5, 2), (Fr(1, 3), 2, 4)), (6, Fr(7, 5), (2, 3, 5))])
def test_contiguity1_examples(m, k, v):
    assert contiguity1_residual(m, k, *v) == 0


@pytest.mark.parametrize("m,k,v", [(0, 1, (1, 1, 1)), (1, Fr(3, 2), (2, 1, 3)), (4, Fr(2, 7), (Fr(5, 3), 2, Fr(7, 4)))])
def test_contiguity2_examples(m, k, v):
    assert contiguity2_residual(m, k, *v) == 0


def test_contiguity2_rejects_half_integer_v():
    # 7/2 = -1/2 + 4 lies in the excluded set even though the bare formula happens to vanish there
    with pytest.raises(DivisionByZero):
        contiguity2_residual(4, Fr(2, 7), Fr(5, 3), 2, Fr(7, 2))


def test_pole_under_zero_coefficient_is_reported():
    # 2v1 + 2m + 1 = 0 kills a coefficient whose F has a pole; the limit is 0 but the point value is not
    with pytest.raises(ZeroDenominatorTerm):
        contiguity1_residual(2, 1, Fr(-5, 2), 0, 0)


@given(st.integers(1, 8), rationals(), rationals(), rationals(), rationals())
def test_contiguity_random(m, k, v1, v2, v3):
    try:
        assert contiguity1_residual(m, k, v1, v2, v3) == 0
        assert contiguity2_residual(m - 1, k, v1, v2, v3) == 0
    except (ZeroDenominatorTerm, DivisionByZero):
        assume(False)


def test_contiguity_excluded_parameters():
    with pytest.raises(DivisionByZero):
        contiguity1_residual(1, 1, Fr(3, 2), 1, 1)
    with pytest.raises(DivisionByZero):
        contiguity2_residual(1, 1, 1, Fr(-1, 2), 1)


def test_contiguity_residual_detects_a_wrong_value(monkeypatch):
    # a corrupted F must break the identity, so the checker is not vacuous
    from b2dunkl import hyper

    original = hyper.eval_F
    monkeypatch.setattr(hyper, "eval_F", lambda n, u, *v: original(n, u, *v) + (1 if n == 1 else 0))
    assert contiguity1_residual(2, 1, 1, 2, 3) != 0
