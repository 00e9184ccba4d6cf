import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from b2dunkl.errors import NotDivisible, RangeError, VarSetMismatch
from b2dunkl.poly import (
    GROUP,
    IDENTITY,
    SIGMA1,
    SIGMA2,
    Polynomial,
    VarSet,
    act,
    act_lambda,
    act_rho,
    compose_x_tau,
    divide_by_linear,
    monomials,
    p_poly,
    split_x,
)

X, Q, XY, XQ = VarSet.X, VarSet.Q, VarSet.XY, VarSet.XQ
x1, x2 = Polynomial.var(X, "x1"), Polynomial.var(X, "x2")
q = [Polynomial.var(Q, i) for i in range(4)]


def polys(var_set, max_deg=4, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_deg)] * var_set.arity).filter(lambda e: sum(e) <= max_deg)
    coeffs = st.builds(Fr, st.integers(-9, 9), st.integers(1, 5))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(var_set, d))


def test_arithmetic_examples():
    assert (x1 + x2) * (x1 - x2) == x1**2 - x2**2
    p = x1 * x2 + 3
    assert p + Polynomial.zero(X) == p
    g3 = q[0] * q[3] - q[1] * q[2]
    assert g3 * 1 == g3
    assert (x1 - x1).is_zero()


def test_mixed_var_sets_are_rejected():
    with pytest.raises(VarSetMismatch):
        x1 + q[0]
    with pytest.raises(VarSetMismatch):
        Polynomial(X, {(1, 2, 3): 1})


def test_diff_examples():
    assert (q[0] ** 2).diff("q1") == q[0].scale(2)
    assert (q[0] * q[3] - q[1] * q[2]).diff(3) == q[0]
    with pytest.raises(VarSetMismatch):
        x1.diff("q1")


@given(polys(Q, 5))
def test_euler_identity(p):
    for d, comp in p.homogeneous_components():
        euler = sum((Polynomial.var(Q, i) * comp.diff(i) for i in range(4)), Polynomial.zero(Q))
        assert euler == comp.scale(d)


@given(polys(X), polys(X), polys(X))
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Polynomial.zero(X)


def test_homogeneous_components():
    assert (x1**2 + x2).homogeneous_components() == [(1, x2), (2, x1**2)]
    assert Polynomial.zero(X).homogeneous_components() == []
    assert (x1 * x2 + x2**2).homogeneous_components() == [(2, x1 * x2 + x2**2)]


@given(polys(XY))
def test_json_round_trip(p):
    assert Polynomial.from_json(p.to_json()) == p
    assert Polynomial.from_json(p.to_json()).to_json() == p.to_json()


def test_json_format():
    assert Polynomial.const(X, 1).to_json() == '{"vars":"X","terms":[[[0,0],"1"]]}'
    assert x1.scale(Fr(1, 5)).to_json() == '{"vars":"X","terms":[[[1,0],"1/5"]]}'


def test_x_actions():
    assert act(SIGMA1, x1) == -x1
    assert act(SIGMA2, x1) == x2
    p = x1**3 * x2 - 2 * x2
    assert act(IDENTITY, p) == p


def test_action_composition_law():
    for w1, w2 in itertools.product(GROUP, repeat=2):
        for d in range(7):
            for e in monomials(X, d):
                m = Polynomial.monomial(X, e)
                assert act(w1, act(w2, m)) == act(w1 * w2, m)


def test_q_actions():
    assert act_lambda(SIGMA1, q[0]) == -q[0]
    assert [act_lambda(SIGMA1, v) for v in q] == [-q[0], q[1], -q[2], q[3]]
    assert [act_rho(SIGMA2, v) for v in q] == [q[2], q[3], q[0], q[1]]


def tau_of(p: Polynomial):
    # the 2x2 matrix [[q1, q3], [q2, q4]] whose entries are the images of q1..q4
    return ((p[0], p[2]), (p[1], p[3]))


def test_lambda_and_rho_match_their_defining_relations():
    for w in GROUP:
        lam = [act_lambda(w, v) for v in q]
        rho = [act_rho(w, v) for v in q]
        m = w.matrix
        tau = tau_of(q)
        winv = w.inverse().matrix
        for r, c in itertools.product(range(2), repeat=2):
            left = sum((tau[k][c].scale(winv[r][k]) for k in range(2)), Polynomial.zero(Q))
            right = sum((tau[r][k].scale(m[k][c]) for k in range(2)), Polynomial.zero(Q))
            assert tau_of(lam)[r][c] == left
            assert tau_of(rho)[r][c] == right


def test_lambda_rho_group_properties():
    for w1, w2 in itertools.product(GROUP, repeat=2):
        for d in range(5):
            for e in monomials(Q, d):
                m = Polynomial.monomial(Q, e)
                assert act_lambda(w1, act_rho(w2, m)) == act_rho(w2, act_lambda(w1, m))
                if w2 == w1.inverse():
                    assert act_lambda(w2, act_lambda(w1, m)) == m


def test_compose_x_tau_examples():
    xq = [Polynomial.var(XQ, i) for i in range(6)]
    assert compose_x_tau(x1) == xq[0] * xq[2] + xq[1] * xq[3]
    assert compose_x_tau(Polynomial.const(X, 1)) == Polynomial.const(XQ, 1)
    assert compose_x_tau(x1 * x2) == (xq[0] * xq[2] + xq[1] * xq[3]) * (xq[0] * xq[4] + xq[1] * xq[5])


@given(polys(X), polys(X))
def test_compose_is_a_ring_homomorphism(f, g):
    assert compose_x_tau(f * g) == compose_x_tau(f) * compose_x_tau(g)
    assert compose_x_tau(f + g) == compose_x_tau(f) + compose_x_tau(g)


def test_p_poly_examples():
    assert p_poly(1, 0, 0) == q[0]
    assert p_poly(1, 1, 1) == q[0] * q[3] + q[1] * q[2]
    with pytest.raises(RangeError):
        p_poly(1, 1, 3)


def test_p_poly_matches_coefficient_extraction():
    for a in range(7):
        for b in range(7 - a):
            parts = split_x(compose_x_tau(x1**a * x2**b))
            for c in range(a + b + 1):
                assert parts.get((a + b - c, c), Polynomial.zero(Q)) == p_poly(a, b, c)


def test_pairing_power_expansion():
    from math import comb

    from b2dunkl.intertwine import pairing_power

    lin = compose_x_tau(x1), compose_x_tau(x2)
    for n in range(7):
        table = pairing_power(n)
        # (y1 L1 + y2 L2)^n = sum_i C(n, i) y1^(n-i) y2^i L1^(n-i) L2^i, with L = x tau(q)
        seen = set()
        for i in range(n + 1):
            expanded = lin[0] ** (n - i) * lin[1] ** i
            for xe, coef_q in split_x(expanded).items():
                key = (*xe, n - i, i)
                seen.add(key)
                assert table[key] == coef_q.scale(comb(n, i))
        assert seen == set(table)


def test_divide_by_linear():
    assert divide_by_linear(x1**2 - x2**2, x1 - x2) == x1 + x2
    assert divide_by_linear(x1**3, x1) == x1**2
    with pytest.raises(NotDivisible):
        divide_by_linear(x1 - x2, x1 + x2)


@given(polys(X), st.sampled_from(["x1", "x2", "x1-x2", "x1+x2"]))
def test_division_inverts_multiplication(p, name):
    form = {"x1": x1, "x2": x2, "x1-x2": x1 - x2, "x1+x2": x1 + x2}[name]
    assert divide_by_linear(p * form, form) == p


def test_group_closure():
    assert len(GROUP) == 8
    for a, b in itertools.product(GROUP, repeat=2):
        assert a * b in GROUP
    assert all(w * w.inverse() == IDENTITY for w in GROUP)
