from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from b2dunkl.dunkl import apply_T
from b2dunkl.errors import SingularParameter, SingularSystem
from b2dunkl import intertwine
from b2dunkl.intertwine import (
    SINGULAR_SET,
    apply_V,
    apply_V_oracle,
    big1_range,
    big1_t,
    big2_monomial,
    big2_range,
    big2_t,
    check_big1_sum,
    check_big2_sum,
    check_condV,
    check_oddeqn,
    check_oddP_identity,
    compute_V,
    kernel_K,
    kernel_K0,
    oddP_monomial,
    pairing_xy,
)
from b2dunkl.moments import s
from b2dunkl.poly import GROUP, Polynomial, VarSet, act, monomials

X, XY = VarSet.X, VarSet.XY
x1, x2 = Polynomial.var(X, 0), Polynomial.var(X, 1)
ONE = Polynomial.const(X, 1)


@pytest.mark.parametrize("V", [apply_V, apply_V_oracle])
def test_V_examples(V):
    assert V(ONE, Fr(2, 3)) == ONE
    assert V(x1, 1) == x1.scale(Fr(1, 5))
    assert V(x2, 1) == x2.scale(Fr(1, 5))


def test_routes_agree_and_intertwine():
    for k in (Fr(1, 3), Fr(5, 2)):
        for d in range(7):
            for e in monomials(X, d):
                m = Polynomial.monomial(X, e)
                vm = apply_V(m, k)
                assert vm == apply_V_oracle(m, k)
                assert apply_T(1, k, vm) == apply_V(m.diff(0), k)
                assert apply_T(2, k, vm) == apply_V(m.diff(1), k)


def test_compute_V_reports_route():
    r = compute_V(x1 * x2, 2, route="oracle")
    assert r.route == "oracle" and r.output == apply_V(x1 * x2, 2)
    assert r.output.is_homogeneous() and r.output.degree == 2


coeffs = st.builds(Fr, st.integers(-5, 5), st.integers(1, 4))


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), coeffs, max_size=4),
       st.sampled_from([Fr(1, 3), 1, Fr(5, 2)]))
def test_V_linear_and_degree_preserving(terms, k):
    f = Polynomial(X, terms)
    vf = apply_V(f, k)
    expected = sum((apply_V(Polynomial.monomial(X, e), k).scale(c) for e, c in f.items()), Polynomial.zero(X))
    assert vf == expected
    assert [d for d, _ in vf.homogeneous_components()] == [d for d, _ in f.homogeneous_components()]


def test_equivariance():
    k = Fr(5, 2)
    for d in range(7):
        for e in monomials(X, d):
            m = Polynomial.monomial(X, e)
            for w in GROUP:
                assert apply_V(act(w, m), k) == act(w, apply_V(m, k))


def test_g3_variant_matches():
    k = Fr(1, 3)
    for d in range(0, 9, 2):
        for e in monomials(X, d):
            m = Polynomial.monomial(X, e)
            assert apply_V(m, k, variant="g3") == apply_V(m, k)


def test_singular_kappa():
    with pytest.raises(SingularParameter, match="singular set"):
        apply_V(x1, Fr(-1, 4))
    intertwine.clear_caches()
    with pytest.raises(SingularSystem) as exc:
        apply_V_oracle(x1**3, Fr(-3, 4))
    assert SINGULAR_SET in str(exc.value)


def test_kernel_examples():
    assert kernel_K(0, 3) == Polynomial.const(XY, 1)
    assert kernel_K(1, 1) == pairing_xy().scale(Fr(1, 5))
    for k in (1, Fr(7, 2)):
        assert kernel_K0(1, k).is_zero()
        assert kernel_K(2, k, route="oracle") == kernel_K(2, k)


def test_kernel_symmetric_in_x_and_y():
    k = Fr(3, 2)
    for n in range(5):
        kn = kernel_K(n, k)
        swapped = Polynomial(XY, {(e[2], e[3], e[0], e[1]): c for e, c in kn.items()})
        assert swapped == kn


@pytest.mark.parametrize("k", [1, Fr(1, 3)])
def test_condV(k):
    for n in range(4):
        assert check_condV(n, k)
    for n in range(3):
        assert check_oddeqn(n, k)


def test_odd_identity_and_partial_sums():
    assert check_big1_sum(1, 0, 1, 1, 1) == 0
    assert check_big2_sum(0, 1, 1, 1, 2) == 0
    for a in [(0, 1, 1), (1, 2, 1), (2, 2, 3)]:
        assert check_oddP_identity(*a, Fr(5, 2)) == 0
        for m in big1_range(a[1], a[2]):
            assert check_big1_sum(m, *a, Fr(5, 2)) == 0
        for m in big2_range(a[1], a[2]):
            assert check_big2_sum(m, *a, Fr(5, 2)) == 0


def test_t_values_match_direct_functional():
    k = Fr(2, 3)
    for a1, a2, a3 in [(0, 1, 1), (1, 1, 2), (2, 2, 2)]:
        norm = s((2 * a1 + 2, 2 * a3, 2 * a2, 0), k)
        assert big1_t(0, a1, a2, a3, k) == 0
        for i in range(0, min(2 * a2, 2 * a3) + 1):
            assert big1_t(i, a1, a2, a3, k) == oddP_monomial(i, a1, a2, a3, k) / norm


def test_even_t_values_match_direct_functional():
    k = Fr(7, 4)
    for a1, a2, a3 in [(0, 0, 1), (1, 1, 2), (2, 1, 1)]:
        norm = s((2 * a1, 2 * a2 + 2, 2 * a3 + 2, 0), k)
        for i in range(0, min(2 * a2 + 1, 2 * a3 + 1) + 1):
            assert big2_t(i, a1, a2, a3, k) == big2_monomial(i, a1, a2, a3, k) / norm
