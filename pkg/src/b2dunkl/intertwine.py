"""The intertwining operator V for B2 (T_i V = V d/dx_i, V1 = 1) and the identities behind it.

Two independent routes compute V:

* ``apply_V``: V f(x) = xi(f(x tau(q))), with the functional xi from ``moments``
* ``apply_V_oracle``: degree by degree, solve T1 Vf = V(d1 f), T2 Vf = V(d2 f)
  for the coefficients of Vf
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .dunkl import Kappa, apply_T, as_kappa
from .errors import SingularParameter, SingularSystem, VarSetMismatch
from .hyper import HALF, eval_F, pochhammer
from .linalg import solve_exact
from .moments import apply_D3, apply_L, invariant_g, s, xi, xi0, xi_g3_variant
from .poly import (
    GROUP,
    REFLECTIONS,
    Polynomial,
    VarSet,
    act,
    act_lambda,
    compose_x_tau,
    monomials,
    p_poly,
    split_x,
)

X, Q, XY = VarSet.X, VarSet.Q, VarSet.XY

SINGULAR_SET = "{-1/2 - k} u {-1/4 - k} u {-3/4 - k}, k = 0, 1, 2, ..."


@dataclass(frozen=True)
class VResult:
    input: Polynomial
    kappa: Kappa
    output: Polynomial
    route: str


def _require_x(f: Polynomial):
    if f.var_set is not X:
        raise VarSetMismatch(f"V acts on X polynomials, got {f.var_set.name}")


# ---------------------------------------------------------------------------
# formula route


@lru_cache(maxsize=None)
def _v_monomial(e: tuple[int, int], k: Fraction, variant: str) -> Polynomial:
    functional = xi if variant == "xi" else xi_g3_variant
    f = Polynomial.monomial(X, e)
    out = {}
    for xe, coeff in split_x(compose_x_tau(f)).items():
        value = functional(coeff, k)
        if value:
            out[xe] = value
    return Polynomial(X, out)


def _linear_extend(f: Polynomial, per_monomial) -> Polynomial:
    acc: dict = {}
    for e, c in f.items():
        for xe, v in per_monomial(e).items():
            acc[xe] = acc.get(xe, 0) + c * v
    return Polynomial(X, acc)


def apply_V(f: Polynomial, kappa, variant: str = "xi") -> Polynomial:
    """V f by the moment formula; ``variant="g3"`` swaps the D3 term for multiplication by g3."""
    _require_x(f)
    kappa = as_kappa(kappa)
    if kappa.singular:
        raise SingularParameter(f"kappa = {kappa} is a singular value; the singular set is {SINGULAR_SET}")
    return _linear_extend(f, lambda e: _v_monomial(e, kappa.value, variant))


# ---------------------------------------------------------------------------
# oracle route


def _coeff_vector(p: Polynomial, basis) -> list[Fraction]:
    return [p.coeff(e) for e in basis]


@lru_cache(maxsize=None)
def _oracle_degree(n: int, k: Fraction) -> dict:
    """Map each degree-n monomial exponent to V of that monomial (X polynomial)."""
    if n == 0:
        return {(0, 0): Polynomial.const(X, 1)}
    prev = _oracle_degree(n - 1, k)
    basis = monomials(X, n)
    lower = monomials(X, n - 1)
    images = [Polynomial.monomial(X, e) for e in basis]
    t1 = [apply_T(1, k, m) for m in images]
    t2 = [apply_T(2, k, m) for m in images]
    A = [[t[j].coeff(e) for j in range(len(basis))] for t in (t1, t2) for e in lower]

    def v_prev(p: Polynomial) -> Polynomial:
        return _linear_extend(p, lambda e: prev[e])

    rhs_cols = []
    for m in images:
        col = _coeff_vector(v_prev(m.diff(0)), lower) + _coeff_vector(v_prev(m.diff(1)), lower)
        rhs_cols.append(col)
    B = [[col[r] for col in rhs_cols] for r in range(2 * n)]
    try:
        sol = solve_exact(A, B)
    except SingularSystem as exc:
        raise SingularSystem(
            f"degree {n} system at kappa = {k} has no unique solution ({exc}); singular set is {SINGULAR_SET}"
        ) from None
    return {
        e: Polynomial(X, {b: sol[j][col] for j, b in enumerate(basis)})
        for col, e in enumerate(basis)
    }


def apply_V_oracle(f: Polynomial, kappa) -> Polynomial:
    """V f from the intertwining relations alone; accepts singular kappa so the failure is visible."""
    _require_x(f)
    k = as_kappa(kappa).value
    return _linear_extend(f, lambda e: _oracle_degree(sum(e), k)[e])


def compute_V(f: Polynomial, kappa, route: str = "formula") -> VResult:
    kappa = as_kappa(kappa)
    if route == "formula":
        out = apply_V(f, kappa)
    elif route == "oracle":
        out = apply_V_oracle(f, kappa)
    else:
        raise ValueError(f"unknown route {route!r}")
    return VResult(f, kappa, out, route)


# ---------------------------------------------------------------------------
# kernels


def _x_to_xy(p: Polynomial) -> Polynomial:
    return Polynomial(XY, {(e[0], e[1], 0, 0): c for e, c in p.items()})


def _y_monomial(i: int, j: int) -> Polynomial:
    return Polynomial.monomial(XY, (0, 0, i, j))


def pairing_xy() -> Polynomial:
    """<x, y> = x1 y1 + x2 y2."""
    return Polynomial(XY, {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1})


def kernel_K(n: int, kappa, route: str = "formula") -> Polynomial:
    """K_n(x, y) = V^x(<x, y>^n) / n!."""
    V = apply_V if route == "formula" else apply_V_oracle
    out = Polynomial.zero(XY)
    for i in range(n + 1):
        vx = V(Polynomial.monomial(X, (n - i, i)), kappa)
        out = out + (_x_to_xy(vx) * _y_monomial(n - i, i)).scale(comb(n, i))
    return out.scale(Fraction(1, factorial(n)))


def kernel_K0(n: int, kappa, route: str = "formula") -> Polynomial:
    """Average of K_n(x w, y) over the eight elements w of B2."""
    k = kernel_K(n, kappa, route)
    out = Polynomial.zero(XY)
    for w in GROUP:
        out = out + act(w, k)
    return out.scale(Fraction(1, 8))


def pairing_power(n: int) -> dict[tuple[int, int, int, int], Polynomial]:
    """<x tau(q), y>^n as a map from XY exponents to Q polynomial coefficients."""
    out = {}
    for i in range(n + 1):
        for c in range(n + 1):
            p = p_poly(n - i, i, c)
            if p:
                out[(n - c, c, n - i, i)] = p.scale(comb(n, i))
    return out


def _xi_pairing(n: int, k: Fraction, reflect=None) -> Polynomial:
    out = {}
    for e, p in pairing_power(n).items():
        if reflect is not None:
            p = act_lambda(reflect, p)
        v = xi(p, k)
        if v:
            out[e] = v
    return Polynomial(XY, out)


def condV_residual(n: int, kappa) -> Polynomial:
    """(n+1)(<x,y> xi(<x tau,y>^n) - xi(<x tau,y>^(n+1))) - kappa sum_i (xi(<x tau,y>^(n+1)) - xi(<x s_i tau,y>^(n+1)))."""
    k = as_kappa(kappa).value
    top = _xi_pairing(n + 1, k)
    lhs = (pairing_xy() * _xi_pairing(n, k) - top).scale(n + 1)
    rhs = Polynomial.zero(XY)
    for w in REFLECTIONS:
        rhs = rhs + top - _xi_pairing(n + 1, k, reflect=w)
    return lhs - rhs.scale(k)


def check_condV(n: int, kappa) -> bool:
    return condV_residual(n, kappa).is_zero()


def check_oddeqn(n: int, kappa) -> bool:
    """(4k + 2n + 1) K_(2n+1) == <x, y> K_(2n)."""
    k = as_kappa(kappa).value
    return kernel_K(2 * n + 1, k).scale(4 * k + 2 * n + 1) == pairing_xy() * kernel_K(2 * n, k)


# ---------------------------------------------------------------------------
# odd-degree identity and its partial sums


def _qvar(i: int) -> Polynomial:
    return Polynomial.var(Q, i)


def _odd_functional(p: Polynomial, n: int, k: Fraction) -> Fraction:
    # left side of the odd-degree identity applied to a Q polynomial p of degree 2n+1
    d1 = p.diff(0)
    d4 = p.diff(3)
    first = (4 * k + 2 * n + 1) * xi0((_qvar(0) * p).scale(2), k)
    second = xi0(d1 + apply_L(invariant_g(2), d1).scale(Fraction(1, 4 * k + 2 * n)), k)
    inner = (_qvar(3) * d4.diff(0) + _qvar(0) * d4.diff(3)).scale(3 * k + n)
    inner = inner + (_qvar(2) * d4.diff(1) + _qvar(1) * d4.diff(2)).scale(k)
    third = xi0(inner, k) / ((2 * k + n) * (4 * k + n))
    return first - second - third


def check_oddP_identity(a1: int, a2: int, a3: int, kappa) -> Fraction:
    """Residual of the odd-degree identity on P_{a,b}^c with a = 2a1+1+2a3, b = 2a2, c = 2a3."""
    k = as_kappa(kappa).value
    n = a1 + a2 + a3
    return _odd_functional(p_poly(2 * a1 + 1 + 2 * a3, 2 * a2, 2 * a3), n, k)


def oddP_monomial(i: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    """The odd-degree functional on q^(2a1+1+i, 2a3-i, 2a2-i, i)."""
    k = as_kappa(kappa).value
    mono = Polynomial.monomial(Q, (2 * a1 + 1 + i, 2 * a3 - i, 2 * a2 - i, i))
    return _odd_functional(mono, a1 + a2 + a3, k)


def _s(*alpha) -> Fraction:
    # zero-coefficient terms are skipped by callers, so indices here are valid
    return s(alpha[:4], alpha[4])


def big1_t(i: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    """t_i: the odd-degree functional on the i-th monomial, divided by s(2a1+2, 2a3, 2a2, 0)."""
    k = as_kappa(kappa).value
    n = a1 + a2 + a3
    total = 2 * (4 * k + 2 * n + 1) * _s(2 * a1 + 2 + i, 2 * a3 - i, 2 * a2 - i, i, k)
    base = _s(2 * a1 + i, 2 * a3 - i, 2 * a2 - i, i, k)
    total -= 2 * Fraction((2 * a1 + 1 + i)) * (k + a1 + i) / (2 * k + n) * base
    scale = 1 / ((2 * k + n) * (4 * k + n))
    if i:
        brace = (2 * a1 + 1 + i) * base
        if i - 1:
            brace += (i - 1) * _s(2 * a1 + 2 + i, 2 * a3 - i, 2 * a2 - i, i - 2, k)
        total -= i * (3 * k + n) * scale * brace
        brace = Fraction(0)
        if 2 * a3 - i:
            brace += (2 * a3 - i) * _s(2 * a1 + 1 + i, 2 * a3 - i - 1, 2 * a2 - i + 1, i - 1, k)
        if 2 * a2 - i:
            brace += (2 * a2 - i) * _s(2 * a1 + 1 + i, 2 * a3 - i + 1, 2 * a2 - i - 1, i - 1, k)
        total -= i * k * scale * brace
    return total / s((2 * a1 + 2, 2 * a3, 2 * a2, 0), k)


def _ratio(num: Fraction, den: Fraction, what: str, k) -> Fraction:
    if not num:
        return Fraction(0)
    if not den:
        raise SingularParameter(f"{what} vanishes at kappa = {k}")
    return num / den


def big1_closed_form(m: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    k = as_kappa(kappa).value
    n = a1 + a2 + a3
    num = 2 ** (2 * m + 3) * k * a2 * a3 * pochhammer(2 - 2 * a2, m - 1) * pochhammer(2 - 2 * a3, m - 1)
    num *= pochhammer(k + a1 + 1, m) * pochhammer(a1 + Fraction(3, 2), m - 1) * (4 * k + 2 * n + 1)
    if not num:
        return Fraction(0)
    den = factorial(m - 1) * pochhammer(-2 * k - 2 * a2 - 2 * a3 + 1, 2 * m) * pochhammer(2 * a1 + 2, m)
    den *= 4 * k + n
    return _ratio(num, den, "closed-form denominator", k) * eval_F(m - 1, k + 1, a1 + 1, a2 - 1, a3 - 1)


def big1_weight(i: int, a1: int, a2: int, a3: int) -> Fraction:
    return pochhammer(-2 * a3, i) * pochhammer(-2 * a2, i) / (factorial(i) * pochhammer(2 * a1 + 2, i))


def check_big1_sum(m: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    """sum_{i=1}^m weight_i t_i minus the closed form; must be 0 (m >= 1)."""
    if m < 1:
        raise ValueError("the odd-degree partial sum starts at m = 1")
    k = as_kappa(kappa).value
    total = Fraction(0)
    for i in range(1, m + 1):
        w = big1_weight(i, a1, a2, a3)
        if w:
            total += w * big1_t(i, a1, a2, a3, k)
    return total - big1_closed_form(m, a1, a2, a3, k)


def big1_range(a2: int, a3: int) -> range:
    return range(1, max(1, min(2 * a2, 2 * a3)) + 1)


# even-degree counterpart: ((8k+2n) g3 - D3) on P_{a,b}^c with a, b, c odd


def _even_functional(p: Polynomial, n: int, k: Fraction) -> Fraction:
    return (8 * k + 2 * n) * xi0(invariant_g(3) * p, k) - xi0(apply_D3(p), k)


def big2_monomial(i: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    k = as_kappa(kappa).value
    mono = Polynomial.monomial(Q, (2 * a1 + i, 2 * a3 + 1 - i, 2 * a2 + 1 - i, i))
    return _even_functional(mono, a1 + a2 + a3 + 1, k)


def big2_t(i: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    """t_i for the even-degree sum, divided by s(2a1, 2a2+2, 2a3+2, 0)."""
    k = as_kappa(kappa).value
    n = a1 + a2 + a3 + 1
    c = 8 * k + 2 * n
    total = c * _s(2 * a1 + 1 + i, 2 * a3 + 1 - i, 2 * a2 + 1 - i, i + 1, k)
    total -= c * _s(2 * a1 + i, 2 * a3 + 2 - i, 2 * a2 + 2 - i, i, k)
    if 2 * a1 + i:
        total -= (2 * a1 + i) * _s(2 * a1 + i - 1, 2 * a3 + 1 - i, 2 * a2 + 1 - i, i + 1, k)
    if i:
        total -= i * _s(2 * a1 + i + 1, 2 * a3 + 1 - i, 2 * a2 + 1 - i, i - 1, k)
    if 2 * a3 + 1 - i:
        total += (2 * a3 + 1 - i) * _s(2 * a1 + i, 2 * a3 - i, 2 * a2 + 2 - i, i, k)
    if 2 * a2 + 1 - i:
        total += (2 * a2 + 1 - i) * _s(2 * a1 + i, 2 * a3 + 2 - i, 2 * a2 - i, i, k)
    return total / s((2 * a1, 2 * a2 + 2, 2 * a3 + 2, 0), k)


def big2_closed_form(m: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    k = as_kappa(kappa).value
    n = a1 + a2 + a3 + 1
    num = 2 ** (2 * m + 3) * k * pochhammer(k + a1, m + 1) * pochhammer(-2 * a2, m) * pochhammer(-2 * a3, m)
    num *= pochhammer(a1 + HALF, m) * (4 * k + 3 * n + 2)
    if not num:
        return Fraction(0)
    den = factorial(m) * pochhammer(-2 * k - 2 * a2 - 2 * a3 - 3, 2 * m + 2) * pochhammer(2 * a1 + 1, m)
    return _ratio(num, den, "closed-form denominator", k) * eval_F(m, k + 1, a1, a2, a3)


def big2_weight(i: int, a1: int, a2: int, a3: int) -> Fraction:
    return pochhammer(-2 * a2 - 1, i) * pochhammer(-2 * a3 - 1, i) / (factorial(i) * pochhammer(2 * a1 + 1, i))


def check_big2_sum(m: int, a1: int, a2: int, a3: int, kappa) -> Fraction:
    """sum_{i=0}^m weight_i t_i minus the closed form; must be 0 (m >= 0)."""
    k = as_kappa(kappa).value
    total = Fraction(0)
    for i in range(m + 1):
        w = big2_weight(i, a1, a2, a3)
        if w:
            total += w * big2_t(i, a1, a2, a3, k)
    return total - big2_closed_form(m, a1, a2, a3, k)


def big2_range(a2: int, a3: int) -> range:
    return range(0, min(2 * a2 + 1, 2 * a3 + 1) + 1)


def clear_caches():
    _v_monomial.cache_clear()
    _oracle_degree.cache_clear()
