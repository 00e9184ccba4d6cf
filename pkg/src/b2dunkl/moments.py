"""Moments s(alpha) of the B2 measure on q = (q1, q2, q3, q4), and the functionals built on them.

s(alpha) is the integral of q1^a1 q2^a2 q3^a3 q4^a4.  It vanishes unless all
four exponents share a parity.  Two exact routes are provided:

* ``s_single``: one balanced terminating 4F3 (the production route)
* ``s_double``: a double sum, kept as an independent oracle
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .dunkl import Kappa, as_kappa
from .errors import NotHomogeneous, PoleInDegreeFactor, RangeError, SingularParameter, VarSetMismatch
from .hyper import HALF, eval_F, pochhammer
from .poly import Polynomial, VarSet

Q = VarSet.Q


class MultiIndex4(NamedTuple):
    a1: int
    a2: int
    a3: int
    a4: int

    @classmethod
    def of(cls, alpha) -> "MultiIndex4":
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != 4 or min(alpha) < 0:
            raise RangeError(f"need four non-negative exponents, got {alpha}")
        return cls(*alpha)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def parity_ok(self) -> bool:
        return len({a % 2 for a in self}) == 1

    @property
    def b(self) -> tuple[int, int, int, int]:
        """(b0, b1, b2, b3) = ((a2+a3)/2, (a1+a4)/2, (a2+a4)/2, (a3+a4)/2)."""
        if not self.parity_ok:
            raise RangeError(f"{tuple(self)} has mixed parity; b-values are not integers")
        a1, a2, a3, a4 = self
        return (a2 + a3) // 2, (a1 + a4) // 2, (a2 + a4) // 2, (a3 + a4) // 2


def _nonzero(value: Fraction, what: str, k: Fraction) -> Fraction:
    if value == 0:
        raise SingularParameter(f"{what} vanishes at kappa = {k}")
    return value


def _key(alpha, kappa) -> tuple[MultiIndex4, Fraction]:
    return MultiIndex4.of(alpha), as_kappa(kappa).value


# ---------------------------------------------------------------------------
# the two routes


def s_double(alpha, kappa) -> Fraction:
    return _s_double(*_key(alpha, kappa))


@lru_cache(maxsize=None)
def _s_double(a: MultiIndex4, k: Fraction) -> Fraction:
    if not a.parity_ok:
        return Fraction(0)
    b0, b1, _, b3 = a.b
    num = pochhammer(2 * k, 2 * b1) * pochhammer(2 * k, 2 * b0)
    num *= pochhammer(HALF, b1) * pochhammer(HALF, b0) * pochhammer(HALF, b3)
    den = _nonzero(pochhammer(4 * k, 2 * b1 + 2 * b0), f"(4k)_{2 * b1 + 2 * b0}", k)
    for b in (b1, b0, b3):
        den *= _nonzero(pochhammer(k + HALF, b), f"(k+1/2)_{b}", k)

    total = Fraction(0)
    for i in range(a.a4 // 2 + 1):
        for j in range(a.a3 // 2 + 1):
            t = pochhammer(-a.a4, 2 * i) * pochhammer(-a.a3, 2 * j) * pochhammer(k, i + j)
            if not t:
                continue
            d = pochhammer(1, i) * pochhammer(1, j)
            d *= pochhammer(HALF - b1, i) * pochhammer(HALF - b0, j) * pochhammer(HALF - b3, i + j)
            total += t / d / 4 ** (i + j)
    return num / den * total


def _c_prime(a: MultiIndex4, k: Fraction) -> Fraction:
    _, b1, b2, b3 = a.b
    out = Fraction(1)
    for b in (b1, b2, b3):
        out *= pochhammer(HALF, b) / _nonzero(pochhammer(k + HALF, b), f"(k+1/2)_{b}", k)
    return out


def _f_value(a: MultiIndex4, k: Fraction) -> Fraction:
    _, _, b2, b3 = a.b
    return eval_F(a.a4, k, Fraction(a.a1 - a.a4, 2), b2, b3)


def s_single(alpha, kappa) -> Fraction:
    return _s_single(*_key(alpha, kappa))


@lru_cache(maxsize=None)
def _s_single(a: MultiIndex4, k: Fraction) -> Fraction:
    if not a.parity_ok:
        return Fraction(0)
    pre = pochhammer(2 * k, a.a1 + a.a4) * pochhammer(2 * k, a.a2 + a.a3)
    pre /= _nonzero(pochhammer(4 * k, a.total), f"(4k)_{a.total}", k)
    if not pre:
        return Fraction(0)
    return pre * _c_prime(a, k) * _f_value(a, k)


#: the production route
s = s_single


def s_prime(alpha, kappa) -> Fraction:
    """s(alpha) with the factor (2k)_(2b1) (2k)_(2b0) / (4k)_(2b1+2b0) removed."""
    a, k = _key(alpha, kappa)
    return _c_prime(a, k) * _f_value(a, k)


def recurrence_residual(alpha, kappa) -> Fraction:
    """Three-term recurrence of s' along alpha + t (1, -1, -1, 1); must be 0."""
    a, k = _key(alpha, kappa)
    if not a.parity_ok:
        raise RangeError(f"{tuple(a)} has mixed parity")
    a1, a2, a3, a4 = a
    if a1 < 1 or a4 < 1:
        raise RangeError("recurrence needs alpha1, alpha4 >= 1")
    down = a1 * a4 * (k + Fraction(a2 + a3 + 1, 2))
    mid = Fraction(a2 * a3 * (a1 + a4 + 1) - a1 * a4 * (a2 + a3 + 1), 2)
    up = a2 * a3 * (k + Fraction(a1 + a4 + 1, 2))
    total = down * s_prime((a1 - 1, a2 + 1, a3 + 1, a4 - 1), k)
    if mid:
        total += mid * s_prime(a, k)
    if up:
        total -= up * s_prime((a1 + 1, a2 - 1, a3 - 1, a4 + 1), k)
    return total


# ---------------------------------------------------------------------------
# invariants and the operators built from them


def _q(*terms) -> Polynomial:
    return Polynomial(Q, terms)


_G = (
    _q(((1, 0, 0, 0), 2), ((0, 0, 0, 1), 2)),
    _q(((1, 0, 0, 1), 1), ((0, 1, 1, 0), 1)),
    _q(((2, 0, 0, 0), HALF), ((0, 2, 0, 0), -HALF), ((0, 0, 2, 0), -HALF), ((0, 0, 0, 2), HALF)),
    _q(((1, 0, 0, 1), 1), ((0, 1, 1, 0), -1)),
)


def invariant_g(i: int) -> Polynomial:
    """g0 = 2(q1+q4), g1 = q1q4+q2q3, g2 = (q1^2-q2^2-q3^2+q4^2)/2, g3 = q1q4-q2q3."""
    return _G[i]


def _check_q(p: Polynomial):
    if p.var_set is not Q:
        raise VarSetMismatch(f"expected a Q polynomial, got {p.var_set.name}")


def half_laplacian(p: Polynomial) -> Polynomial:
    _check_q(p)
    out = Polynomial.zero(Q)
    for i in range(4):
        out = out + p.diff(i).diff(i)
    return out.scale(HALF)


def apply_L(g: Polynomial, p: Polynomial) -> Polynomial:
    """ad(Laplacian/2) applied to multiplication by g, acting on p."""
    return half_laplacian(g * p) - g * half_laplacian(p)


def _first_order(p: Polynomial, pairs) -> Polynomial:
    # sum of coeff * q_i * d_j p over (coeff, i, j)
    _check_q(p)
    out = Polynomial.zero(Q)
    for c, i, j in pairs:
        dp = p.diff(j)
        if dp:
            out = out + (Polynomial.var(Q, i) * dp).scale(c)
    return out


def apply_D0(p: Polynomial) -> Polynomial:
    """(q1+q4)(d1+d4) - (q2-q3)(d2-d3)."""
    return _first_order(
        p,
        [(1, 0, 0), (1, 0, 3), (1, 3, 0), (1, 3, 3), (-1, 1, 1), (1, 1, 2), (1, 2, 1), (-1, 2, 2)],
    )


def apply_D3(p: Polynomial) -> Polynomial:
    """q1 d4 + q4 d1 - q2 d3 - q3 d2."""
    return _first_order(p, [(1, 0, 3), (1, 3, 0), (-1, 1, 2), (-1, 2, 1)])


# ---------------------------------------------------------------------------
# functionals


def xi0(p: Polynomial, kappa) -> Fraction:
    """Linear extension of q^alpha -> s(alpha)."""
    _check_q(p)
    k = as_kappa(kappa).value
    return sum((c * _s_single(MultiIndex4(*e), k) for e, c in p.items()), Fraction(0))


def _degree_of(p: Polynomial) -> int:
    if not p.is_homogeneous():
        raise NotHomogeneous(f"xi needs a homogeneous polynomial, got degrees {[d for d, _ in p.homogeneous_components()]}")
    return max(p.degree, 0)


def _pole_term(term: Polynomial, factor: Fraction, what: str, k) -> Polynomial:
    # a zero factor is harmless only if the operator already killed p
    if not term:
        return term
    if factor == 0:
        raise PoleInDegreeFactor(f"{what} = 0 at kappa = {k}")
    return term.scale(1 / factor)


def xi(p: Polynomial, kappa) -> Fraction:
    """The functional whose composition with f -> f(x tau(q)) gives V on degree-n input.

    odd n:  xi0(g0 p)
    even n: xi0(p + D0 p / (4k + n) + D3 p / (8k + n))
    """
    _check_q(p)
    k = as_kappa(kappa).value
    n = _degree_of(p)
    if n % 2:
        return xi0(_G[0] * p, k)
    q = p + _pole_term(apply_D0(p), 4 * k + n, f"4k+{n}", k) + _pole_term(apply_D3(p), 8 * k + n, f"8k+{n}", k)
    return xi0(q, k)


def xi_g3_variant(p: Polynomial, kappa) -> Fraction:
    """Even-degree xi with the D3 / (8k+n) term replaced by multiplication by g3."""
    _check_q(p)
    k = as_kappa(kappa).value
    n = _degree_of(p)
    if n % 2:
        return xi0(_G[0] * p, k)
    q = p + _pole_term(apply_D0(p), 4 * k + n, f"4k+{n}", k) + _G[3] * p
    return xi0(q, k)


def d3_identity_residual(p: Polynomial, kappa) -> Fraction:
    """(8k + n) xi0(g3 p) - xi0(D3 p) for p homogeneous of degree n; must be 0."""
    k = as_kappa(kappa).value
    n = _degree_of(p)
    return (8 * k + n) * xi0(_G[3] * p, k) - xi0(apply_D3(p), k)


def clear_caches():
    _s_single.cache_clear()
    _s_double.cache_clear()


__all__ = [
    "Kappa",
    "MultiIndex4",
    "s",
    "s_single",
    "s_double",
    "s_prime",
    "recurrence_residual",
    "invariant_g",
    "apply_L",
    "apply_D0",
    "apply_D3",
    "half_laplacian",
    "xi0",
    "xi",
    "xi_g3_variant",
    "d3_identity_residual",
]
