"""Dunkl operators for B2 with one parameter kappa on both root orbits.

Both operators come from the positive roots e1, e2, e1 - e2, e1 + e2:

    T_i f = df/dx_i + kappa * sum_r <r, e_i> (f - f o s_r) / <x, r>

where s_r is the reflection along r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .poly import (
    SIGMA1,
    SIGMA121,
    SIGMA2,
    SIGMA212,
    Polynomial,
    VarSet,
    act,
    divide_by_linear,
    monomials,
)


def parse_rational(text: str) -> Fraction:
    """Parse an exact "p/q" or integer string; decimals and exponents are refused."""
    s = str(text).strip()
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"{text!r} is not an exact rational (use p/q)")
    return Fraction(s)


def is_singular_value(v: Fraction) -> bool:
    # -1/2 - N0, -1/4 - N0, -3/4 - N0: negative quarter-integers that are not integers
    four_v = 4 * v
    return v < 0 and four_v.denominator == 1 and four_v.numerator % 4 != 0


@dataclass(frozen=True)
class Kappa:
    value: Fraction
    singular: bool = field(init=False)

    def __post_init__(self):
        v = self.value
        if isinstance(v, str):
            v = parse_rational(v)
        object.__setattr__(self, "value", Fraction(v))
        object.__setattr__(self, "singular", is_singular_value(self.value))

    @classmethod
    def parse(cls, text: str) -> "Kappa":
        return cls(parse_rational(text))

    def __str__(self):
        return str(self.value)


def as_kappa(k) -> Kappa:
    return k if isinstance(k, Kappa) else Kappa(k)


_X1 = Polynomial.var(VarSet.X, "x1")
_X2 = Polynomial.var(VarSet.X, "x2")

# (reflection, linear form <x, r>, (<r, e1>, <r, e2>))
_ROOTS = (
    (SIGMA1, _X1, (1, 0)),
    (SIGMA212, _X2, (0, 1)),
    (SIGMA2, _X1 - _X2, (1, -1)),
    (SIGMA121, _X1 + _X2, (1, 1)),
)


@lru_cache(maxsize=None)
def _difference_part(i: int, e: tuple[int, int]) -> Polynomial:
    # the kappa-free reflection sum applied to the monomial x^e
    m = Polynomial.monomial(VarSet.X, e)
    total = Polynomial.zero(VarSet.X)
    for refl, form, coords in _ROOTS:
        weight = coords[i]
        if not weight:
            continue
        num = m - act(refl, m)
        if num:
            total = total + divide_by_linear(num, form).scale(weight)
    return total


def difference_part(i: int, f: Polynomial) -> Polynomial:
    """sum_r <r, e_i> (f - f o s_r) / <x, r>, with i in {1, 2}."""
    if f.var_set is not VarSet.X:
        raise ValueError("Dunkl operators act on X polynomials")
    out = Polynomial.zero(VarSet.X)
    for e, c in f.items():
        out = out + _difference_part(i - 1, e).scale(c)
    return out


def apply_T(i: int, kappa, f: Polynomial) -> Polynomial:
    """The Dunkl operator T_i (i = 1 or 2) at parameter kappa."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    k = as_kappa(kappa).value
    return f.diff(i - 1) + difference_part(i, f).scale(k)


def check_commutativity(kappa, max_degree: int) -> bool:
    """T1 T2 m == T2 T1 m for every monomial m of degree <= max_degree."""
    for d in range(max_degree + 1):
        for e in monomials(VarSet.X, d):
            m = Polynomial.monomial(VarSet.X, e)
            if apply_T(1, kappa, apply_T(2, kappa, m)) != apply_T(2, kappa, apply_T(1, kappa, m)):
                return False
    return True
