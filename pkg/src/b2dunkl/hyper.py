"""Terminating hypergeometric series at unit argument, over exact rationals.

Everything here works with :class:`fractions.Fraction`.  Identities that hold
as rational functions of their parameters are checked pointwise: each
``*_residual`` / ``check_*`` function returns ``LHS - RHS`` at the given
parameters, which must be exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DivisionByZero, NotBalanced, NotTerminating, ZeroDenominatorTerm

HALF = Fraction(1, 2)


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    a = Fraction(a)
    r = Fraction(1)
    for j in range(k):
        r *= a + j
        if not r:
            break
    return r


@dataclass(frozen=True)
class HyperParams:
    """Parameters of sum_{i=0}^{term_count} prod (a)_i / (prod (b)_i * i!)."""

    numerator_params: tuple
    denominator_params: tuple
    term_count: int

    def __post_init__(self):
        object.__setattr__(self, "numerator_params", tuple(Fraction(a) for a in self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(Fraction(b) for b in self.denominator_params))
        if self.term_count < 0:
            raise ValueError("term_count must be >= 0")

    @classmethod
    def terminating(cls, numer: Sequence, denom: Sequence) -> "HyperParams":
        """Infer term_count from the smallest non-positive integer numerator parameter."""
        stops = [-a for a in map(Fraction, numer) if a.denominator == 1 and a <= 0]
        if not stops:
            raise NotTerminating(f"no non-positive integer among numerator parameters {list(numer)}")
        return cls(tuple(numer), tuple(denom), int(min(stops)))


def terminating_series(p: HyperParams) -> Fraction:
    for b in p.denominator_params:
        for j in range(p.term_count):
            if b + j == 0:
                raise ZeroDenominatorTerm(f"({b})_i vanishes for i > {j} within 0..{p.term_count}")
    term = Fraction(1)
    total = Fraction(1)
    for i in range(p.term_count):
        num = Fraction(1)
        for a in p.numerator_params:
            num *= a + i
        if not num:
            break
        den = Fraction(i + 1)
        for b in p.denominator_params:
            den *= b + i
        term = term * num / den
        total += term
    return total


def hyp(numer: Sequence, denom: Sequence, terms: int | None = None) -> Fraction:
    """pFq(numer; denom; 1) summed over i = 0..terms (inferred when omitted)."""
    if terms is None:
        return terminating_series(HyperParams.terminating(numer, denom))
    return terminating_series(HyperParams(tuple(numer), tuple(denom), terms))


@dataclass(frozen=True)
class FArgs:
    n: int
    u: Fraction
    v1: Fraction
    v2: Fraction
    v3: Fraction

    def evaluate(self) -> Fraction:
        return eval_F(self.n, self.u, self.v1, self.v2, self.v3)


def eval_F(n: int, u, v1, v2, v3) -> Fraction:
    """The balanced 4F3

        F(n; u, v1, v2, v3) = 4F3(-n/2, (1-n)/2, u, -u-v1-v2-v3;
                                  1/2-v1-n, 1/2-v2, 1/2-v3; 1)

    summed over i = 0..n//2.  F is 0 for negative n.
    """
    if n < 0:
        return Fraction(0)
    u, v1, v2, v3 = map(Fraction, (u, v1, v2, v3))
    numer = (Fraction(-n, 2), Fraction(1 - n, 2), u, -u - v1 - v2 - v3)
    denom = (HALF - v1 - n, HALF - v2, HALF - v3)
    return terminating_series(HyperParams(numer, denom, n // 2))


def _3f2(n, a, b, c, d) -> Fraction:
    return hyp((-n, a, b), (c, d), n)


def check_3f2_transforms(n: int, a, b, c, d) -> tuple[Fraction, Fraction]:
    """Residuals of the two iterated 3F2 transformations.

    first:  3F2(-n,a,b; c,d) = (c+d-a-b)_n/(d)_n 3F2(-n, c-a, c-b; c, c-a-b+d)
    second: 3F2(-n,a,b; c,d) = (-1)^n (d-a)_n (d-b)_n / ((c)_n (d)_n)
                               * 3F2(-n, a+b-n+1-c-d, 1-d-n; a-d+1-n, b-d+1-n)
    """
    a, b, c, d = map(Fraction, (a, b, c, d))
    lhs = _3f2(n, a, b, c, d)
    rhs_a = pochhammer(c + d - a - b, n) / pochhammer(d, n) * _3f2(n, c - a, c - b, c, c - a - b + d)
    den_b = pochhammer(c, n) * pochhammer(d, n)
    if not den_b:
        raise ZeroDenominatorTerm("(c)_n (d)_n vanishes")
    rhs_b = (
        (-1) ** n * pochhammer(d - a, n) * pochhammer(d - b, n) / den_b
        * _3f2(n, a + b - n + 1 - c - d, 1 - d - n, a - d + 1 - n, b - d + 1 - n)
    )
    return lhs - rhs_a, lhs - rhs_b


def chu_vandermonde_residual(n: int, a, c) -> Fraction:
    """2F1(-n, a; c; 1) - (c-a)_n / (c)_n."""
    a, c = Fraction(a), Fraction(c)
    den = pochhammer(c, n)
    if not den:
        raise ZeroDenominatorTerm("(c)_n vanishes")
    return hyp((-n, a), (c,), n) - pochhammer(c - a, n) / den


def is_balanced(n: int, numer: Sequence, denom: Sequence) -> bool:
    """Sum of denominator parameters equals one plus the sum of the numerator ones (incl. -n)."""
    return sum(map(Fraction, denom)) == 1 - n + sum(map(Fraction, numer))


def check_whipple(n: int, a, b, c, d, e, f) -> Fraction:
    """Residual of Whipple's transformation of a balanced terminating 4F3:

        4F3(-n,a,b,c; d,e,f) = (e-a)_n (f-a)_n / ((e)_n (f)_n)
                               * 4F3(-n, a, d-b, d-c; d, e-b-c+d, f-b-c+d)

    valid when d + e + f = a + b + c - n + 1.
    """
    a, b, c, d, e, f = map(Fraction, (a, b, c, d, e, f))
    if not is_balanced(n, (a, b, c), (d, e, f)):
        raise NotBalanced(f"d+e+f = {d + e + f} but a+b+c-n+1 = {a + b + c - n + 1}")
    lhs = hyp((-n, a, b, c), (d, e, f), n)
    pref_den = pochhammer(e, n) * pochhammer(f, n)
    if not pref_den:
        raise ZeroDenominatorTerm("(e)_n (f)_n vanishes")
    pref = pochhammer(e - a, n) * pochhammer(f - a, n) / pref_den
    rhs = pref * hyp((-n, a, d - b, d - c), (d, e - b - c + d, f - b - c + d), n)
    return lhs - rhs


def f_recurrence_residual(n: int, kappa, v1, v2, v3) -> Fraction:
    """Three-term recurrence of F(.; kappa, v1, v2, v3) in its first argument."""
    if n < 1:
        raise ValueError("recurrence needs n >= 1")
    k, v1, v2, v3 = map(Fraction, (kappa, v1, v2, v3))

    def F(m):
        return eval_F(m, k, v1, v2, v3)

    lower = n * (n + 2 * v1) * (n + k + v1 - HALF) * (k + HALF + v2 + v3 - n)
    middle = (n * (n + 2 * v1) * (n - v2 - v3 - HALF) + (n + HALF + v1) * (n - 2 * v2) * (n - 2 * v3)) * (
        n + v1 - HALF
    )
    upper = (n + v1 - HALF) * (n + v1 + HALF) * (n - 2 * v2) * (n - 2 * v3)
    return lower * F(n - 1) + middle * F(n) - upper * F(n + 1)


def _excluded(v: Fraction) -> bool:
    # v in -1/2 + N_0
    return v.denominator == 2 and v >= -HALF


def _div(num, den, what: str) -> Fraction:
    if den == 0:
        raise DivisionByZero(f"{what} vanishes")
    return Fraction(num) / den


def contiguity1_residual(m: int, kappa, v1, v2, v3) -> Fraction:
    """The seven-term contiguity relation (v0 = v1 + v2 + v3), for m >= 1."""
    if m < 1:
        raise ValueError("first contiguity relation needs m >= 1")
    k, v1, v2, v3 = map(Fraction, (kappa, v1, v2, v3))
    if any(_excluded(v) for v in (v1, v2, v3)):
        raise DivisionByZero("v_i must avoid -1/2 + N_0")
    v0 = v1 + v2 + v3
    d23 = (2 * v2 - 1) * (2 * v3 - 1)

    terms = [
        (2 * (2 * v1 + 2 * m + 1) * (k + v1 + m) * (4 * k + v0), (m, k, v1 + 1, v2, v3)),
        (-(2 * (k + v1 + m) * (4 * k + v0) + m * (3 * k + v0)) * (2 * v1 + m + 1), (m, k, v1, v2, v3)),
        (
            -m * (m - 1) * _div((2 * v2 + 2 * k - 1) * (2 * v3 + 2 * k - 1), d23, "(2v2-1)(2v3-1)") * (3 * k + v0),
            (m - 2, k, v1 + 2, v2 - 1, v3 - 1),
        ),
        (-m * k * _div(2 * k + 2 * v3 - 1, 2 * v3 - 1, "2v3-1") * (2 * v3 - m), (m - 1, k, v1 + 1, v2, v3 - 1)),
        (-m * k * _div(2 * k + 2 * v2 - 1, 2 * v2 - 1, "2v2-1") * (2 * v2 - m), (m - 1, k, v1 + 1, v2 - 1, v3)),
        (
            m * (m - 1) * _div(8 * k * (2 * v1 + m + 1), d23 * (2 * v1 + 2 * m - 1), "(2v2-1)(2v3-1)(2v1+2m-1)")
            * (k + v2 + v3 - m) * (k + v2 + v3 + HALF - m),
            (m - 2, k + 1, v1 + 1, v2 - 1, v3 - 1),
        ),
        (
            -4 * m * k * _div((2 * v2 - m) * (2 * v3 - m), d23, "(2v2-1)(2v3-1)") * (k + v1 + m),
            (m - 1, k + 1, v1 + 1, v2 - 1, v3 - 1),
        ),
    ]
    # every F is evaluated, even under a zero coefficient, so a pole at the sample point is reported
    return sum((c * eval_F(*args) for c, args in terms), Fraction(0))


def contiguity2_residual(m: int, kappa, v1, v2, v3) -> Fraction:
    """The eight-term contiguity relation (v0 = v1 + v2 + v3 + 1), for m >= 0."""
    if m < 0:
        raise ValueError("second contiguity relation needs m >= 0")
    k, v1, v2, v3 = map(Fraction, (kappa, v1, v2, v3))
    if any(_excluded(v) for v in (v1, v2, v3)):
        raise DivisionByZero("v_i must avoid -1/2 + N_0")
    v0 = v1 + v2 + v3 + 1
    d23 = (2 * v2 + 1) * (2 * v3 + 1)
    common = (4 * k + 2 * v0 + 1) * (2 * k + v0)
    pair = (k + v2 + v3 + Fraction(3, 2) - m) * (k + v2 + v3 + 1 - m)

    terms = [
        (2 * (2 * v1 + 1 + 2 * m) * (k + v1 + m) * (4 * k + v0), (m + 1, k, v1, v2 + 1, v3 + 1)),
        (-4 * (4 * k + v0) * pair, (m, k, v1, v2 + 1, v3 + 1)),
        (-(2 * v1 + m) * common, (m + 1, k, v1 - 1, v2 + 1, v3 + 1)),
        (
            -_div((2 * k + 2 * v2 + 1) * (2 * k + 2 * v3 + 1), d23, "(2v2+1)(2v3+1)") * m * common,
            (m - 1, k, v1 + 1, v2, v3),
        ),
        (_div(2 * k + 2 * v3 + 1, 2 * v3 + 1, "2v3+1") * (2 * v3 + 1 - m) * common, (m, k, v1, v2 + 1, v3)),
        (_div(2 * k + 2 * v2 + 1, 2 * v2 + 1, "2v2+1") * (2 * v2 + 1 - m) * common, (m, k, v1, v2, v3 + 1)),
        (
            _div(8 * m * k * (2 * v1 + m), d23 * (2 * v1 + 2 * m - 1), "(2v2+1)(2v3+1)(2v1+2m-1)")
            * pair * (4 * k + 3 * v0 + 2),
            (m - 1, k + 1, v1, v2, v3),
        ),
        (
            -4 * k * _div((2 * v2 + 1 - m) * (2 * v3 + 1 - m), d23, "(2v2+1)(2v3+1)") * (4 * k + 3 * v0 + 2)
            * (k + v1 + m),
            (m, k + 1, v1, v2, v3),
        ),
    ]
    # every F is evaluated, even under a zero coefficient, so a pole at the sample point is reported
    return sum((c * eval_F(*args) for c, args in terms), Fraction(0))
