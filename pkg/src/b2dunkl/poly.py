"""Sparse multivariate polynomials over the rationals and the B2 group actions.

A polynomial lives in exactly one named variable set.  Terms are stored as a
dict from exponent tuples to nonzero Fractions.

Group actions all compose covariantly:

    act(w1, act(w2, p)) == act(w1 * w2, p)

and the same holds for act_lambda and act_rho.  Here act(w, p) is p(x w) with
x a row vector, act_lambda(w, p) is p(q lambda(w)) with tau(q lambda(w)) =
w^-1 tau(q), and act_rho(w, p) is p(q rho(w)) with tau(q rho(w)) = tau(q) w.
The matrix tau(q) is [[q1, q3], [q2, q4]].
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping

from .errors import NotDivisible, RangeError, VarSetMismatch


class VarSet(Enum):
    X = ("x1", "x2")
    Q = ("q1", "q2", "q3", "q4")
    XY = ("x1", "x2", "y1", "y2")
    XQ = ("x1", "x2", "q1", "q2", "q3", "q4")

    @property
    def names(self) -> tuple[str, ...]:
        return self.value

    @property
    def arity(self) -> int:
        return len(self.value)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.arity:
                raise VarSetMismatch(f"variable index {var} out of range for {self.name}")
            return var
        try:
            return self.value.index(var)
        except ValueError:
            raise VarSetMismatch(f"{var!r} is not a variable of {self.name}") from None


def _order_key(e):
    return (sum(e), tuple(-v for v in e))


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("var_set", "_terms", "_hash")

    def __init__(self, var_set: VarSet, terms: Mapping | Iterable = ()):
        self.var_set = var_set
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        n = var_set.arity
        for e, c in items:
            e = tuple(e)
            if len(e) != n or any(v < 0 for v in e):
                raise VarSetMismatch(f"exponent {e} does not fit {var_set.name}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, var_set, terms):
        # terms already clean (no zeros, right lengths)
        p = cls.__new__(cls)
        p.var_set = var_set
        p._terms = terms
        p._hash = None
        return p

    # construction helpers
    @classmethod
    def zero(cls, var_set):
        return cls._raw(var_set, {})

    @classmethod
    def const(cls, var_set, c=1):
        c = Fraction(c)
        return cls._raw(var_set, {(0,) * var_set.arity: c} if c else {})

    @classmethod
    def var(cls, var_set, name):
        e = [0] * var_set.arity
        e[var_set.index(name)] = 1
        return cls._raw(var_set, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, var_set, exps, coeff=1):
        return cls(var_set, {tuple(exps): coeff})

    # access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]))

    def coeff(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.var_set is other.var_set and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.const(self.var_set, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var_set, frozenset(self._terms.items())))
        return self._hash

    # arithmetic
    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.var_set, other)
        if not isinstance(other, Polynomial):
            return None
        if other.var_set is not self.var_set:
            raise VarSetMismatch(f"{self.var_set.name} vs {other.var_set.name}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.var_set, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.var_set, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.var_set)
        return Polynomial._raw(self.var_set, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.var_set, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.var_set, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # calculus and evaluation
    def diff(self, var) -> "Polynomial":
        i = self.var_set.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial._raw(self.var_set, out)

    def evaluate(self, point):
        """Evaluate at a point (Fractions give an exact result, floats a float)."""
        point = list(point)
        if len(point) != self.var_set.arity:
            raise VarSetMismatch(f"point has {len(point)} coordinates, {self.var_set.name} needs {self.var_set.arity}")
        total = 0
        for e, c in self._terms.items():
            t = c if not any(isinstance(v, float) for v in point) else float(c)
            for v, k in zip(point, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def homogeneous_components(self) -> list[tuple[int, "Polynomial"]]:
        by_deg: dict[int, dict] = {}
        for e, c in self._terms.items():
            by_deg.setdefault(sum(e), {})[e] = c
        return [(d, Polynomial._raw(self.var_set, by_deg[d])) for d in sorted(by_deg)]

    def map_monomials(self, fn) -> "Polynomial":
        """Replace every exponent e by (sign, e') = fn(e); coefficients are multiplied by sign."""
        out: dict = {}
        for e, c in self._terms.items():
            s, ne = fn(e)
            out[ne] = out.get(ne, 0) + s * c
        return Polynomial._raw(self.var_set, {e: c for e, c in out.items() if c})

    # serialization
    def to_json(self) -> str:
        terms = [[list(e), str(c)] for e, c in self.sorted_items()]
        return json.dumps({"vars": self.var_set.name, "terms": terms}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        data = json.loads(text)
        try:
            vs = VarSet[data["vars"]]
        except KeyError:
            raise VarSetMismatch(f"unknown variable set {data.get('vars')!r}") from None
        return cls(vs, [(tuple(e), Fraction(c)) for e, c in data["terms"]])

    def __repr__(self):
        return f"Polynomial({self.var_set.name}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.var_set.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def x_poly(terms) -> Polynomial:
    return Polynomial(VarSet.X, terms)


def q_poly(terms) -> Polynomial:
    return Polynomial(VarSet.Q, terms)


def monomials(var_set: VarSet, degree: int):
    """All exponent tuples of the given total degree, in canonical order."""
    n = var_set.arity
    out = [e for e in product(range(degree + 1), repeat=n) if sum(e) == degree]
    return sorted(out, key=_order_key)


# ---------------------------------------------------------------------------
# B2 as signed permutation matrices


class GroupElement:
    """An element of B2: a 2x2 signed permutation matrix acting on row vectors."""

    __slots__ = ("matrix", "name")

    def __init__(self, matrix, name: str = ""):
        m = tuple(tuple(int(v) for v in row) for row in matrix)
        nonzero = [(r, c) for r in range(2) for c in range(2) if m[r][c]]
        if len(nonzero) != 2 or {r for r, _ in nonzero} != {0, 1} or {c for _, c in nonzero} != {0, 1}:
            raise ValueError(f"{m} is not a signed permutation matrix")
        if any(abs(m[r][c]) != 1 for r, c in nonzero):
            raise ValueError(f"{m} is not a signed permutation matrix")
        self.matrix = m
        self.name = name or str(m)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b = self.matrix, other.matrix
        return _lookup(tuple(tuple(sum(a[r][k] * b[k][c] for k in range(2)) for c in range(2)) for r in range(2)))

    def inverse(self) -> "GroupElement":
        m = self.matrix
        return _lookup(((m[0][0], m[1][0]), (m[0][1], m[1][1])))

    def column_source(self, c: int) -> tuple[int, int]:
        """(sign, row) of the single nonzero entry in column c."""
        for r in range(2):
            if self.matrix[r][c]:
                return self.matrix[r][c], r
        raise AssertionError

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupElement({self.name})"


_ELEMENTS: dict = {}


def _lookup(matrix) -> GroupElement:
    return _ELEMENTS[matrix]


def _build_group():
    for perm in (((1, 0), (0, 1)), ((0, 1), (1, 0))):
        for s0, s1 in product((1, -1), repeat=2):
            m = tuple(tuple(perm[r][c] * (s0, s1)[r] for c in range(2)) for r in range(2))
            _ELEMENTS[m] = GroupElement(m)
    # closure: the product of any two elements is again one of the eight
    for a in list(_ELEMENTS.values()):
        for b in list(_ELEMENTS.values()):
            m = tuple(tuple(sum(a.matrix[r][k] * b.matrix[k][c] for k in range(2)) for c in range(2)) for r in range(2))
            if m not in _ELEMENTS:
                raise AssertionError(f"B2 not closed: {a.matrix} * {b.matrix}")


_build_group()


def _named(matrix, name):
    g = _ELEMENTS[matrix]
    g.name = name
    return g


IDENTITY = _named(((1, 0), (0, 1)), "1")
SIGMA1 = _named(((-1, 0), (0, 1)), "s1")
SIGMA2 = _named(((0, 1), (1, 0)), "s2")
SIGMA212 = _named(((1, 0), (0, -1)), "s2s1s2")
SIGMA121 = _named(((0, -1), (-1, 0)), "s1s2s1")
_named(((-1, 0), (0, -1)), "-1")
_named(((0, -1), (1, 0)), "s1s2")
_named(((0, 1), (-1, 0)), "s2s1")

GROUP: tuple[GroupElement, ...] = tuple(_ELEMENTS[m] for m in sorted(_ELEMENTS))
#: the four reflections, ordered sigma1, sigma2, sigma2 sigma1 sigma2, sigma1 sigma2 sigma1
REFLECTIONS: tuple[GroupElement, ...] = (SIGMA1, SIGMA2, SIGMA212, SIGMA121)


def _signed_map(p: Polynomial, mapping) -> Polynomial:
    # mapping[k] = (sign, j): variable k is replaced by sign * variable j
    n = len(mapping)

    def fn(e):
        ne = [0] * n
        s = 1
        for k, ek in enumerate(e):
            if ek:
                sign, j = mapping[k]
                ne[j] += ek
                if sign < 0 and ek & 1:
                    s = -s
        return s, tuple(ne)

    return p.map_monomials(fn)


def act(w: GroupElement, p: Polynomial) -> Polynomial:
    """p(x w).  On XY polynomials only the x variables move."""
    if p.var_set not in (VarSet.X, VarSet.XY):
        raise VarSetMismatch(f"act needs an X or XY polynomial, got {p.var_set.name}")
    # (x w)_c = sign * x_r where (sign, r) is the entry of column c
    mapping = [w.column_source(0), w.column_source(1)]
    if p.var_set is VarSet.XY:
        mapping += [(1, 2), (1, 3)]
    return _signed_map(p, mapping)


def _q_index(r: int, c: int) -> int:
    return r + 2 * c


def act_lambda(w: GroupElement, p: Polynomial) -> Polynomial:
    """p(q lambda(w)), where tau(q lambda(w)) = w^-1 tau(q)."""
    if p.var_set is not VarSet.Q:
        raise VarSetMismatch(f"act_lambda needs a Q polynomial, got {p.var_set.name}")
    m = w.inverse().matrix
    mapping = [None] * 4
    for r, c in product(range(2), repeat=2):
        i = 0 if m[r][0] else 1
        mapping[_q_index(r, c)] = (m[r][i], _q_index(i, c))
    return _signed_map(p, mapping)


def act_rho(w: GroupElement, p: Polynomial) -> Polynomial:
    """p(q rho(w)), where tau(q rho(w)) = tau(q) w."""
    if p.var_set is not VarSet.Q:
        raise VarSetMismatch(f"act_rho needs a Q polynomial, got {p.var_set.name}")
    mapping = [None] * 4
    for r, c in product(range(2), repeat=2):
        sign, k = w.column_source(c)
        mapping[_q_index(r, c)] = (sign, _q_index(r, k))
    return _signed_map(p, mapping)


# ---------------------------------------------------------------------------
# x -> x tau(q)


def _linear_power(a: tuple, b: tuple, k: int) -> dict:
    # (x_a q_b + x_a' q_b')^k expanded into XQ exponent dicts; a, b are index pairs
    out = {}
    for j in range(k + 1):
        e = [0] * 6
        e[a[0]] += k - j
        e[2 + b[0]] += k - j
        e[a[1]] += j
        e[2 + b[1]] += j
        out[tuple(e)] = Fraction(comb(k, j))
    return out


def compose_x_tau(f: Polynomial) -> Polynomial:
    """f(x tau(q)) = f(x1 q1 + x2 q2, x1 q3 + x2 q4), as an XQ polynomial."""
    if f.var_set is not VarSet.X:
        raise VarSetMismatch(f"compose_x_tau needs an X polynomial, got {f.var_set.name}")
    out: dict = {}
    for (e1, e2), c in f.items():
        first = Polynomial._raw(VarSet.XQ, _linear_power((0, 1), (0, 1), e1))
        second = Polynomial._raw(VarSet.XQ, _linear_power((0, 1), (2, 3), e2))
        for e, v in (first * second).items():
            out[e] = out.get(e, 0) + c * v
    return Polynomial._raw(VarSet.XQ, {e: c for e, c in out.items() if c})


def split_x(p: Polynomial) -> dict[tuple[int, int], Polynomial]:
    """Group an XQ polynomial by its x-exponent; values are Q polynomials."""
    if p.var_set is not VarSet.XQ:
        raise VarSetMismatch(f"split_x needs an XQ polynomial, got {p.var_set.name}")
    groups: dict = {}
    for e, c in p.items():
        groups.setdefault(e[:2], {})[e[2:]] = c
    return {k: Polynomial._raw(VarSet.Q, v) for k, v in sorted(groups.items(), key=lambda t: _order_key(t[0]))}


def p_poly(a: int, b: int, c: int) -> Polynomial:
    """Coefficient of x1^(a+b-c) x2^c in (x1 q1 + x2 q2)^a (x1 q3 + x2 q4)^b."""
    if min(a, b, c) < 0 or c > a + b:
        raise RangeError(f"need 0 <= c <= a+b, got a={a}, b={b}, c={c}")
    terms = {}
    for i in range(max(0, c - a), min(b, c) + 1):
        terms[(a - c + i, c - i, b - i, i)] = Fraction(comb(a, c - i) * comb(b, i))
    return Polynomial._raw(VarSet.Q, terms)


def divide_by_linear(p: Polynomial, form: Polynomial) -> Polynomial:
    """Exact quotient p / form for a linear form in two variables (X polynomials)."""
    if p.var_set is not form.var_set or p.var_set is not VarSet.X:
        raise VarSetMismatch("divide_by_linear works on X polynomials")
    if form.degree != 1 or not form.is_homogeneous():
        raise ValueError(f"{form} is not a linear form")
    c1 = form.coeff((1, 0))
    c2 = form.coeff((0, 1))
    pivot = 0 if c1 else 1
    lead, other = (c1, c2) if pivot == 0 else (c2, c1)
    rem = dict(p.items())
    quot: dict = {}
    # eliminate terms from the highest power of the pivot variable downward
    while rem:
        e = max(rem, key=lambda t: (t[pivot], t[1 - pivot]))
        if e[pivot] == 0:
            raise NotDivisible(f"{p} is not divisible by {form}")
        c = rem.pop(e)
        qe = list(e)
        qe[pivot] -= 1
        qe = tuple(qe)
        qc = c / lead
        quot[qe] = quot.get(qe, 0) + qc
        if other:
            se = list(qe)
            se[1 - pivot] += 1
            se = tuple(se)
            v = rem.get(se, 0) - qc * other
            if v:
                rem[se] = v
            else:
                rem.pop(se, None)
    return Polynomial._raw(VarSet.X, {e: c for e, c in quot.items() if c})
