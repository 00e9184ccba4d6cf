"""Verification suites: each sweeps a parameter grid and records every mismatch."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import hyper, intertwine, moments, quad
from .dunkl import apply_T
from .errors import DivisionByZero, SingularSystem, ZeroDenominatorTerm
from .poly import Polynomial, VarSet, monomials, p_poly

X = VarSet.X


@dataclass
class Report:
    suite: str
    params: dict
    cases: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, inputs: dict, lhs, rhs, equal: bool | None = None):
        self.cases += 1
        if equal is None:
            equal = lhs == rhs
        if not equal:
            self.failures.append({"inputs": inputs, "lhs": _show(lhs), "rhs": _show(rhs)})

    def zero(self, inputs: dict, residual):
        self.check(inputs, residual, 0, equal=not residual)

    def as_dict(self) -> dict:
        # wall time stays out of the payload so reports are reproducible byte for byte
        return {"suite": self.suite, "params": self.params, "cases": self.cases, "failures": self.failures}


def _show(v):
    if isinstance(v, Polynomial):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _kstr(ks):
    return [str(k) for k in ks]


def _exact_kappas(ks):
    return [Fraction(k) for k in ks]


def _rand_rational(rng: random.Random, num: int = 24, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _draw(rng, count, build, accept=(ZeroDenominatorTerm, DivisionByZero, ZeroDivisionError)):
    # keep drawing until `count` tuples evaluate without a vanishing denominator
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("could not draw enough valid parameter tuples")
        args = build(rng)
        try:
            out.append((args, args[-1](*args[:-1])))
        except accept:
            continue
    return out


# ---------------------------------------------------------------------------


def suite_commute(max_degree: int = 8, kappas=(0, 1, Fraction(-7, 3), Fraction(5, 2))) -> Report:
    rep = Report("commute", {"max_degree": max_degree, "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        for d in range(max_degree + 1):
            for e in monomials(X, d):
                m = Polynomial.monomial(X, e)
                rep.check({"kappa": str(k), "monomial": list(e)},
                          apply_T(1, k, apply_T(2, k, m)), apply_T(2, k, apply_T(1, k, m)))
    return rep


def _parity_indices(max_total: int):
    for total in range(max_total + 1):
        for a in itertools.product(range(total + 1), repeat=3):
            a4 = total - sum(a)
            if a4 >= 0 and len({v % 2 for v in (*a, a4)}) == 1:
                yield (*a, a4)


def suite_moments(max_total: int = 12, kappas=(Fraction(1, 3), 1, Fraction(5, 2), 7)) -> Report:
    rep = Report("moments", {"max_total": max_total, "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        for alpha in _parity_indices(max_total):
            rep.check({"alpha": list(alpha), "kappa": str(k)}, moments.s_double(alpha, k), moments.s_single(alpha, k))
    return rep


def suite_symmetry(max_total: int = 10, max_beta: int = 5,
                   kappas=(Fraction(1, 3), 1, Fraction(5, 2), 7)) -> Report:
    """Closed form of s' with a vanishing last index, and S4 symmetry of s'."""
    rep = Report("symmetry", {"max_total": max_total, "max_beta": max_beta, "kappas": _kstr(kappas)})
    half = hyper.HALF
    for k in _exact_kappas(kappas):
        for beta in itertools.product(range(max_beta + 1), repeat=3):
            closed = Fraction(1)
            for b in beta:
                closed *= hyper.pochhammer(half, b) / hyper.pochhammer(k + half, b)
            alpha = (2 * beta[0], 2 * beta[1], 2 * beta[2], 0)
            rep.check({"alpha": list(alpha), "kappa": str(k)}, moments.s_prime(alpha, k), closed)
        for alpha in _parity_indices(max_total):
            ref = moments.s_prime(alpha, k)
            for perm in sorted(set(itertools.permutations(alpha))):
                if perm != alpha:
                    rep.check({"alpha": list(alpha), "perm": list(perm), "kappa": str(k)},
                              moments.s_prime(perm, k), ref)
    return rep


def suite_recurrence(max_entry: int = 5, max_n: int = 8, tuples: int = 100, seed: int = 0,
                     kappas=(Fraction(1, 3), Fraction(1, 2), 1, Fraction(5, 2), 7, Fraction(-2, 7))) -> Report:
    rep = Report("recurrence", {"max_entry": max_entry, "max_n": max_n, "tuples": tuples, "seed": seed,
                                "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        for alpha in itertools.product(range(max_entry + 1), repeat=4):
            if alpha[0] < 1 or alpha[3] < 1 or len({v % 2 for v in alpha}) != 1:
                continue
            rep.zero({"alpha": list(alpha), "kappa": str(k)}, moments.recurrence_residual(alpha, k))
    rng = random.Random(seed)

    def build(r):
        k, v1, v2, v3 = (_rand_rational(r) for _ in range(4))

        def all_n(*p):
            return [hyper.f_recurrence_residual(n, *p) for n in range(1, max_n + 1)]

        return k, v1, v2, v3, all_n

    for args, residuals in _draw(rng, tuples, build):
        for n, res in enumerate(residuals, start=1):
            rep.zero({"n": n, "params": _kstr(args[:-1])}, res)
    return rep


def suite_contiguity(max_m: int = 8, tuples: int = 50, seed: int = 1) -> Report:
    rep = Report("contiguity", {"max_m": max_m, "tuples": tuples, "seed": seed})
    rng = random.Random(seed)
    for name, fn, start in (("first", hyper.contiguity1_residual, 1), ("second", hyper.contiguity2_residual, 0)):
        def build(r, fn=fn, start=start):
            k, v1, v2, v3 = (_rand_rational(r) for _ in range(4))
            return k, v1, v2, v3, lambda *p: [fn(m, *p) for m in range(start, max_m + 1)]

        for args, residuals in _draw(rng, tuples, build):
            for m, res in enumerate(residuals, start=start):
                rep.zero({"relation": name, "m": m, "params": _kstr(args[:-1])}, res)
    return rep


def suite_transforms(max_n: int = 8, tuples: int = 100, max_cv: int = 12, seed: int = 2) -> Report:
    """Both 3F2 transformations, Whipple and Chu-Vandermonde; each tuple is checked at every n."""
    rep = Report("transforms", {"max_n": max_n, "tuples": tuples, "max_cv": max_cv, "seed": seed})
    rng = random.Random(seed)

    def build3(r):
        return (*(_rand_rational(r) for _ in range(4)),
                lambda *p: [hyper.check_3f2_transforms(n, *p) for n in range(max_n + 1)])

    for args, pairs in _draw(rng, tuples, build3):
        for n, (ra, rb) in enumerate(pairs):
            rep.zero({"identity": "3F2 first", "n": n, "params": _kstr(args[:-1])}, ra)
            rep.zero({"identity": "3F2 second", "n": n, "params": _kstr(args[:-1])}, rb)

    def build_w(r):
        # f is fixed by the balance condition, so it moves with n
        def all_n(a, b, c, d, e):
            return [hyper.check_whipple(n, a, b, c, d, e, a + b + c - n + 1 - d - e) for n in range(max_n + 1)]

        return (*(_rand_rational(r) for _ in range(5)), all_n)

    for args, residuals in _draw(rng, tuples, build_w):
        for n, res in enumerate(residuals):
            rep.zero({"identity": "Whipple", "n": n, "params": _kstr(args[:-1])}, res)

    def build_cv(r):
        return (_rand_rational(r), _rand_rational(r),
                lambda a, c: [hyper.chu_vandermonde_residual(n, a, c) for n in range(max_cv + 1)])

    for args, residuals in _draw(rng, tuples, build_cv):
        for n, res in enumerate(residuals):
            rep.zero({"identity": "Chu-Vandermonde", "n": n, "params": _kstr(args[:-1])}, res)
    return rep


def suite_intertwine(max_degree: int = 8, kappas=(Fraction(1, 3), 1, Fraction(5, 2), 7)) -> Report:
    rep = Report("intertwine", {"max_degree": max_degree, "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        rep.check({"kappa": str(k), "f": "1"}, intertwine.apply_V(Polynomial.const(X, 1), k), Polynomial.const(X, 1))
        for i in (0, 1):
            xi = Polynomial.var(X, i)
            rep.check({"kappa": str(k), "f": X.names[i]}, intertwine.apply_V(xi, k), xi.scale(1 / (1 + 4 * k)))
        for d in range(max_degree + 1):
            for e in monomials(X, d):
                m = Polynomial.monomial(X, e)
                vm = intertwine.apply_V(m, k)
                tag = {"kappa": str(k), "monomial": list(e)}
                rep.check({**tag, "check": "formula == oracle"}, vm, intertwine.apply_V_oracle(m, k))
                for i in (1, 2):
                    rep.check({**tag, "check": f"T{i} V == V d{i}"},
                              apply_T(i, k, vm), intertwine.apply_V(m.diff(i - 1), k))
                if d % 2 == 0:
                    rep.check({**tag, "check": "g3 variant"}, intertwine.apply_V(m, k, variant="g3"), vm)
    return rep


def suite_condv(max_n: int = 6, max_odd: int = 3, kappas=(Fraction(1, 3), 1, Fraction(5, 2))) -> Report:
    rep = Report("condv", {"max_n": max_n, "max_odd": max_odd, "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        for n in range(max_n + 1):
            rep.zero({"check": "condV", "n": n, "kappa": str(k)}, intertwine.condV_residual(n, k))
        for n in range(max_odd + 1):
            lhs = intertwine.kernel_K(2 * n + 1, k).scale(4 * k + 2 * n + 1)
            rhs = intertwine.pairing_xy() * intertwine.kernel_K(2 * n, k)
            rep.check({"check": "odd kernel", "n": n, "kappa": str(k)}, lhs, rhs)
    return rep


def suite_big1(max_a: int = 4, kappas=(Fraction(1, 3), 1, Fraction(5, 2))) -> Report:
    rep = Report("big1", {"max_a": max_a, "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        for a1, a2, a3 in itertools.product(range(max_a + 1), repeat=3):
            tag = {"a": [a1, a2, a3], "kappa": str(k)}
            rep.zero({**tag, "check": "odd identity"}, intertwine.check_oddP_identity(a1, a2, a3, k))
            for m in intertwine.big1_range(a2, a3):
                rep.zero({**tag, "m": m}, intertwine.check_big1_sum(m, a1, a2, a3, k))
    return rep


def suite_big2(max_a: int = 4, max_ab: int = 8, kappas=(Fraction(1, 3), 1, Fraction(5, 2))) -> Report:
    rep = Report("big2", {"max_a": max_a, "max_ab": max_ab, "kappas": _kstr(kappas)})
    for k in _exact_kappas(kappas):
        for a1, a2, a3 in itertools.product(range(max_a + 1), repeat=3):
            tag = {"a": [a1, a2, a3], "kappa": str(k)}
            for m in intertwine.big2_range(a2, a3):
                rep.zero({**tag, "m": m}, intertwine.check_big2_sum(m, a1, a2, a3, k))
        for a in range(1, max_ab, 2):
            for b in range(1, max_ab - a + 1, 2):
                for c in range(1, a + b + 1, 2):
                    rep.zero({"check": "g3 identity", "P": [a, b, c], "kappa": str(k)},
                             moments.d3_identity_residual(p_poly(a, b, c), k))
    return rep


def suite_singular(max_degree: int = 6, regular: int = 10, seed: int = 3) -> Report:
    """The oracle must break down at singular kappa and succeed elsewhere."""
    singular = (Fraction(-1, 2), Fraction(-1, 4), Fraction(-3, 4), Fraction(-5, 4))
    rep = Report("singular", {"max_degree": max_degree, "regular": regular, "seed": seed,
                              "singular": _kstr(singular)})
    for k in singular:
        failed_at = None
        intertwine.clear_caches()
        for d in range(max_degree + 1):
            try:
                for e in monomials(X, d):
                    intertwine.apply_V_oracle(Polynomial.monomial(X, e), k)
            except SingularSystem:
                failed_at = d
                break
        rep.check({"kappa": str(k)}, "raises" if failed_at is not None else "solved", "raises")
    rng = random.Random(seed)
    drawn = 0
    while drawn < regular:
        k = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        if intertwine.Kappa(k).singular:
            continue
        drawn += 1
        try:
            for d in range(max_degree + 1):
                for e in monomials(X, d):
                    intertwine.apply_V_oracle(Polynomial.monomial(X, e), k)
            outcome = "solved"
        except SingularSystem:
            outcome = "raises"
        rep.check({"kappa": str(k)}, outcome, "solved")
    return rep


# ---------------------------------------------------------------------------
# floating point


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a - b)


def suite_quad(kappas=(1.0, 1.7, 2.5), nodes: int = 16, max_total: int = 8, vint_kappa: float = 2.0,
               vint_degree: int = 6, vint_nodes: int = 10, bessel_cutoff: int = 20) -> Report:
    rep = Report("quad", {"kappas": [repr(float(k)) for k in kappas], "nodes": nodes, "max_total": max_total,
                          "vint_kappa": repr(vint_kappa), "vint_degree": vint_degree, "bessel_cutoff": bessel_cutoff})
    for k in map(float, kappas):
        kk = Fraction(k).limit_denominator(1000)
        for total in range(max_total + 1):
            for a in itertools.product(range(total + 1), repeat=3):
                alpha = (*a, total - sum(a))
                if alpha[3] < 0:
                    continue
                num = quad.numeric_moment(alpha, k, nodes)
                exact = float(moments.s(alpha, kk))
                tol = 1e-6 if exact else 1e-10
                rep.check({"alpha": list(alpha), "kappa": repr(k)}, num, exact, equal=_rel(num, exact) <= tol)
        c_num = quad.numeric_normalizer(k, nodes)
        c_gamma = quad.gamma_normalizer(k)
        rep.check({"check": "normalizer", "kappa": repr(k)}, c_num, c_gamma, equal=_rel(c_num, c_gamma) <= 1e-8)

    if vint_kappa > 1.5 and vint_degree >= 0:
        kv = Fraction(vint_kappa).limit_denominator(1000)
        point = (0.7, -0.3)
        for d in range(vint_degree + 1):
            for e in monomials(X, d):
                m = Polynomial.monomial(X, e)
                exact = float(intertwine.apply_V(m, kv).evaluate(tuple(Fraction(p) for p in point)))
                num = quad.numeric_Vint(m, point, vint_kappa, vint_nodes)
                tol = 1e-6 if abs(exact) > 1e-12 else 1e-12
                rep.check({"check": "integral form of V", "monomial": list(e), "kappa": repr(vint_kappa)},
                          num, exact, equal=_rel(num, exact) <= tol)
        probe = quad.vint_kernel_probe(vint_kappa)
        lowest = min(v for _, v in probe)
        rep.check({"check": "kernel takes negative values", "kappa": repr(vint_kappa)}, lowest, "< 0",
                  equal=lowest < 0)

    for k in map(float, kappas):
        kk = Fraction(k).limit_denominator(1000)
        for x, y in (((1.0, 0.0), (1.0, 0.0)), ((0.6, -0.5), (0.3, 0.8))):
            series = bessel_series(x, y, kk, bessel_cutoff)
            num = quad.numeric_bessel(x, y, k, nodes)
            rep.check({"check": "bessel", "x": list(x), "y": list(y), "kappa": repr(k)},
                      num, series, equal=_rel(num, series) <= 1e-6)
    return rep


def bessel_series(x, y, kappa, cutoff: int) -> float:
    """sum_{n <= cutoff} K0_n(x, y), exact kernels evaluated in floating point."""
    point = tuple(Fraction(v) for v in (*x, *y))
    return float(sum(intertwine.kernel_K0(n, kappa).evaluate(point) for n in range(cutoff + 1)))


def convergence_rows(kappas=(1.0, 1.7, 2.5), node_counts=(4, 6, 8, 12, 16),
                     alphas=((2, 0, 0, 0), (1, 1, 1, 1), (4, 2, 2, 0), (3, 1, 3, 1))) -> list[dict]:
    rows = []
    for k in kappas:
        kk = Fraction(k).limit_denominator(1000)
        for alpha in alphas:
            exact = float(moments.s(alpha, kk))
            for row in quad.convergence_table(alpha, k, node_counts, exact):
                rows.append({"kappa": k, "alpha": " ".join(map(str, alpha)), **row})
    return rows


SUITES = {
    "commute": suite_commute,
    "moments": suite_moments,
    "symmetry": suite_symmetry,
    "recurrence": suite_recurrence,
    "condv": suite_condv,
    "big1": suite_big1,
    "big2": suite_big2,
    "contiguity": suite_contiguity,
    "transforms": suite_transforms,
    "intertwine": suite_intertwine,
    "singular": suite_singular,
    "quad": suite_quad,
}


def run(name: str, **kwargs) -> Report:
    start = time.perf_counter()
    rep = SUITES[name](**kwargs)
    rep.wall_time = time.perf_counter() - start
    return rep
