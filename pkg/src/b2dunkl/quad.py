"""Floating-point cross-checks by tensor Gauss-Jacobi quadrature.

The measure lives on six angles/radii (u, psi1, psi2, theta, phi1, phi2) with

    q1 = u cos psi1
    q2 = (1-u) cos psi2
    q3 = (1-u) (cos psi2 cos theta + sin psi2 sin theta cos phi2)
    q4 = u (cos psi1 cos theta + sin psi1 sin theta cos phi1)

and density proportional to (u (1-u) sin psi1 sin psi2 sin theta)^(2k-1)
(sin phi1 sin phi2)^(2k-2).  Every one-dimensional factor is a Jacobi weight
after t = cos(angle) or t = 2u - 1, so Gauss-Jacobi rules integrate the
polynomial moments exactly up to rounding.  The normalizing constant is taken
from the rules themselves (integral of 1), never from the Gamma formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidWeight, KappaOutOfRange
from .poly import Polynomial, VarSet


@dataclass(frozen=True)
class QuadRule:
    """n-point rule for the weight (1-t)^a (1+t)^b on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    def __len__(self):
        return len(self.nodes)


def jacobi_mass(a: float, b: float) -> float:
    return math.exp((a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))


def gauss_jacobi(n: int, a: float, b: float) -> QuadRule:
    """Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix."""
    if a <= -1 or b <= -1:
        raise InvalidWeight(f"Jacobi exponents must exceed -1, got a={a}, b={b}")
    if n < 1:
        raise ValueError("need at least one node")
    k = np.arange(n, dtype=float)
    s = 2 * k + a + b
    diag = np.empty(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (b * b - a * a) / (s * (s + 2))
    diag[0] = (b - a) / (a + b + 2)
    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        j = np.arange(2, n, dtype=float)
        sj = 2 * j + a + b
        off[1:] = 4 * j * (j + a) * (j + b) * (j + a + b) / (sj**2 * (sj + 1) * (sj - 1))
    J = np.diag(diag) + np.diag(np.sqrt(off), 1) + np.diag(np.sqrt(off), -1)
    nodes, vecs = np.linalg.eigh(J)
    weights = jacobi_mass(a, b) * vecs[0, :] ** 2
    return QuadRule(nodes, weights, float(a), float(b))


# ---------------------------------------------------------------------------
# one-dimensional rules in the original variables


@dataclass(frozen=True)
class Rule1D:
    """Nodes and weights in an original variable, plus cos/sin of the node for angles."""

    x: np.ndarray
    w: np.ndarray
    cos: np.ndarray | None = None
    sin: np.ndarray | None = None

    @property
    def mass(self) -> float:
        return float(self.w.sum())


def unit_rule(n: int, p: float, r: float) -> Rule1D:
    """Integrates g(u) u^p (1-u)^r over [0, 1]."""
    base = gauss_jacobi(n, r, p)
    u = (1 + base.nodes) / 2
    return Rule1D(u, base.weights * 2.0 ** (-(p + r + 1)))


def angle_rule(n: int, p: float, plus: float = 0.0, minus: float = 0.0) -> Rule1D:
    """Integrates g(theta) sin^p (1+cos)^plus (1-cos)^minus over [0, pi]."""
    half = (p - 1) / 2
    base = gauss_jacobi(n, half + minus, half + plus)
    t = base.nodes
    return Rule1D(np.arccos(t), base.weights, cos=t, sin=np.sqrt(1 - t * t))


@dataclass(frozen=True)
class MuGrid:
    kappa: float
    u: Rule1D
    psi: Rule1D
    theta: Rule1D
    phi: Rule1D

    @property
    def normalizer(self) -> float:
        """1 / integral of the unnormalized density, from the rules themselves."""
        return 1.0 / (self.u.mass * self.psi.mass**2 * self.theta.mass * self.phi.mass**2)


def _check_kappa(kappa: float, lower: float):
    if not kappa > lower:
        raise KappaOutOfRange(f"kappa must exceed {lower}, got {kappa}")


def mu_grid(kappa: float, n: int) -> MuGrid:
    _check_kappa(kappa, 0.5)
    return MuGrid(
        kappa,
        unit_rule(n, 2 * kappa - 1, 2 * kappa - 1),
        angle_rule(n, 2 * kappa - 1),
        angle_rule(n, 2 * kappa - 1),
        angle_rule(n, 2 * kappa - 2),
    )


def gamma_normalizer(kappa: float) -> float:
    """The closed form 4^(k-1) (2k-1)^2 Gamma(2k+1/2) / (pi^(5/2) Gamma(k)^2)."""
    log = (
        (kappa - 1) * math.log(4)
        + 2 * math.log(abs(2 * kappa - 1))
        + math.lgamma(2 * kappa + 0.5)
        - 2.5 * math.log(math.pi)
        - 2 * math.lgamma(kappa)
    )
    return math.exp(log)


def numeric_normalizer(kappa: float, nodes_per_dim: int = 16) -> float:
    return mu_grid(kappa, nodes_per_dim).normalizer


# ---------------------------------------------------------------------------
# integrals over the measure


def _half_sums(grid: MuGrid, fn) -> np.ndarray:
    # sum over (psi, phi) of fn(cos psi, inner) for each theta node, inner = cos psi cos t + sin psi sin t cos phi
    cp = grid.psi.cos[:, None, None]
    sp = grid.psi.sin[:, None, None]
    cf = grid.phi.cos[None, :, None]
    ct = grid.theta.cos[None, None, :]
    st = grid.theta.sin[None, None, :]
    inner = cp * ct + sp * st * cf
    w = grid.psi.w[:, None, None] * grid.phi.w[None, :, None]
    return np.sum(w * fn(cp, inner), axis=(0, 1))


def numeric_moment(alpha, kappa: float, nodes_per_dim: int = 16) -> float:
    """Integral of q^alpha against the normalized measure."""
    a1, a2, a3, a4 = (int(a) for a in alpha)
    grid = mu_grid(kappa, nodes_per_dim)
    u = grid.u
    radial = float(np.sum(u.w * u.x ** (a1 + a4) * (1 - u.x) ** (a2 + a3)))
    g1 = _half_sums(grid, lambda c, inner: c**a1 * inner**a4)
    g2 = _half_sums(grid, lambda c, inner: c**a2 * inner**a3)
    angular = float(np.sum(grid.theta.w * g1 * g2))
    return radial * angular * grid.normalizer


def numeric_bessel(x, y, kappa: float, nodes_per_dim: int = 16) -> float:
    """Integral of exp(<x tau(q), y>) against the normalized measure."""
    x1, x2 = map(float, x)
    y1, y2 = map(float, y)
    grid = mu_grid(kappa, nodes_per_dim)
    total = 0.0
    # exponent = x1y1 q1 + x2y2 q4 + x2y1 q2 + x1y2 q3 splits into a (q1, q4) and a (q2, q3) factor
    for uj, wj in zip(grid.u.x, grid.u.w):
        g1 = _half_sums(grid, lambda c, inner: np.exp(uj * (x1 * y1 * c + x2 * y2 * inner)))
        g2 = _half_sums(grid, lambda c, inner: np.exp((1 - uj) * (x2 * y1 * c + x1 * y2 * inner)))
        total += wj * float(np.sum(grid.theta.w * g1 * g2))
    return total * grid.normalizer


def _x_poly_float(f: Polynomial, z1, z2, degree_factor=None):
    out = np.zeros(np.broadcast(z1, z2).shape)
    for (e1, e2), c in f.items():
        coef = float(c)
        if degree_factor is not None:
            coef *= degree_factor[e1 + e2]
        out = out + coef * z1**e1 * z2**e2
    return out


def _q_on_grid(u, psi1, phi1, psi2, phi2, theta):
    # each argument is a Rule1D; returns broadcast q1..q4, the weight array and the angle arrays
    shape = (len(u.x), len(psi1.x), len(phi1.x), len(theta.x), len(psi2.x), len(phi2.x))

    def axis(v, k):
        s = [1] * 6
        s[k] = len(v)
        return np.asarray(v).reshape(s)

    uu = axis(u.x, 0)
    c1, s1, f1 = axis(psi1.cos, 1), axis(psi1.sin, 1), axis(phi1.cos, 2)
    ct, st = axis(theta.cos, 3), axis(theta.sin, 3)
    c2, s2, f2 = axis(psi2.cos, 4), axis(psi2.sin, 4), axis(phi2.cos, 5)
    q1 = uu * c1
    q4 = uu * (c1 * ct + s1 * st * f1)
    q2 = (1 - uu) * c2
    q3 = (1 - uu) * (c2 * ct + s2 * st * f2)
    w = axis(u.w, 0) * axis(psi1.w, 1) * axis(phi1.w, 2) * axis(theta.w, 3) * axis(psi2.w, 4) * axis(phi2.w, 5)
    assert np.broadcast(q1, q2, q3, q4, w).shape == shape
    return q1, q2, q3, q4, w


def numeric_Vint(f: Polynomial, x, kappa: float, nodes_per_dim: int = 10) -> float:
    """V f(x) from the derivative-free integral form (needs kappa > 3/2).

    The first part integrates f(x tau(q)) (1 + g0 + g3).  The second adds
    (2k - 3) times the radial average omega f against the correction kernel;
    its singular factors 1/(u sin phi1 sin psi1)^2 (1 + cos theta) and the
    mirror term are folded into the Jacobi exponents of dedicated rules.
    """
    if f.var_set is not VarSet.X:
        raise ValueError("numeric_Vint needs an X polynomial")
    _check_kappa(kappa, 1.5)
    k = kappa
    n = nodes_per_dim
    x1, x2 = map(float, x)
    grid = mu_grid(k, n)
    norm = grid.normalizer

    def f_at(q1, q2, q3, q4, factor=None):
        return _x_poly_float(f, x1 * q1 + x2 * q2, x1 * q3 + x2 * q4, factor)

    q1, q2, q3, q4, w = _q_on_grid(grid.u, grid.psi, grid.phi, grid.psi, grid.phi, grid.theta)
    main = np.sum(w * f_at(q1, q2, q3, q4) * (1 + 2 * (q1 + q4) + q1 * q4 - q2 * q3))

    # omega f: each degree-d component is scaled by the integral of t^(d + 4k - 1) over [0, 1]
    deg = max(f.degree, 0)
    t_rule = unit_rule(max(n, deg + 1), 4 * k - 1, 0)
    omega = [float(np.sum(t_rule.w * t_rule.x**d)) for d in range(deg + 1)]

    psi_mod = angle_rule(n, 2 * k - 3)
    phi_mod = angle_rule(n, 2 * k - 4)
    first = _q_on_grid(unit_rule(n, 2 * k - 3, 2 * k - 1), psi_mod, phi_mod, grid.psi, grid.phi,
                       angle_rule(n, 2 * k - 1, plus=-1))
    q1, q2, q3, q4, w = first
    part1 = np.sum(w * f_at(q1, q2, q3, q4, omega) * (q1 + q4) ** 2)
    second = _q_on_grid(unit_rule(n, 2 * k - 1, 2 * k - 3), grid.psi, grid.phi, psi_mod, phi_mod,
                        angle_rule(n, 2 * k - 1, minus=-1))
    q1, q2, q3, q4, w = second
    part2 = np.sum(w * f_at(q1, q2, q3, q4, omega) * (q2 - q3) ** 2)
    return float(norm * (main + (2 * k - 3) * (part1 - part2)))


def vint_kernel(kappa: float, u, psi1, psi2, theta, phi1, phi2) -> float:
    """The combined density of the two parts, relative to the plain measure times u^2 sin^2 psi1 sin^2 phi1."""
    c1, s1 = math.cos(psi1), math.sin(psi1)
    c2, s2 = math.cos(psi2), math.sin(psi2)
    ct, st = math.cos(theta), math.sin(theta)
    q1 = u * c1
    q4 = u * (c1 * ct + s1 * st * math.cos(phi1))
    q2 = (1 - u) * c2
    q3 = (1 - u) * (c2 * ct + s2 * st * math.cos(phi2))
    base = 1 + 2 * (q1 + q4) + q1 * q4 - q2 * q3
    r1 = u * math.sin(phi1) * s1
    r2 = (1 - u) * math.sin(phi2) * s2
    corr = (q1 + q4) ** 2 / ((1 + ct) * r1**2) - (q2 - q3) ** 2 / ((1 - ct) * r2**2)
    return r1**2 * (base + (2 * kappa - 3) * corr)


def vint_kernel_probe(kappa: float = 2.0, eps: float = 1e-2, samples: int = 9) -> list[tuple[float, float]]:
    """Evaluate the combined kernel at u = psi1 = eps, psi2 = pi - eps, phi = pi/2 for theta in (pi/2, pi)."""
    out = []
    for j in range(1, samples + 1):
        theta = math.pi / 2 + j * (math.pi / 2) / (samples + 1)
        out.append((theta, vint_kernel(kappa, eps, eps, math.pi - eps, theta, math.pi / 2, math.pi / 2)))
    return out


def convergence_table(alpha, kappa: float, node_counts, exact: float | None = None) -> list[dict]:
    rows = []
    for n in node_counts:
        v = numeric_moment(alpha, kappa, n)
        row = {"nodes": n, "value": v}
        if exact is not None:
            row["exact"] = exact
            row["rel_err"] = abs(v - exact) / abs(exact) if exact else abs(v)
        rows.append(row)
    return rows
