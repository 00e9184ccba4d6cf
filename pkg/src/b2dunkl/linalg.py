"""Exact solution of overdetermined rational linear systems by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import SingularSystem


def _integer_row(row):
    m = lcm(*(Fraction(v).denominator for v in row)) if row else 1
    return [int(Fraction(v) * m) for v in row]


def solve_exact(A, B):
    """Solve A X = B exactly, where A is r x c (r >= c) and B is r x k.

    Returns X as a c x k list of Fractions.  Raises SingularSystem unless A has
    full column rank and every column of B lies in its range.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    k = len(B[0]) if rows else 0
    if rows < cols:
        raise SingularSystem(f"{rows} equations cannot determine {cols} unknowns")
    M = [_integer_row(list(A[r]) + list(B[r])) for r in range(rows)]
    width = cols + k

    # Bareiss forward elimination
    prev = 1
    pivot_row = 0
    for c in range(cols):
        p = next((r for r in range(pivot_row, rows) if M[r][c]), None)
        if p is None:
            raise SingularSystem(f"rank deficient: no pivot in column {c}")
        M[pivot_row], M[p] = M[p], M[pivot_row]
        piv = M[pivot_row][c]
        for r in range(pivot_row + 1, rows):
            f = M[r][c]
            M[r] = [(piv * M[r][j] - f * M[pivot_row][j]) // prev for j in range(width)]
        prev = piv
        pivot_row += 1

    for r in range(cols, rows):
        if any(M[r][cols:]):
            raise SingularSystem("inconsistent system: right-hand side outside the column space")

    X = [[Fraction(0)] * k for _ in range(cols)]
    for r in range(cols - 1, -1, -1):
        for j in range(k):
            acc = Fraction(M[r][cols + j])
            for c in range(r + 1, cols):
                acc -= M[r][c] * X[c][j]
            X[r][j] = acc / M[r][r]
    return X
