"""Exact linear algebra over the integers and the rationals.

Everything here works on plain nested lists/tuples of ``int`` or
``fractions.Fraction``; no floating point is ever introduced.  Matrices are
small (at most a few dozen rows), so the algorithms favour clarity:
Bareiss fraction-free elimination for rank and determinant, Gauss-Jordan
over ``Fraction`` for solving, and a textbook row Hermite normal form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[int | Fraction]]


class InconsistentSystemError(ValueError):
    pass


class NonUniqueSolutionError(ValueError):
    pass


def _integral_rows(m: Matrix) -> list[list[int]]:
    # Row scaling by a nonzero constant preserves rank and zero-ness.
    rows = []
    for row in m:
        den = lcm(1, *(Fraction(x).denominator for x in row))
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; return (rank, sign-corrected last pivot)."""
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == n_rows:
            break
    return r, sign * prev


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    r, _ = _bareiss(_integral_rows(m))
    return r


def determinant(m: Matrix) -> Fraction | int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    scale = Fraction(1)
    rows = []
    for row in m:
        den = lcm(1, *(Fraction(x).denominator for x in row))
        scale /= den
        rows.append([int(Fraction(x) * den) for x in row])
    r, last = _bareiss(rows)
    if r < n:
        return 0
    det = last * scale
    return int(det) if det.denominator == 1 else det


def solve(a: Matrix, b: Sequence[int | Fraction]) -> list[Fraction]:
    """Unique solution of ``a x = b`` over the rationals.

    Overdetermined systems are fine as long as they are consistent.  Raises
    :class:`InconsistentSystemError` or :class:`NonUniqueSolutionError`.
    """
    n_rows = len(a)
    n_cols = len(a[0])
    if len(b) != n_rows:
        raise ValueError("right-hand side length does not match row count")
    aug = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n_rows):
        if aug[i][n_cols] != 0:
            raise InconsistentSystemError(f"equation {i} reduces to 0 = {aug[i][n_cols]}")
    if r < n_cols:
        free = sorted(set(range(n_cols)) - set(pivots))
        raise NonUniqueSolutionError(f"free unknowns at columns {free}")
    return [aug[i][n_cols] for i in range(n_cols)]


def inverse(m: Matrix) -> list[list[Fraction]]:
    n = len(m)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        try:
            cols.append(solve(m, e))
        except NonUniqueSolutionError:
            raise ValueError("matrix is singular") from None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of an integer matrix; zero rows are dropped.

    The result is upper triangular with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``.  Its rows span the same
    ``Z``-module as the input rows.
    """
    a = [list(map(int, row)) for row in rows]
    if not a:
        return []
    n_cols = len(a[0])
    r = 0
    for c in range(n_cols):
        # Euclid on column c among rows r.. until one nonzero remains
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[k] = a[k], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)]
