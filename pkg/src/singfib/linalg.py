"""Exact linear algebra over the rationals and over polynomial entries.

Everything here is fraction-exact: ranks, kernels and solutions are
computed by Gaussian elimination on Fraction matrices, and determinants
of polynomial matrices by cofactor expansion along the sparsest column
(the fibration Jacobians are mostly unit columns, so the expansion
collapses to a small minor almost immediately).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Poly

Matrix = list[list[Fraction]]


def _as_matrix(rows: Sequence[Sequence[Fraction | int]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [row[:] for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    if not rows:
        return 0
    _, pivots = _rref(_as_matrix(rows))
    return len(pivots)


def nullspace(rows: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """A basis of the right kernel, one vector per free column.

    Each basis vector has entry 1 in its free column and the pivot rows
    back-substituted, so the result is integer-free of surprises and
    deterministic for a given matrix.
    """
    m = _as_matrix(rows)
    if not m:
        return []
    cols = len(m[0])
    red, pivots = _rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis: list[list[Fraction]] = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


class InconsistentSystem(ValueError):
    """Raised when a linear system has no solution."""


def solve(rows: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """One exact solution of ``rows @ x = rhs`` (free variables set to 0)."""
    m = _as_matrix(rows)
    b = [Fraction(v) for v in rhs]
    if len(m) != len(b):
        raise ValueError("rhs length does not match row count")
    cols = len(m[0]) if m else 0
    aug = [row + [bv] for row, bv in zip(m, b)]
    red, pivots = _rref(aug)
    for r in range(len(red)):
        if all(red[r][c] == 0 for c in range(cols)) and red[r][cols] != 0:
            raise InconsistentSystem("right-hand side not in the column space")
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            raise InconsistentSystem("right-hand side not in the column space")
        x[pc] = red[r][cols]
    return x


def dot(a: Sequence[Fraction | int], b: Sequence[Fraction | int]) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def mat_vec(rows: Sequence[Sequence[Fraction | int]], v: Sequence[Fraction | int]) -> list[Fraction]:
    return [dot(row, v) for row in rows]


def poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by sparse cofactor expansion."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    chart = rows[0][0].chart
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")

    def det(row_idx: tuple[int, ...], col_idx: tuple[int, ...]) -> Poly:
        k = len(row_idx)
        if k == 1:
            return rows[row_idx[0]][col_idx[0]]
        # expand along the column with the fewest nonzero entries
        best_c = min(
            range(k),
            key=lambda c: sum(1 for r in range(k) if not rows[row_idx[r]][col_idx[c]].is_zero()),
        )
        total = chart.zero()
        cols_rest = col_idx[:best_c] + col_idx[best_c + 1 :]
        for r in range(k):
            entry = rows[row_idx[r]][col_idx[best_c]]
            if entry.is_zero():
                continue
            minor = det(row_idx[:r] + row_idx[r + 1 :], cols_rest)
            signed = minor if (r + best_c) % 2 == 0 else -minor
            total = total + entry * signed
        return total

    return det(tuple(range(n)), tuple(range(n)))
