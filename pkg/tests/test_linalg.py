"""Exact linear algebra against brute-force and sympy oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from singfib import linalg
from singfib.poly import CHART6

from test_poly import rand_poly


def rand_matrix(rng, rows, cols):
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]


def test_rank_and_nullspace_consistency():
    rng = random.Random(5)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = rand_matrix(rng, rows, cols)
        r = linalg.rank(m)
        kernel = linalg.nullspace(m)
        assert r + len(kernel) == cols
        for v in kernel:
            assert all(linalg.dot(row, v) == 0 for row in m)


def test_solve_and_inconsistency():
    rng = random.Random(9)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = rand_matrix(rng, rows, cols)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(cols)]
        b = linalg.mat_vec(m, x)
        sol = linalg.solve(m, b)
        assert linalg.mat_vec(m, sol) == b
    with pytest.raises(linalg.InconsistentSystem):
        linalg.solve([[1, 0], [1, 0]], [1, 2])


def test_poly_det_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(23)
    syms = sympy.symbols(" ".join(CHART6.names))

    def to_sympy(p):
        total = sympy.Integer(0)
        for exp, coeff in p.terms.items():
            term = sympy.Rational(coeff.numerator, coeff.denominator)
            for s, e in zip(syms, exp):
                term *= s**e
            total += term
        return total

    for _ in range(8):
        n = rng.randint(1, 4)
        rows = [[rand_poly(CHART6, rng, terms=2, deg=1) for _ in range(n)] for _ in range(n)]
        ours = linalg.poly_det(rows)
        theirs = sympy.expand(sympy.Matrix([[to_sympy(e) for e in row] for row in rows]).det())
        assert to_sympy(ours).expand() == theirs


def test_poly_det_permutation_block():
    # unit columns collapse the expansion; determinant of a permutation is its sign
    c = CHART6
    zero, one = c.zero(), c.one()
    rows = [
        [zero, one, zero],
        [zero, zero, one],
        [one, zero, zero],
    ]
    assert linalg.poly_det(rows) == one  # 3-cycle, even
