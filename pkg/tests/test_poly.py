"""Exact polynomial layer: ring axioms, calculus, parsing, rendering."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from singfib.poly import CHART6, Chart, ChartMismatch, Poly, PolyParseError, chart_2n, format_poly, parse_poly


def rand_poly(chart: Chart, rng: random.Random, terms: int = 4, deg: int = 3) -> Poly:
    p = chart.zero()
    for _ in range(rng.randint(0, terms)):
        t = chart.const(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
        for _ in range(rng.randint(0, deg)):
            t = t * chart.var(rng.choice(chart.names))
        p = p + t
    return p


def test_differentiate_cusp_matrix_entry():
    x1, t1 = CHART6.var("x1"), CHART6.var("t1")
    p = x1**3 - 3 * t1 * x1
    assert p.differentiate("x1") == 3 * x1**2 - 3 * t1


def test_differentiate_constant_in_other_variable():
    assert CHART6.var("t1").differentiate("x2").is_zero()


def test_differentiate_butterfly_entry():
    c = CHART6
    t1, t2, t3, x1 = c.var("t1"), c.var("t2"), c.var("t3"), c.var("x1")
    p = x1**5 + t1 * x1**3 + t2 * x1**2 + t3 * x1
    assert p.differentiate("x1") == 5 * x1**4 + 3 * t1 * x1**2 + 2 * t2 * x1 + t3


def test_differentiate_unknown_variable():
    with pytest.raises(ChartMismatch):
        CHART6.var("x1").differentiate("q")


def test_evaluate_examples():
    c = CHART6
    p = c.var("x1") ** 2 + c.var("x3") ** 2
    assert p.evaluate((0, 0, 0, 1, 0, 1)) == 2
    assert c.zero().evaluate((3, 1, 4, 1, 5, 9)) == 0
    crit = 3 * c.var("x1") ** 2 - 3 * c.var("t1")
    assert crit.evaluate((1, 0, 0, 1, 0, 0)) == 0


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        CHART6.var("x1").evaluate((1, 2, 3))


def test_arith_examples():
    c = CHART6
    x1, x2, x3 = c.var("x1"), c.var("x2"), c.var("x3")
    assert x1 * x1 == x1**2
    p = x1**3 - 2 * x2 + c.const(Fraction(1, 3))
    assert (p + (-p)).is_zero()
    assert (x2 + x3) * (x2 - x3) == x2**2 - x3**2


def test_ring_axioms_randomized():
    rng = random.Random(101)
    for _ in range(60):
        a, b, c = (rand_poly(CHART6, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_differentiate_commutes():
    rng = random.Random(55)
    for _ in range(40):
        p = rand_poly(CHART6, rng)
        v, w = rng.sample(CHART6.names, 2)
        assert p.differentiate(v).differentiate(w) == p.differentiate(w).differentiate(v)


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(77)
    for _ in range(40):
        p, q = rand_poly(CHART6, rng), rand_poly(CHART6, rng)
        pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(6)]
        assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
        assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


def test_sympy_oracle_product():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(13)
    syms = sympy.symbols(" ".join(CHART6.names))

    def to_sympy(p: Poly):
        total = sympy.Integer(0)
        for exp, coeff in p.terms.items():
            term = sympy.Rational(coeff.numerator, coeff.denominator)
            for s, e in zip(syms, exp):
                term *= s**e
            total += term
        return sympy.expand(total)

    for _ in range(10):
        a, b = rand_poly(CHART6, rng), rand_poly(CHART6, rng)
        assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
        v = rng.choice(CHART6.names)
        assert to_sympy(a.differentiate(v)) == sympy.expand(sympy.diff(to_sympy(a), syms[CHART6.index(v)]))


def test_format_canonical():
    c = CHART6
    p = 3 * c.var("x1") ** 2 - 3 * c.var("t1")
    assert format_poly(p) == "3*x1^2 - 3*t1"
    assert format_poly(c.zero()) == "0"


def test_parse_round_trip():
    rng = random.Random(31)
    for _ in range(40):
        p = rand_poly(CHART6, rng)
        assert parse_poly(format_poly(p), CHART6) == p


def test_parse_rationals_and_parens():
    c = CHART6
    p = parse_poly("1/2*x1^2 - (x2 + x3)*(x2 - x3)", c)
    assert p == c.var("x1") ** 2 * Fraction(1, 2) - (c.var("x2") ** 2 - c.var("x3") ** 2)


def test_parse_errors():
    with pytest.raises(PolyParseError):
        parse_poly("x1 +", CHART6)
    with pytest.raises(PolyParseError):
        parse_poly("x1 ^ x2", CHART6)
    with pytest.raises(ChartMismatch):
        parse_poly("nosuchvar", CHART6)


def test_chart_mismatch_add():
    other = Chart(("a", "b", "c", "d", "e", "f"))
    with pytest.raises(ChartMismatch):
        CHART6.var("x1") + other.var("a")


def test_substitute():
    c = CHART6
    x1, t1 = c.var("x1"), c.var("t1")
    p = x1**2 + t1
    assert p.substitute({"x1": t1}) == t1**2 + t1
    assert p.substitute({"x1": 2}) == t1 + 4


def test_parameter_chart_total_degree():
    chart = chart_2n(3, params=("s_par",))
    s = chart.var("s_par")
    x1 = chart.var("x1")
    # parameters do not count toward geometric degree
    assert (s**5 * x1).total_degree() == 1
