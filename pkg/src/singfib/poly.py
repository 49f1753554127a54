"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a dictionary mapping exponent tuples to Fraction
coefficients; zero coefficients are never stored, so equality of
polynomials is equality of dictionaries.  Every coefficient ring used by
the geometry layers (forms, bivectors, fibration components) is built on
this type; floating point only ever appears when a report renders a
decimal for a human.

A Chart fixes the ordered variable list.  The first ``n_geom`` names are
geometric coordinates (they carry basis covectors/vectors and are the
directions of exterior differentiation); any trailing names are formal
parameters (a deformation parameter or a scale symbol) that live inside
coefficients only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

Exponent = tuple[int, ...]
Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Chart:
    """An ordered list of variable names, optionally with trailing parameters."""

    names: tuple[str, ...]
    n_geom: int = -1

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in chart {self.names}")
        if self.n_geom < 0:
            object.__setattr__(self, "n_geom", len(self.names))
        if not 0 <= self.n_geom <= len(self.names):
            raise ValueError("n_geom out of range")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ChartMismatch(f"variable {name!r} not in chart {self.names}") from None

    def var(self, name: str) -> "Poly":
        """The coordinate function for ``name`` as a Poly."""
        i = self.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.dim))
        return Poly(self, {exp: Fraction(1)})

    def const(self, c: Rational) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.dim: c})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def geometric_names(self) -> tuple[str, ...]:
        return self.names[: self.n_geom]


class ChartMismatch(ValueError):
    """Raised when operands live on different charts or name an unknown variable."""


def _require_same_chart(a: "Poly", b: "Poly") -> None:
    if a.chart != b.chart:
        raise ChartMismatch(f"chart mismatch: {a.chart.names} vs {b.chart.names}")


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: Mapping[Exponent, Fraction]):
        clean: dict[Exponent, Fraction] = {}
        dim = chart.dim
        for exp, coeff in terms.items():
            if len(exp) != dim:
                raise ValueError(f"exponent {exp} has wrong length for chart of dim {dim}")
            c = Fraction(coeff)
            if c != 0:
                clean[exp] = c
        self.chart = chart
        self.terms = clean

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "Poly | Rational") -> "Poly":
        other = self._coerce(other)
        _require_same_chart(self, other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return Poly(self.chart, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.chart, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly | Rational") -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "Poly | Rational") -> "Poly":
        return (-self) + self._coerce(other)

    def __mul__(self, other: "Poly | Rational") -> "Poly":
        other = self._coerce(other)
        _require_same_chart(self, other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.chart, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.chart.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c: Rational) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return self.chart.zero()
        return Poly(self.chart, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.chart, frozenset(self.terms.items())))

    def _coerce(self, other: "Poly | Rational") -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.chart.const(other)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        """Total degree in the geometric variables (-1 for the zero polynomial)."""
        ng = self.chart.n_geom
        if not self.terms:
            return -1
        return max(sum(e[:ng]) for e in self.terms)

    def variables(self) -> set[str]:
        used: set[str] = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(self.chart.names[i])
        return used

    # -- calculus ----------------------------------------------------------

    def differentiate(self, name: str) -> "Poly":
        """Exact partial derivative with respect to a chart variable."""
        i = self.chart.index(name)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e == 0:
                continue
            new = exp[:i] + (e - 1,) + exp[i + 1 :]
            out[new] = out.get(new, Fraction(0)) + c * e
        return Poly(self.chart, out)

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        """Exact value at a full-length rational point."""
        if len(point) != self.chart.dim:
            raise ValueError(
                f"point of length {len(point)} for chart of dim {self.chart.dim}"
            )
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for base, e in zip(pt, exp):
                if e:
                    v *= base**e
            total += v
        return total

    def substitute(self, assignment: Mapping[str, "Poly | Rational"]) -> "Poly":
        """Substitute polynomials (or rationals) for a subset of the variables.

        Variables not mentioned are kept.  All replacement polynomials must
        live on the same chart, which is also the chart of the result.
        """
        if not assignment:
            return self
        chart = self.chart
        repl: dict[int, Poly] = {}
        for name, value in assignment.items():
            i = chart.index(name)
            repl[i] = value if isinstance(value, Poly) else chart.const(value)
            _require_same_chart(self, repl[i])
        result = chart.zero()
        for exp, c in self.terms.items():
            term = chart.const(c)
            for i, e in enumerate(exp):
                if not e:
                    continue
                if i in repl:
                    term = term * repl[i] ** e
                else:
                    name_poly = chart.var(chart.names[i])
                    term = term * name_poly**e
            result = result + term
        return result

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lex order (highest total degree first)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    """Canonical text form, e.g. ``3*x1^2 - 3*t1``."""
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for exp, coeff in p.sorted_terms():
        factors = [
            f"{p.chart.names[i]}^{e}" if e > 1 else p.chart.names[i]
            for i, e in enumerate(exp)
            if e
        ]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# -- parsing ------------------------------------------------------------------


class PolyParseError(ValueError):
    pass


class _Parser:
    """Recursive-descent parser for the canonical polynomial grammar.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)?
    atom   := rational | name | '(' expr ')' | '-' factor
    """

    def __init__(self, text: str, chart: Chart):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.chart = chart

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*^()/":
                tokens.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(text[i:j])
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(text[i:j])
                i = j
            else:
                raise PolyParseError(f"unexpected character {ch!r} in polynomial text")
        return tokens

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise PolyParseError("unexpected end of input")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek() is not None:
            raise PolyParseError(f"trailing input at token {self.peek()!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        p = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        p = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise PolyParseError(f"expected integer exponent, got {tok!r}")
            p = p ** int(tok)
        return p

    def atom(self) -> Poly:
        tok = self.take()
        if tok == "-":
            return -self.factor()
        if tok == "(":
            p = self.expr()
            if self.take() != ")":
                raise PolyParseError("missing closing parenthesis")
            return p
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise PolyParseError(f"bad rational denominator {den!r}")
                return self.chart.const(Fraction(num, int(den)))
            return self.chart.const(num)
        if tok[0].isalpha() or tok[0] == "_":
            return self.chart.var(tok)
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_poly(text: str, chart: Chart) -> Poly:
    """Parse the canonical grammar produced by :func:`format_poly`."""
    return _Parser(text, chart).parse()


# -- common charts -------------------------------------------------------------

#: Canonical 6-dimensional chart used by the local singularity models.
CHART6 = Chart(("t1", "t2", "t3", "x1", "x2", "x3"))

#: Alias chart for the near-symplectic constructions; positionally
#: u<->t1, s<->t2, t<->t3, x<->x1, y<->x2, z<->x3.
NS_CHART = Chart(("u", "s", "t", "x", "y", "z"))


def chart_2n(n: int, params: Sequence[str] = ()) -> Chart:
    """Chart (t1..t_{2n-3}, x1, x2, x3[, params...]) for half-dimension n."""
    if n < 3:
        raise ValueError("half-dimension n must be at least 3")
    names = tuple(f"t{i}" for i in range(1, 2 * n - 2)) + ("x1", "x2", "x3") + tuple(params)
    return Chart(names, n_geom=2 * n)
