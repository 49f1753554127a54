"""Exterior algebra of forms and multivector fields with polynomial coefficients.

Elements are graded: a ``KForm`` of degree k maps strictly increasing
k-tuples of geometric coordinate indices to ``Poly`` coefficients, and a
``KVector`` does the same over the coordinate vector basis.  The calculus
operators live here as free functions: wedge, exterior derivative,
pullback along a polynomial map, the Euclidean Hodge star, interior
product, the Schouten bracket of bivector fields, and the radial homotopy
operator that inverts d on star-shaped charts.

Parameters of the chart (anything past ``chart.n_geom``) are inert
scalars: they appear in coefficients but carry no basis covector, so d,
the star and the homotopy operator never touch them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import Chart, ChartMismatch, Poly, Rational

Index = tuple[int, ...]


def _merge_indices(a: Index, b: Index) -> tuple[int, Index] | None:
    """Merge two strictly increasing tuples; return (sign, merged) or None on collision."""
    merged: list[int] = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining entries of a
            if (len(a) - i) % 2 == 1:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class _Graded:
    """Shared implementation for forms and multivectors."""

    __slots__ = ("chart", "degree", "terms")
    basis_prefix = "?"

    def __init__(self, chart: Chart, degree: int, terms: Mapping[Index, Poly]):
        if not 0 <= degree <= chart.n_geom:
            raise ValueError(f"degree {degree} out of range for chart of dim {chart.n_geom}")
        clean: dict[Index, Poly] = {}
        for idx, coeff in terms.items():
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} has wrong length for degree {degree}")
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} must be strictly increasing")
            if any(not 0 <= i < chart.n_geom for i in idx):
                raise ValueError(f"index tuple {idx} outside geometric block")
            if coeff.chart != chart:
                raise ChartMismatch("coefficient lives on a different chart")
            if not coeff.is_zero():
                clean[idx] = coeff
        self.chart = chart
        self.degree = degree
        self.terms = clean

    # -- linear structure --------------------------------------------------

    def _same_kind(self, other: "_Graded") -> None:
        if type(self) is not type(other):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.chart != other.chart:
            raise ChartMismatch("chart mismatch")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "_Graded") -> "_Graded":
        self._same_kind(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        degree = self.degree if self.terms or not other.terms else other.degree
        return type(self)(self.chart, degree, out)

    def __neg__(self) -> "_Graded":
        return type(self)(self.chart, self.degree, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "_Graded") -> "_Graded":
        return self + (-other)

    def scale(self, f: Poly | Rational) -> "_Graded":
        if not isinstance(f, Poly):
            f = self.chart.const(f)
        return type(self)(self.chart, self.degree, {i: f * c for i, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Graded) or type(self) is not type(other):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.chart, self.degree, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- component access ----------------------------------------------------

    def coeff(self, idx: Sequence[int]) -> Poly:
        """Coefficient with antisymmetric index handling (any index order)."""
        order = tuple(idx)
        if len(set(order)) != len(order):
            return self.chart.zero()
        sorted_idx = tuple(sorted(order))
        sign = _permutation_sign_of(order)
        base = self.terms.get(sorted_idx)
        if base is None:
            return self.chart.zero()
        return base if sign == 1 else -base

    def coefficient_matrix(self, point: Sequence[Rational] | None = None):
        """Full antisymmetric matrix of a degree-2 element.

        With a point, entries are Fractions; without, they are Polys.
        """
        if self.degree != 2:
            raise ValueError("coefficient_matrix needs a degree-2 element")
        n = self.chart.n_geom
        if point is None:
            zero = self.chart.zero()
            mat = [[zero for _ in range(n)] for _ in range(n)]
        else:
            mat = [[Fraction(0) for _ in range(n)] for _ in range(n)]
        for (i, j), c in self.terms.items():
            val = c if point is None else c.evaluate(point)
            mat[i][j] = val
            mat[j][i] = -val
        return mat

    def __str__(self) -> str:
        return format_graded(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_graded(self)!r})"


def _permutation_sign_of(order: Sequence[int]) -> int:
    sign = 1
    order = list(order)
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return sign


class KForm(_Graded):
    basis_prefix = "d"


class KVector(_Graded):
    basis_prefix = "e"


def format_graded(a: _Graded) -> str:
    if not a.terms:
        return "0"
    names = a.chart.names
    pieces: list[str] = []
    for idx in sorted(a.terms):
        coeff = a.terms[idx]
        basis = "^".join(f"{a.basis_prefix}{names[i]}" for i in idx) or "1"
        text = str(coeff)
        if text == "1":
            pieces.append(basis)
        elif text == "-1":
            pieces.append(f"-{basis}")
        elif len(coeff.terms) == 1 and not text.startswith("-"):
            pieces.append(f"{text}*{basis}")
        else:
            pieces.append(f"({text})*{basis}")
    return " + ".join(pieces)


# -- constructors ---------------------------------------------------------------


def form_term(chart: Chart, coeff: Poly | Rational, names: Sequence[str]) -> KForm:
    """A single form term like ``coeff * dt1^dx1`` given variable names."""
    return _term(KForm, chart, coeff, names)


def vector_term(chart: Chart, coeff: Poly | Rational, names: Sequence[str]) -> KVector:
    return _term(KVector, chart, coeff, names)


def _term(cls, chart: Chart, coeff: Poly | Rational, names: Sequence[str]):
    if not isinstance(coeff, Poly):
        coeff = chart.const(coeff)
    order = tuple(chart.index(n) for n in names)
    if len(set(order)) != len(order):
        return cls(chart, len(order), {})
    sign = _permutation_sign_of(order)
    return cls(chart, len(order), {tuple(sorted(order)): coeff if sign == 1 else -coeff})


def zero_form(chart: Chart, degree: int) -> KForm:
    return KForm(chart, degree, {})


def scalar_form(p: Poly) -> KForm:
    return KForm(p.chart, 0, {(): p})


def volume_form(chart: Chart) -> KForm:
    return KForm(chart, chart.n_geom, {tuple(range(chart.n_geom)): chart.one()})


# -- operators -------------------------------------------------------------------


def wedge(a: _Graded, b: _Graded) -> _Graded:
    """Exterior product; operands must be of the same kind on the same chart."""
    if type(a) is not type(b):
        raise TypeError("wedge needs two forms or two multivectors")
    if a.chart != b.chart:
        raise ChartMismatch("chart mismatch in wedge")
    degree = a.degree + b.degree
    if degree > a.chart.n_geom:
        return type(a)(a.chart, a.chart.n_geom, {})
    out: dict[Index, Poly] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            merged = _merge_indices(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            add = ca * cb if sign == 1 else -(ca * cb)
            s = out.get(idx)
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
    return type(a)(a.chart, degree, out)


def wedge_power(a: _Graded, m: int) -> _Graded:
    if m < 1:
        raise ValueError("wedge_power needs m >= 1")
    result = a
    for _ in range(m - 1):
        result = wedge(result, a)
    return result


def ext_d(a: KForm) -> KForm:
    """Exterior derivative in the geometric coordinates."""
    chart = a.chart
    out = KForm(chart, min(a.degree + 1, chart.n_geom), {})
    for idx, coeff in a.terms.items():
        for v in range(chart.n_geom):
            dc = coeff.differentiate(chart.names[v])
            if dc.is_zero():
                continue
            merged = _merge_indices((v,), idx)
            if merged is None:
                continue
            sign, new_idx = merged
            out = out + KForm(chart, a.degree + 1, {new_idx: dc if sign == 1 else -dc})
    return out


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map between charts, one component per target variable."""

    source: Chart
    target: Chart
    components: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.target.dim:
            raise ValueError("component count must equal the target dimension")
        for comp in self.components:
            if comp.chart != self.source:
                raise ChartMismatch("map components must live on the source chart")

    def __call__(self, point: Sequence[Rational]) -> list[Fraction]:
        return [comp.evaluate(point) for comp in self.components]


def compose_poly(p: Poly, f: PolyMap) -> Poly:
    """p o f for a polynomial on the target chart of f."""
    if p.chart != f.target:
        raise ChartMismatch("polynomial does not live on the map's target chart")
    result = f.source.zero()
    for exp, c in p.terms.items():
        term = f.source.const(c)
        for i, e in enumerate(exp):
            if e:
                term = term * f.components[i] ** e
        result = result + term
    return result


def pullback(a: KForm, f: PolyMap) -> KForm:
    """Pullback f*(a); sends each target covector dy_j to d(f_j)."""
    if a.chart != f.target:
        raise ChartMismatch("form does not live on the map's target chart")
    src = f.source
    diffs: list[KForm] = []
    for comp in f.components:
        df = KForm(src, 1, {})
        for v in range(src.n_geom):
            dc = comp.differentiate(src.names[v])
            if not dc.is_zero():
                df = df + KForm(src, 1, {(v,): dc})
        diffs.append(df)
    total = KForm(src, a.degree, {})
    for idx, coeff in a.terms.items():
        piece = scalar_form(compose_poly(coeff, f))
        for j in idx:
            piece = wedge(piece, diffs[j])
        total = total + piece
    return total


def hodge_star(a: KForm) -> KForm:
    """Euclidean Hodge star for the chart's coordinate orthonormal frame."""
    chart = a.chart
    n = chart.n_geom
    out = KForm(chart, n - a.degree, {})
    everything = tuple(range(n))
    for idx, coeff in a.terms.items():
        comp = tuple(i for i in everything if i not in idx)
        sign = _permutation_sign_of(idx + comp)
        out = out + KForm(chart, n - a.degree, {comp: coeff if sign == 1 else -coeff})
    return out


def interior(v: KVector, a: KForm) -> KForm:
    """Contraction i_v a for a degree-1 multivector v."""
    if v.degree != 1:
        raise ValueError("interior product needs a degree-1 vector field")
    if v.chart != a.chart:
        raise ChartMismatch("chart mismatch in interior product")
    chart = a.chart
    if a.degree == 0:
        return KForm(chart, 0, {})
    out = KForm(chart, a.degree - 1, {})
    for idx, coeff in a.terms.items():
        for pos, i in enumerate(idx):
            vi = v.terms.get((i,))
            if vi is None:
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            c = vi * coeff
            out = out + KForm(chart, a.degree - 1, {rest: c if pos % 2 == 0 else -c})
    return out


def evaluate_form(a: KForm, vectors: Sequence[KVector]) -> Poly:
    """a(v_1, ..., v_k) by iterated interior products."""
    if len(vectors) != a.degree:
        raise ValueError("number of vectors must equal the form degree")
    current = a
    for v in vectors:
        current = interior(v, current)
    return current.terms.get((), a.chart.zero())


def schouten(a: KVector, b: KVector) -> KVector:
    """Schouten bracket of two bivector fields, as a trivector field.

    Components follow the convention that makes ``schouten(pi, pi)`` equal
    twice the Jacobiator of the bracket induced by pi on coordinates.
    """
    if a.degree != 2 or b.degree != 2:
        raise ValueError("schouten is implemented for bivector fields")
    if a.chart != b.chart:
        raise ChartMismatch("chart mismatch in schouten bracket")
    chart = a.chart
    n = chart.n_geom
    names = chart.names
    out: dict[Index, Poly] = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = chart.zero()
                for l in range(n):
                    dl = names[l]
                    total = total + a.coeff((i, l)) * b.coeff((j, k)).differentiate(dl)
                    total = total - a.coeff((j, l)) * b.coeff((i, k)).differentiate(dl)
                    total = total + a.coeff((k, l)) * b.coeff((i, j)).differentiate(dl)
                    total = total + b.coeff((i, l)) * a.coeff((j, k)).differentiate(dl)
                    total = total - b.coeff((j, l)) * a.coeff((i, k)).differentiate(dl)
                    total = total + b.coeff((k, l)) * a.coeff((i, j)).differentiate(dl)
                if not total.is_zero():
                    out[(i, j, k)] = total
    return KVector(chart, 3, out)


def poincare_homotopy(a: KForm, directions: Sequence[int] | None = None) -> KForm:
    """Radial homotopy operator K with d(Ka) + K(da) = a for degree >= 1.

    On a monomial coefficient of degree m in the radial variables inside a
    form term carrying r radial differentials, the integral contributes
    the factor 1/(m + r).  By default every geometric variable is radial;
    restricting ``directions`` to a sub-block gives the fibrewise operator,
    whose identity holds on forms all of whose terms carry positive
    degree in the chosen block (a condition :func:`block_degree` exposes).
    """
    k = a.degree
    if k < 1:
        raise ValueError("homotopy operator is undefined on 0-forms")
    chart = a.chart
    ng = chart.n_geom
    radial = tuple(range(ng)) if directions is None else tuple(sorted(directions))
    radial_set = set(radial)
    out = KForm(chart, k - 1, {})
    for idx, coeff in a.terms.items():
        r = sum(1 for i in idx if i in radial_set)
        for exp, c in coeff.terms.items():
            m = sum(exp[i] for i in radial)
            if m + r == 0:
                raise ValueError(
                    "form has a term of degree zero in the radial block; "
                    "the homotopy identity does not apply to it"
                )
            mono = Poly(chart, {exp: c / (m + r)})
            for pos, i in enumerate(idx):
                if i not in radial_set:
                    continue
                rest = idx[:pos] + idx[pos + 1 :]
                piece = chart.var(chart.names[i]) * mono
                out = out + KForm(chart, k - 1, {rest: piece if pos % 2 == 0 else -piece})
    return out


def block_degree(a: KForm, directions: Sequence[int]) -> int:
    """Smallest combined (differential + coefficient) degree of a's terms in the block."""
    block = set(directions)
    best: int | None = None
    for idx, coeff in a.terms.items():
        r = sum(1 for i in idx if i in block)
        for exp, _ in coeff.terms.items():
            m = sum(exp[i] for i in block)
            d = r + m
            best = d if best is None else min(best, d)
    return 0 if best is None else best
