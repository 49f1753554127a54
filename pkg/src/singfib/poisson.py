"""Rank-2 Poisson bivectors from Casimir families by the determinant recipe.

For a model with Casimirs C_1..C_{2n-2} on an oriented chart, the bracket
of two coordinates is the determinant

    pi^{ij} = det( e_i | e_j | grad C_1 | ... | grad C_{2n-2} )

scaled by the chosen non-vanishing function k.  The orientation is the
coordinate volume in chart order on both source and target; a single
global sign (and, for the two kinds whose catalogued formulas absorb a
constant, a recorded positive scale) relates the raw determinant to the
catalogued expressions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .catalog import FibrationModel, critical_points_sample, random_noncritical_point
from .exterior import KVector, schouten, wedge
from .poly import Poly, Rational
from .report import FAIL, MISMATCH, PASS, CheckReport
from .reference import claimed_bivector


@dataclass(frozen=True)
class PoissonBivector:
    model: FibrationModel
    k: Poly
    pi: KVector  # degree 2, includes the factor k

    def matrix_at(self, point: Sequence[Rational]) -> list[list[Fraction]]:
        return self.pi.coefficient_matrix(point)


def flaschka_ratiu(model: FibrationModel, k: Poly | Rational = 1) -> PoissonBivector:
    """Build the bivector with pi^{ij} given by the Casimir determinant, scaled by k."""
    chart = model.chart
    if not isinstance(k, Poly):
        k = chart.const(k)
    if k.is_zero():
        raise ValueError("scaling function k must be a nonzero polynomial")
    if len(model.casimirs) != 2 * model.n - 2:
        raise ValueError("Casimir count must be 2n-2")
    ng = chart.n_geom
    names = chart.geometric_names()
    grads = [[c.differentiate(v) for v in names] for c in model.casimirs]
    zero, one = chart.zero(), chart.one()

    terms: dict[tuple[int, int], Poly] = {}
    for i in range(ng):
        for j in range(i + 1, ng):
            cols: list[list[Poly]] = []
            cols.append([one if r == i else zero for r in range(ng)])
            cols.append([one if r == j else zero for r in range(ng)])
            for g in grads:
                cols.append(list(g))
            rows = [[cols[c][r] for c in range(ng)] for r in range(ng)]
            val = linalg.poly_det(rows)
            if not val.is_zero():
                terms[(i, j)] = k * val
    return PoissonBivector(model, k, KVector(chart, 2, terms))


def casimir_annihilation(b: PoissonBivector) -> CheckReport:
    """pi^# dC_i = 0, exactly, for every Casimir of the model."""
    chart = b.model.chart
    names = chart.geometric_names()
    mat = b.pi.coefficient_matrix()
    for c_idx, cas in enumerate(b.model.casimirs):
        grad = [cas.differentiate(v) for v in names]
        for i in range(len(names)):
            residual = chart.zero()
            for j in range(len(names)):
                residual = residual + mat[i][j] * grad[j]
            if not residual.is_zero():
                return CheckReport(
                    b.model.name,
                    "casimir",
                    FAIL,
                    f"pi^# dC_{c_idx + 1} has nonzero component {names[i]}",
                    witness=str(residual),
                )
    return CheckReport(b.model.name, "casimir", PASS, f"{len(b.model.casimirs)} Casimirs annihilated exactly")


def foreign_casimir_residual(b: PoissonBivector, h: Poly) -> list[Poly]:
    """pi^# dh as a vector of polynomials (nonzero when h is not a Casimir)."""
    chart = b.model.chart
    names = chart.geometric_names()
    mat = b.pi.coefficient_matrix()
    grad = [h.differentiate(v) for v in names]
    out = []
    for i in range(len(names)):
        acc = chart.zero()
        for j in range(len(names)):
            acc = acc + mat[i][j] * grad[j]
        out.append(acc)
    return out


def rank_at(b: PoissonBivector, point: Sequence[Rational]) -> int:
    return linalg.rank(b.matrix_at(point))


def jacobi(b: PoissonBivector) -> CheckReport:
    """Schouten self-bracket vanishes exactly."""
    bracket = schouten(b.pi, b.pi)
    if bracket.is_zero():
        return CheckReport(b.model.name, "jacobi", PASS, f"[pi,pi] = 0 with k = {b.k}")
    return CheckReport(
        b.model.name,
        "jacobi",
        FAIL,
        f"[pi,pi] != 0 with k = {b.k}",
        witness=str(bracket),
    )


def decomposability(b: PoissonBivector) -> CheckReport:
    """pi ^ pi = 0 exactly; equivalent to rank <= 2 everywhere."""
    sq = wedge(b.pi, b.pi)
    if sq.is_zero():
        return CheckReport(b.model.name, "decomposable", PASS, "pi^pi = 0 identically")
    return CheckReport(b.model.name, "decomposable", FAIL, "pi^pi != 0", witness=str(sq))


@dataclass(frozen=True)
class BivectorMatch:
    model: FibrationModel
    sign: int  # sign applied to the raw result for the best agreement
    scale: Fraction
    mismatched: tuple[tuple[int, int], ...]
    computed: KVector
    normalized: KVector
    claimed: KVector

    @property
    def exact(self) -> bool:
        return not self.mismatched

    def report(self) -> CheckReport:
        name = self.model.name
        scale_note = "" if self.scale == 1 else f", scale {self.scale}"
        if self.exact:
            return CheckReport(
                name,
                "bivector-match",
                PASS,
                f"termwise equal to the catalogued formula (global sign {self.sign:+d}{scale_note})",
            )
        chart = self.model.chart
        names = chart.names
        parts = []
        for i, j in self.mismatched:
            got = self.normalized.coeff((i, j))
            want = self.claimed.coeff((i, j))
            parts.append(f"e{names[i]}^e{names[j]}: derived {got} vs catalogued {want}")
        return CheckReport(
            name,
            "bivector-match",
            MISMATCH,
            f"{len(self.mismatched)} term(s) differ (best global sign {self.sign:+d}{scale_note})",
            witness="; ".join(parts),
        )


def match_claimed_bivector(model: FibrationModel) -> BivectorMatch:
    """Compare the raw determinant bivector (k = 1) against the catalogued formula.

    The raw result is divided by the model's recorded scale, then compared
    termwise under both global signs; the sign with fewer differing terms
    wins and any leftover differences are reported per term.
    """
    computed = flaschka_ratiu(model, 1).pi
    claimed = claimed_bivector(model)
    inv = Fraction(1) / model.claimed_scale
    normalized = computed.scale(inv)

    def mismatches(candidate: KVector) -> list[tuple[int, int]]:
        keys = set(candidate.terms) | set(claimed.terms)
        return sorted(k for k in keys if candidate.coeff(k) != claimed.coeff(k))

    plus = mismatches(normalized)
    minus = mismatches(-normalized)
    if len(minus) < len(plus):
        sign, picked, bad = -1, -normalized, minus
    else:
        sign, picked, bad = 1, normalized, plus
    return BivectorMatch(model, sign, model.claimed_scale, tuple(bad), computed, picked, claimed)


def rank_stratification(
    model: FibrationModel, samples: int, rng: random.Random, k: Poly | Rational = 1
) -> CheckReport:
    """Rank 2 at random non-critical points, rank 0 at sampled critical points."""
    b = flaschka_ratiu(model, k)
    for _ in range(samples):
        p = random_noncritical_point(model, rng)
        r = rank_at(b, p)
        if r != 2:
            return CheckReport(
                model.name, "rank", FAIL, f"rank {r} != 2 at non-critical point", witness=str(p)
            )
    for p in critical_points_sample(model, samples, rng):
        r = rank_at(b, p)
        if r != 0:
            return CheckReport(
                model.name, "rank", FAIL, f"rank {r} != 0 at critical point", witness=str(p)
            )
    return CheckReport(
        model.name,
        "rank",
        PASS,
        f"rank 2 at {samples} non-critical and 0 at {samples} critical points",
    )
