"""Exact symbolic engine for Poisson bivectors, leaf symplectic forms and
near-symplectic 2-forms attached to singular fibration local models."""

from .catalog import ALL_KINDS, FibrationModel, get_model
from .exterior import (
    KForm,
    KVector,
    PolyMap,
    ext_d,
    hodge_star,
    interior,
    poincare_homotopy,
    pullback,
    schouten,
    wedge,
)
from .poly import CHART6, Chart, Poly, parse_poly
from .poisson import PoissonBivector, flaschka_ratiu
from .report import CheckReport
from .suite import run_suite

__all__ = [
    "ALL_KINDS",
    "CHART6",
    "Chart",
    "CheckReport",
    "FibrationModel",
    "KForm",
    "KVector",
    "Poly",
    "PolyMap",
    "PoissonBivector",
    "ext_d",
    "flaschka_ratiu",
    "get_model",
    "hodge_star",
    "interior",
    "parse_poly",
    "poincare_homotopy",
    "pullback",
    "run_suite",
    "schouten",
    "wedge",
]
