"""Near-symplectic candidates: recipes, rescaling, repair, positivity."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from singfib.exterior import KForm, ext_d, form_term, wedge_power, volume_form
from singfib.interval import parse_box
from singfib.nearsymp import (
    NSModel,
    RejectedBox,
    SOS_CUBE_FACTOR,
    assemble,
    assemble_and_verify,
    build_omega0,
    darboux_normal_form_check,
    darboux_normal_form_data,
    decompose,
    epsilon_bound,
    fibre_positivity,
    kernel_at,
    ns_model,
    repair_correction,
    rescale,
    sos_top_power,
    verify_claimed_form,
)
from singfib.reference import NS_CHART_EPS, claimed_assembled_form, claimed_correction

C = NS_CHART_EPS
U, S, T, X, Y, Z, EPS = (C.var(n) for n in ("u", "s", "t", "x", "y", "z", "eps"))


def f(coeff, *names):
    return form_term(C, coeff, names)


# -- omega0 recipes -----------------------------------------------------------------


def test_fold_omega0():
    expect = (
        f(1, "u", "s")
        + f(X, "t", "x") + f(X, "y", "z")
        + f(Y, "t", "y") + f(-Y, "x", "z")
        + f(-2 * Z, "t", "z") + f(-2 * Z, "x", "y")
    )
    assert build_omega0(ns_model("fold")) == expect


def test_cusp_omega0_and_its_differential():
    w0 = build_omega0(ns_model("cusp"))
    w = 3 * (X * X - T)
    expect = (
        f(1, "u", "s")
        + f(w, "t", "x") + f(w, "y", "z")
        + f(2 * Y, "t", "y") + f(-2 * Y, "x", "z")
        + f(-2 * Z, "t", "z") + f(-2 * Z, "x", "y")
    )
    assert w0 == expect
    # d(omega0) = 6x dx^dy^dz - 3 dt^dy^dz
    assert ext_d(w0) == f(6 * X, "x", "y", "z") + f(-3, "t", "y", "z")


def test_butterfly_omega0_extra_terms():
    w0 = build_omega0(ns_model("butterfly"))
    dec = decompose(w0)
    assert dec.residue == f(-(X**3), "t", "u") + f(X * X, "t", "s")
    assert dec.f == 5 * X**4 - 3 * U * X * X + 2 * S * X - T


def test_synthetic_linear_component():
    model = NSModel("cusp", C.var("x"), rescaled=True)
    w0 = build_omega0(model)
    assert w0 == f(1, "u", "s") + f(1, "t", "x") + f(1, "y", "z")


# -- sum of squares ------------------------------------------------------------------


def test_sos_cusp():
    (ff, gg, hh), rep = sos_top_power(build_omega0(ns_model("cusp")))
    assert (ff, gg, hh) == (3 * (X * X - T), 2 * Y, -2 * Z)
    assert rep.status == "pass"
    cube = wedge_power(build_omega0(ns_model("cusp")), 3)
    want = volume_form(C).scale((9 * (X * X - T) ** 2 + 4 * Y * Y + 4 * Z * Z).scale(SOS_CUBE_FACTOR))
    assert cube == want


def test_sos_fold_and_butterfly():
    (ff, gg, hh), rep = sos_top_power(build_omega0(ns_model("fold")))
    assert (ff, gg, hh) == (X, Y, -2 * Z)
    assert rep.status == "pass"
    # butterfly's residue terms wedge to zero against the rest
    _, rep = sos_top_power(build_omega0(ns_model("butterfly")))
    assert rep.status == "pass"


def test_sos_zero_form():
    zero = KForm(C, 2, {})
    (_, _, _), rep = sos_top_power(zero)
    assert rep.status == "pass"  # 0 = 0


# -- rescaling ------------------------------------------------------------------------


def test_rescale_cusp():
    w0 = build_omega0(ns_model("cusp"))
    scaled = rescale(w0)
    w = 3 * (X * X - T)
    assert scaled.coeff((2, 3)) == EPS * w
    assert scaled.coeff((4, 5)) == EPS * w
    assert scaled.coeff((2, 4)) == 2 * Y  # untouched
    # eps = 1 recovers the original
    back = KForm(C, 2, {i: c.substitute({"eps": 1}) for i, c in scaled.terms.items()})
    assert back == w0


def test_rescale_scales_fold_leading_component():
    scaled = rescale(build_omega0(ns_model("fold")))
    assert scaled.coeff((2, 3)) == EPS * X
    # the fold model itself is flagged as not rescaled during assembly
    assert not ns_model("fold").rescaled


# -- claimed corrections ----------------------------------------------------------------


def test_claimed_corrections():
    assert claimed_correction("fold").is_zero()
    cusp = claimed_correction("cusp")
    assert cusp == f(6 * X * Y, "y", "z") + f(-3 * Y, "t", "x")
    bf = claimed_correction("butterfly")
    assert len(bf.terms) == 7
    p = -10 * X**3 + 3 * U * X - S
    assert bf.coeff((3, 4)) == 4 * Z * p  # dx^dy block of the leading product
    with pytest.raises(ValueError):
        claimed_correction("lefschetz")


# -- assembly, closedness, repair ----------------------------------------------------------


def test_cusp_claimed_assembly_is_the_catalogued_form():
    # the catalogued assembled 2-form equals the rescaled recipe plus the
    # effective correction -6xy dz^dx - 3y dt^dz
    eta_eff = f(-6 * X * Y, "z", "x") + f(-3 * Y, "t", "z")
    assembled = rescale(build_omega0(ns_model("cusp"))) + eta_eff.scale(EPS)
    assert assembled == claimed_assembled_form("cusp")
    assert ext_d(assembled).is_zero()


def test_fold_claimed_form_closed():
    assert ext_d(claimed_assembled_form("fold")).is_zero()
    assert claimed_assembled_form("fold") == build_omega0(ns_model("fold"))


def test_swallowtail_butterfly_claimed_forms_not_closed():
    assert not ext_d(claimed_assembled_form("swallowtail")).is_zero()
    assert not ext_d(claimed_assembled_form("butterfly")).is_zero()


def test_repaired_cusp_correction_matches_hand_computation():
    base = rescale(build_omega0(ns_model("cusp")))
    eta = repair_correction(base)
    expect = (
        f(3 * X * Y, "x", "z")
        + f(-3 * X * Z, "x", "y")
        + f(Y.scale(Fraction(-3, 2)), "t", "z")
        + f(Z.scale(Fraction(3, 2)), "t", "y")
    )
    assert eta == expect
    assert ext_d(base + eta.scale(EPS)).is_zero()
    # the correction vanishes on the fibre zero section, hence on the critical locus
    for coeff in eta.terms.values():
        assert coeff.substitute({"y": 0, "z": 0}).is_zero()


@pytest.mark.parametrize("kind", ("fold", "cusp", "swallowtail", "butterfly"))
def test_assemble_and_verify_outcomes(kind):
    cand, reports = assemble_and_verify(kind, "claimed", 6, random.Random(f"ns:{kind}"))
    by_check = {r.check: r.status for r in reports}
    if kind == "fold":
        assert by_check["closedness"] == "pass"
        assert "repair" not in by_check
    else:
        assert by_check["closedness"] == "mismatch"
        assert by_check["repair"] == "pass"
        assert cand.eta_source == "repair"
    assert by_check["near-symplectic"] == "pass"
    assert by_check["sos-eps0"] == "pass"
    assert cand.closed()


@pytest.mark.parametrize("kind", ("fold", "cusp"))
def test_claimed_forms_pass_definition_checks(kind):
    reports = verify_claimed_form(kind, 6, random.Random(f"vc:{kind}"))
    assert [r.status for r in reports] == ["pass", "pass"]


def test_kernel_at_critical_point_is_coordinate_block():
    omega = claimed_assembled_form("cusp")
    point = [Fraction(0), Fraction(0), Fraction(1), Fraction(1), Fraction(0), Fraction(0), Fraction(1, 8)]
    kernel = kernel_at(omega, point)
    assert len(kernel) == 4
    spanned = {tuple(v) for v in kernel}
    coords = {tuple(Fraction(1) if i == j else Fraction(0) for i in range(6)) for j in (2, 3, 4, 5)}
    assert spanned == coords


# -- fibre positivity -------------------------------------------------------------------


def test_cusp_fibre_numerator_exact():
    result, reports = fibre_positivity("cusp")
    assert result.frame_ok and result.identity_ok
    want = 9 * EPS * (X * X - T) ** 2 + 4 * Y * Y * (1 - 3 * EPS * X) + 4 * Z * Z
    assert result.numerator == want
    # catalogued expression differs exactly by 6 eps (x^2-t)^2
    assert result.numerator - result.claimed == 6 * EPS * (X * X - T) ** 2


def test_swallowtail_fibre_numerator_matches_claim():
    result, _ = fibre_positivity("swallowtail")
    assert result.matches_claim
    w = 4 * X**3 + 2 * S * X + T
    p = 12 * X * X - 2 * S
    assert result.numerator == EPS * w * w + 2 * Y * Y * (EPS * p + 2) + 4 * Z * Z * (EPS * p + 1)


def test_butterfly_fibre_numerator_documented_difference():
    result, _ = fibre_positivity("butterfly")
    assert not result.matches_claim
    diff = result.numerator - result.claimed
    expect = (
        80 * X**3 * Y * Y * EPS
        + 120 * X**3 * Z * Z * EPS
        - 12 * U * X * Z * Z * EPS
        + 8 * S * Y * Y * EPS
        + 12 * S * Z * Z * EPS
    )
    assert diff == expect


def test_epsilon_bound_cusp_exact():
    bound = epsilon_bound("cusp")
    assert bound.bound == Fraction(1, 3)


def test_epsilon_bounds_default_boxes():
    assert epsilon_bound("swallowtail").bound == Fraction(5)
    assert epsilon_bound("butterfly").bound == Fraction(5, 104)


def test_epsilon_bound_monotone_under_shrinking():
    big = epsilon_bound("cusp", parse_box("|x|<=1"))
    small = epsilon_bound("cusp", parse_box("|x|<=1/2"))
    assert small.bound == Fraction(2, 3)
    assert small.bound >= big.bound


def test_epsilon_bound_rejects_degenerate_box():
    with pytest.raises(RejectedBox):
        epsilon_bound("cusp", parse_box("|x|<=1,|t|<=1"))


def test_epsilon_bound_requires_needed_variables():
    with pytest.raises(RejectedBox):
        epsilon_bound("butterfly", parse_box("|x|<=1"))


def test_repaired_candidates_admit_positive_bounds():
    for kind, expect in (("cusp", Fraction(2, 3)), ("swallowtail", Fraction(20, 61)), ("butterfly", Fraction(5, 26))):
        cand, _ = assemble_and_verify(kind, "claimed", 1, random.Random(0))
        assert epsilon_bound(kind, omega=cand.omega).bound == expect


# -- Darboux-type normal form --------------------------------------------------------------


def test_darboux_normal_form():
    assert darboux_normal_form_check().status == "pass"
    std = darboux_normal_form_data(1)
    assert std.closed and std.kernel_dim == 4 and std.gradient_rank == 3
    assert std.kernel_dim_on_locus == 4  # x-coordinates zeroed leaves the rank-2 piece
    flipped = darboux_normal_form_data(-1)
    assert not flipped.closed
    assert flipped.kernel_dim == 4 and flipped.gradient_rank == 3
