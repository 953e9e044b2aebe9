import math
from functools import lru_cache

import numpy as np
import pytest

from pg4curves.corpus import fixed_curves
from pg4curves.dsl import parse_curve
from pg4curves.errors import (
    ApparatusFailure,
    DegenerateThirdCurvature,
    DomainContainsSingularity,
    NotApplicable,
    PreconditionViolation,
)
from pg4curves.frenet import SignTriple, apparatus_at, decompose_position, reparametrize_by_arclength
from pg4curves.integrator import CurvatureSpec, integrate_frenet, sample_to_curvedef
from pg4curves.special import (
    FLAG_NAMES,
    binormal_nonexistence_audit,
    classify_curve,
    normal_nonexistence_audit,
    osculating_checks,
    rectifying_checks,
    relative_variation,
    sample_curve,
    scaled_rectifying_audit,
    slant_axis_derivative,
    slant_helix_axis,
    sphere_data,
    sphere_fd_check,
    synthesize_rectifying,
    three_type_axis,
)

MINUS_FIRST = SignTriple(-1, 1, 1)
FIXED = {c.label: c for c in fixed_curves()}
GENERIC = parse_curve("x=s; y=s^3/6+0.2*s; z=s^2/2; w=sin(s)+0.1*s^4 on [0.1,1]")


def vmax(v):
    return max(abs(c) for c in v)


@lru_cache(maxsize=None)
def integrated_wcurve(k, t, sg):
    return sample_to_curvedef(integrate_frenet(CurvatureSpec(k, t, sg, MINUS_FIRST, (0, 1))))


@lru_cache(maxsize=None)
def rectifying_curve(signs=(-1, 1, 1), c=2.0):
    return sample_to_curvedef(synthesize_rectifying(SignTriple(*signs), c=c).integrate())


def test_relative_variation():
    assert relative_variation([2.0, 2.0, 2.0]) == 0.0
    assert relative_variation([0.0, 0.5]) == 0.5
    assert relative_variation([10.0, 11.0]) == pytest.approx(1 / 10.5)


def test_integrated_wcurve_flags():
    report = classify_curve(integrated_wcurve(1, 1, 2))
    assert report["w_curve"].flag and report["slant_helix"].flag and report["three_type_slant_helix"].flag
    assert set(report.flags) == set(FLAG_NAMES)
    consts = report["w_curve"].fitted_constants
    assert (consts["kappa"], consts["tau"], consts["sigma"]) == pytest.approx((1, 1, 2), abs=1e-7)


def test_cosh_is_not_rectifying():
    report = classify_curve(FIXED["cosh_sinh"])
    assert not report["rectifying"].flag
    assert report["rectifying"].residual == pytest.approx(1.0 / report.scale, rel=1e-9)
    assert report["slant_helix"].note.startswith("not applicable")


def test_generic_curve_has_no_special_flags():
    report = classify_curve(GENERIC)
    assert not any(report[name].flag for name in FLAG_NAMES)


def test_classification_aborts_on_wide_failure():
    # T' is lightlike along the whole curve
    with pytest.raises(ApparatusFailure):
        classify_curve(parse_curve("x=s; y=s^2; z=s^2; w=s on [0,1]"), grid=21)


def test_synthesized_rectifying_flag():
    report = classify_curve(rectifying_curve())
    assert report["rectifying"].flag
    assert report["rectifying"].residual <= 1e-7


def test_slant_axis_on_wcurves():
    for label, ratio in (("wcurve_1_1_2", 0.5), ("wcurve_1_2_4", 0.5)):
        app = apparatus_at(FIXED[label], 0.4)
        U = slant_helix_axis(app)
        expected = app.N + app.B2 * ratio
        assert vmax(U - expected) <= 1e-12
        assert vmax(slant_axis_derivative(app)) <= 1e-6


def test_slant_axis_unit_ratio():
    app = apparatus_at(integrated_wcurve(1, 2, 2), 0.5)
    assert vmax(slant_helix_axis(app) - (app.N + app.B2)) <= 1e-6


def test_slant_axis_rejects_non_helix():
    with pytest.raises(PreconditionViolation):
        slant_helix_axis(apparatus_at(GENERIC, 0.5))


def test_slant_axis_needs_sigma():
    with pytest.raises(DegenerateThirdCurvature):
        slant_helix_axis(apparatus_at(FIXED["helix_b1"], 0.5))


def test_three_type_axis_on_wcurves():
    fit = three_type_axis(FIXED["wcurve_1_2_4"])
    assert abs(fit.a) <= 1e-9 and abs(fit.b) <= 1e-9
    assert fit.residual <= 1e-6
    app = apparatus_at(FIXED["wcurve_1_2_4"], fit.s[7])
    assert vmax(fit.U[7] - (app.N * 2.0 + app.B2)) <= 1e-9


def test_three_type_axis_generic_has_large_residual():
    fit = three_type_axis(GENERIC)
    assert fit.residual > 1e-3
    assert not classify_curve(GENERIC)["three_type_slant_helix"].flag


def test_binormal_audit_wcurve():
    audit = binormal_nonexistence_audit(FIXED["wcurve_1_1_2"])
    assert audit.score >= 0.1
    assert audit.nullity == 0
    assert max(abs(w) for w in audit.w) <= 1e-6
    assert min(audit.w_singular_values) > 0


def test_binormal_audit_needs_sigma():
    with pytest.raises(DegenerateThirdCurvature):
        binormal_nonexistence_audit(FIXED["cosh_sinh"])


def test_sphere_radius_wcurve():
    for s in (0.0, 0.5, 1.0):
        sp = sphere_data(reparametrize_by_arclength(FIXED["wcurve_1_1_2"], s))
        assert abs(sp.radius2 - 0.75) <= 1e-9
        assert abs(sp.radius2_components - 0.75) <= 1e-9
        assert abs(sp.residual_analytic) <= 1e-9


def test_sphere_fd_on_varying_curvature():
    for t in (0.2, 0.5, 0.9):
        analytic, fd = sphere_fd_check(GENERIC, t)
        assert abs(analytic - fd) <= 1e-6 * max(1.0, abs(analytic))


def test_sphere_needs_sigma():
    with pytest.raises(DegenerateThirdCurvature):
        sphere_data(reparametrize_by_arclength(FIXED["helix_b0"], 1.0))


def test_osculating_checks_not_applicable_on_wcurve():
    with pytest.raises(NotApplicable):
        osculating_checks(FIXED["wcurve_1_1_2"])


def test_rectifying_checks_on_synthesized_curve():
    rc = rectifying_checks(rectifying_curve())
    assert rc["max_abs_mu2"] <= 1e-7
    assert rc["mu3_deviation"] <= 1e-6 and rc["mu4_deviation"] <= 1e-6
    assert rc["distance_fit"]["residual"] <= 1e-6
    assert abs(rc["distance_fit"]["leading"] - 1) <= 1e-6
    assert rc["distance_derivative_runtime"] <= 1e-6
    # the recipe starts at x = a + c, so arclength s = x and mu1 - s vanishes
    assert abs(rc["c"]) <= 1e-9


def test_rectifying_checks_not_applicable_on_wcurve():
    with pytest.raises(NotApplicable):
        rectifying_checks(FIXED["wcurve_1_1_2"])


def test_rectifying_recipe_curvatures():
    r = synthesize_rectifying(MINUS_FIRST, c=2.0)
    spec = r.curvature_spec()
    assert spec.k_fn(0.7) == pytest.approx(math.sin(0.7) / 2.7, rel=1e-15)
    r2 = synthesize_rectifying(SignTriple(1, -1, 1), c=1.0)
    assert r2.curvature_spec().k_fn(0.7) == pytest.approx(math.sinh(0.7) / 1.7, rel=1e-15)
    assert (r.tau, r.sigma) == (1.0, 1.0)


def test_rectifying_hyperbolic_branch_is_rectifying():
    rc = rectifying_checks(rectifying_curve((1, -1, 1), 1.0))
    assert rc["max_abs_mu2"] <= 1e-7


@pytest.mark.parametrize("c, interval", [(0.0, (0, 1)), (-0.5, (0, 1))])
def test_rectifying_singular_domain(c, interval):
    with pytest.raises(DomainContainsSingularity):
        synthesize_rectifying(MINUS_FIRST, interval, c)


def test_rectifying_sine_zero_inside():
    with pytest.raises(DomainContainsSingularity):
        synthesize_rectifying(MINUS_FIRST, (1, 4), 2.0)


def test_scaled_rectifying_constant_rho():
    beta = rectifying_curve()
    out = scaled_rectifying_audit("1", beta)
    # rho = 1: v = 1, rho' = 0, so the expression reduces to s + c**
    expected = [s + out["c_star"] for s in out["s"]]
    assert np.allclose(out["profile"], expected, atol=1e-12)
    assert out["max_abs"] > 1.0


def test_scaled_rectifying_exponential_rho():
    beta = rectifying_curve()
    out = scaled_rectifying_audit("exp(s)", beta)
    s, c, d, cs = out["s"][3], out["c"], out["d"], out["c_star"]
    # rho = e^s: v = sqrt(2) e^s, rho'/v = rho/v = 1/sqrt(2) constant
    expected = (1 / math.sqrt(2) + 1 / math.sqrt(2)) * (s + cs)
    assert out["profile"][3] == pytest.approx(expected, rel=1e-12)
    assert c is not None and d is not None


def test_scaled_rectifying_needs_rectifying_beta():
    with pytest.raises(NotApplicable):
        scaled_rectifying_audit("1", FIXED["wcurve_1_1_2"])


def test_normal_nonexistence_corpus_curve():
    n = normal_nonexistence_audit(FIXED["wcurve_1_2_4"])
    assert n["max_dmu1_deviation"] <= 1e-10
    assert n["max_abs_mu1"] > 0 and n["sign_changes"] <= 1
    assert n["normal_possible"] is False


def test_normal_nonexistence_shifted_curve():
    shifted = parse_curve("x=s-0.5; y=cosh(s); z=sinh(s)+s^3; w=s^2 on [0,1]")
    n = normal_nonexistence_audit(shifted)
    assert n["sign_changes"] == 1
    cs = sample_curve(shifted, 101)
    zeros = [p.t for p in cs.samples if abs(p.dec.mu[0]) <= 1e-12]
    assert zeros == [0.5]


def test_rectifying_mu1_offset_matches_recipe():
    dec = decompose_position(reparametrize_by_arclength(rectifying_curve(), 0.3))
    assert dec.mu[0] == pytest.approx(2.3, abs=1e-12)
