import json
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from taitkneser.conics import Family
from taitkneser.curves import ParamCurve
from taitkneser.errors import FamilyPreconditionError, TaitKneserError, VertexInsideError
from taitkneser.osculate import (
    FamilyTrace,
    FoliationReport,
    contact_residuals,
    endpoint_interval,
    family_trace,
    null_residual,
    osculating_element,
    random_pair_check,
    verify_foliation,
)
from taitkneser.transforms import fit_conic, hooke_to_kepler, power_map, square_map_curve

# (x, y, t0, t1, family): vertex-free arcs, one or two per family
ARCS = {
    "parabola": ("t", "t^2", -1.5, -0.1, "circle"),
    "spiral": ("t*cos(t)", "t*sin(t)", 2.0, 10.0, "circle"),
    "offset circle": ("0.75 + cos(t)", "sin(t)", 0.1, 3.0, "hooke"),
    "hyperbola": ("(exp(t) - exp(-t))/2", "0.5 + (exp(t) + exp(-t))/2", 0.1, 2.0, "hooke"),
    "ellipse": ("2*cos(t)", "sin(t)", 0.1, 1.47, "kepler"),
    "cubic": ("t", "t^3", 0.2, 1.5, "vparabola"),
    "decay": ("t", "exp(-t)", 0.0, 2.0, "flinear"),
}


def arc(name):
    x, y, t0, t1, fam = ARCS[name]
    return ParamCurve.from_strings(x, y, t0, t1, name), fam


# osculating elements ----------------------------------------------------

@pytest.mark.parametrize("t", [0.0, 1.0, 2.5])
def test_circle_osculates_itself(t):
    el = osculating_element(ParamCurve.from_strings("cos(t)", "sin(t)", 0, 6), "circle", t)
    assert el.params == pytest.approx((0.0, 0.0, 1.0), abs=1e-14)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_origin_circle_hooke_element(r):
    c = ParamCurve.from_strings(f"{r}*cos(t)", f"{r}*sin(t)", 0, 6)
    a, b, cc = osculating_element(c, "hooke", 0.7).params
    assert (a, b, cc) == pytest.approx((1 / r**2, 0.0, 1 / r**2), rel=1e-13, abs=1e-14)
    assert a * cc - b * b == pytest.approx(1 / r**4, rel=1e-12)


@pytest.mark.parametrize("t", [-2.0, 0.3, 1.9])
def test_kepler_conic_osculates_itself(t):
    u = "(1 + 0.3*cos(t) + 0.2*sin(t))"
    c = ParamCurve.from_strings(f"cos(t)/{u}", f"sin(t)/{u}", -3, 3)
    assert osculating_element(c, "kepler", t).params == pytest.approx((0.3, 0.2, 1.0), abs=1e-13)


def test_cubic_vparabola_element():
    c = ParamCurve.from_strings("t", "t^3", 0, 2)
    el = osculating_element(c, "vparabola", 1.0)
    assert el.params == pytest.approx((3.0, -3.0, 1.0), abs=1e-13)
    # independent check: the quadratic through (1 - e, 1, 1 + e) on the cubic tends to it
    e = 1e-4
    xs = np.array([1 - e, 1.0, 1 + e])
    fit = np.polyfit(xs, xs**3, 2)
    assert tuple(fit) == pytest.approx((3.0, -3.0, 1.0), abs=1e-6)


def test_decay_flinear_element():
    c = ParamCurve.from_strings("t", "exp(-t)", 0, 2)
    el = osculating_element(c, "flinear", 0.0)
    assert el.params == pytest.approx((-2.0, -1.0, 2.0), abs=1e-14)
    # (x + 2)(y + 1) = 4 gives y = 4/(x+2) - 1: value 1, slope -1, curvature 1 at x = 0
    a, b, cc = el.params
    y = lambda x: b + cc * cc / (x - a)
    assert y(0.0) == pytest.approx(1.0)
    assert -cc * cc / (0 - a) ** 2 == pytest.approx(-1.0)
    assert 2 * cc * cc / (0 - a) ** 3 == pytest.approx(1.0)


@pytest.mark.parametrize(
    "x, y, t, family, message",
    [
        ("t", "t^3", 0.0, "circle", "zero curvature"),
        ("t", "exp(t)", 0.5, "flinear", "increasing"),
        ("t", "t", 0.5, "hooke", "star-shaped"),
        ("cos(t)", "sin(t)", 0.5, "vparabola", None),
        ("t^2", "t", 0.0, "vparabola", "vertical tangent"),
    ],
)
def test_precondition_failures(x, y, t, family, message):
    c = ParamCurve.from_strings(x, y, -1, 1)
    if message is None:
        osculating_element(c, family, t)  # a circle is locally a graph away from x' = 0
        return
    with pytest.raises(FamilyPreconditionError) as info:
        osculating_element(c, family, t)
    assert message in str(info.value)
    assert info.value.t == pytest.approx(t)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ARCS)), st.floats(min_value=0.0, max_value=1.0))
def test_second_order_contact(name, frac):
    c, fam = arc(name)
    t0, t1 = c.domain
    t = t0 + frac * (t1 - t0)
    el = osculating_element(c, fam, t)
    res = contact_residuals(c, el, t)
    assert max(abs(v) for v in res) <= 1e-8


# traces -----------------------------------------------------------------

def test_circle_trace_is_constant():
    tr = family_trace(ParamCurve.from_strings("cos(t)", "sin(t)", 0, 2 * math.pi), "circle", 8)
    np.testing.assert_allclose(tr.params, np.tile([0.0, 0.0, 1.0], (8, 1)), atol=1e-14)
    np.testing.assert_allclose(tr.tangents, 0.0, atol=1e-13)
    nr = null_residual(tr)
    assert (nr.value, nr.skipped, nr.used) == (0.0, 8, 0)


def test_parabola_trace_tangents_match_differences():
    c = ParamCurve.from_strings("t", "t^2", 0.1, 1.0)
    tr = family_trace(c, "circle", 64)
    h = 1e-4
    ahead = family_trace(c, "circle", 64, t=tr.t + h).params
    behind = family_trace(c, "circle", 64, t=tr.t - h).params
    fd = (ahead - behind) / (2 * h)
    np.testing.assert_allclose(tr.tangents, fd, rtol=1e-6, atol=1e-9)
    # tangent direction is (-y', x', 1) in unit-tangent form, up to scale
    X, Y = c.jets(tr.t, order=1)
    speed = np.hypot(X.c[1], Y.c[1])
    direction = np.column_stack([-Y.c[1] / speed, X.c[1] / speed, np.ones_like(speed)])
    cross = np.cross(tr.tangents, direction)
    assert np.max(np.abs(cross)) <= 1e-12 * np.max(np.abs(tr.tangents))


def test_hooke_trace_tangent_direction():
    c = ParamCurve.from_strings("0.5 + cos(t)", "sin(t)", 0.2, 1.4)
    tr = family_trace(c, "hooke", 32)
    pts = c.points(tr.t)
    x, y = pts[:, 0], pts[:, 1]
    direction = np.column_stack([y * y, -x * y, x * x])
    cross = np.cross(tr.tangents, direction)
    scale = np.linalg.norm(tr.tangents, axis=1) * np.linalg.norm(direction, axis=1)
    assert np.max(np.abs(cross).max(axis=1) / scale) <= 1e-12


def test_kepler_trace_tangent_direction():
    c, _ = arc("ellipse")
    tr = family_trace(c, "kepler", 32)
    pts = c.points(tr.t)
    th = np.arctan2(pts[:, 1], pts[:, 0])
    direction = np.column_stack([np.cos(th), np.sin(th), -np.ones_like(th)])
    cross = np.cross(tr.tangents, direction)
    assert np.max(np.abs(cross)) <= 1e-12 * np.max(np.abs(tr.tangents))


@pytest.mark.parametrize("name", sorted(ARCS))
def test_traces_are_null(name):
    c, fam = arc(name)
    nr = null_residual(family_trace(c, fam, 1000))
    assert nr.value <= 1e-8
    assert nr.skipped == 0


def test_hooke_ellipse_kepler_trace_is_null():
    c = ParamCurve.from_strings("sqrt(2)*cos(t)", "sin(t)", 0.1, 1.4)
    assert null_residual(family_trace(c, "kepler", 200)).value <= 1e-8


def test_empty_trace_rejected():
    tr = FamilyTrace.from_points("circle", [], np.empty((0, 3)), np.empty((0, 3)))
    with pytest.raises(TaitKneserError):
        null_residual(tr)


# endpoint interval ------------------------------------------------------

def test_parabola_endpoint_interval_positive():
    tr = family_trace(ParamCurve.from_strings("t", "t^2", 0.2, 1.0), "circle", 400)
    ep = endpoint_interval(tr)
    assert ep.oriented > 0
    assert ep.projection_mismatch <= 1e-6


def test_spiral_endpoint_interval_positive():
    tr = family_trace(ParamCurve.from_strings("t*cos(t)", "t*sin(t)", 2, 6), "circle", 400)
    ep = endpoint_interval(tr)
    assert ep.oriented > 0
    assert ep.projection_mismatch <= 1e-6


def test_straight_null_segment_has_zero_interval():
    s = np.linspace(0, 1, 11)
    tr = FamilyTrace.from_points("circle", s, np.column_stack([s, 0 * s, s]), np.tile([1.0, 0, 1], (11, 1)))
    assert endpoint_interval(tr).interval.value == 0.0


def test_vertex_inside_trace_rejected():
    tr = family_trace(ParamCurve.from_strings("2*cos(t)", "sin(t)", -0.5, 0.5), "circle", 41)
    with pytest.raises(VertexInsideError):
        endpoint_interval(tr)


@pytest.mark.parametrize("family", ["circle", "kepler"])
@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(min_value=-3, max_value=3), min_size=3, max_size=3),
    st.floats(min_value=0.5, max_value=4),
)
def test_random_null_traces_obey_endpoint_inequality(family, coeffs, length):
    # unit horizontal speed along a wandering direction, unit vertical speed
    s = np.linspace(0.0, length, 401)
    phi = coeffs[0] * np.sin(s) + coeffs[1] * np.cos(2 * s) + coeffs[2] * s
    mid = 0.5 * (phi[1:] + phi[:-1])
    h = np.diff(s)
    a = np.concatenate([[0.0], np.cumsum(h * np.cos(mid))])
    b = np.concatenate([[0.0], np.cumsum(h * np.sin(mid))])
    r = 1.0 + s
    tangents = np.column_stack([np.cos(phi), np.sin(phi), np.ones_like(s)])
    tr = FamilyTrace.from_points(family, s, np.column_stack([a, b, r]), tangents)
    assert endpoint_interval(tr).oriented >= -1e-10


# verification -----------------------------------------------------------

@pytest.mark.parametrize("name", sorted(ARCS))
def test_arcs_pass_verification(name):
    c, fam = arc(name)
    rep = verify_foliation(c, fam, 100)
    assert rep.passed
    assert rep.n_pairs == 4950
    assert rep.vertices == []
    assert rep.n_violations == 0
    assert rep.oracle_agreement == {"agree": 4950}
    expected = "disjoint" if fam == "flinear" else "nested"
    assert rep.pair_verdicts == {expected: 4950}
    assert rep.oracle_relations == {"disjoint_unnested" if fam == "flinear" else "nested": 4950}
    # every pairwise interval has the good sign, not only the endpoints
    if fam != "flinear":
        assert rep.min_pairwise_interval > 0


def test_offset_circle_hooke_arc_at_sixty_samples():
    c = ParamCurve.from_strings("0.75 + cos(t)", "sin(t)", 0.1, 3.0)
    rep = verify_foliation(c, "hooke", 60)
    assert rep.passed
    assert rep.n_pairs == 60 * 59 // 2


def test_full_ellipse_fails_with_four_vertices():
    c = ParamCurve.from_strings("2*cos(t)", "sin(t)", 0, 2 * math.pi)
    rep = verify_foliation(c, "circle", 100)
    assert not rep.passed
    assert len(rep.vertices) == 4
    assert rep.oracle_relations.get("intersecting", 0) >= 1
    assert rep.n_violations > 0 and rep.violations


def test_vertices_are_singular_points_of_the_trace():
    c = ParamCurve.from_strings("2*cos(t)", "sin(t)", 0, 2 * math.pi)
    rep = verify_foliation(c, "circle", 50, use_oracle=False)
    tr = family_trace(c, "circle", 400)
    median = np.median(np.linalg.norm(tr.tangents, axis=1))
    at = family_trace(c, "circle", len(rep.vertices), t=[v.t for v in rep.vertices])
    assert np.all(np.linalg.norm(at.tangents, axis=1) <= 1e-6 * median)


def test_report_round_trip():
    c = ParamCurve.from_strings("2*cos(t)", "sin(t)", 0, 2 * math.pi, "ellipse")
    rep = verify_foliation(c, "circle", 30)
    d = rep.to_dict()
    text = json.dumps(d, sort_keys=True)
    again = FoliationReport.from_dict(json.loads(text))
    assert json.dumps(again.to_dict(), sort_keys=True) == text


def test_square_map_matches_osculating_kepler_conic():
    c = ParamCurve.from_strings("cos(t)", "0.5*sin(t) + 0.2*cos(t)^2", 0.2, 1.2)
    sq = square_map_curve(c)
    for t in (0.3, 0.7, 1.1):
        hooke = osculating_element(c, "hooke", t)
        kepler = osculating_element(sq, "kepler", t)
        assert kepler.params == pytest.approx(hooke_to_kepler(hooke).params, abs=1e-6)
        # the same through the point map and a fit, with no closed form involved
        lam = np.linalg.eigvalsh([[hooke.params[0], hooke.params[1]], [hooke.params[1], hooke.params[2]]])
        assert lam.min() > 0
        ang = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        pts = _ellipse_points(hooke, ang)
        fitted, rms = fit_conic(power_map(pts, 2), "kepler")
        assert rms <= 1e-9
        assert kepler.params == pytest.approx(fitted.params, abs=1e-6)


def _ellipse_points(el, ang):
    a, b, c = el.params
    w, v = np.linalg.eigh([[a, b], [b, c]])
    unit = np.column_stack([np.cos(ang) / np.sqrt(w[0]), np.sin(ang) / np.sqrt(w[1])])
    return unit @ v.T


@pytest.mark.parametrize("family", [f.value for f in Family])
def test_random_pairs_agree(family):
    check = random_pair_check(family, 1000, seed=1)
    assert check.passed
    assert check.disagree == 0
    assert check.agree + check.resolved + check.band_excluded == 1000
