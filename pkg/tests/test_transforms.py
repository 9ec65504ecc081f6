import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from taitkneser.conics import ConicElement, classify_conic
from taitkneser.errors import BranchCutError, FitError
from taitkneser.transforms import DualLawPair, dual_exponent, fit_conic, hooke_to_kepler, power_map


def kepler_samples(a, b, c, n=32):
    th = np.linspace(-0.9 * math.pi, 0.9 * math.pi, n)
    u = a * np.cos(th) + b * np.sin(th) + c
    r = 1 / u
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def hooke_samples(a, b, c, n=64, extent=2.0):
    """Points of a x^2 + 2 b x y + c y^2 = 1 (ellipse: one turn; hyperbola: one branch)."""
    m = np.array([[a, b], [b, c]])
    lam, vec = np.linalg.eigh(m)
    if lam[0] > 0:
        s = np.linspace(0, 2 * math.pi, n, endpoint=False)
        local = np.column_stack([np.cos(s) / math.sqrt(lam[0]), np.sin(s) / math.sqrt(lam[1])])
    else:
        s = np.linspace(-extent, extent, n)
        local = np.column_stack([np.sinh(s) / math.sqrt(-lam[0]), np.cosh(s) / math.sqrt(lam[1])])
    return local @ vec.T


# dual exponents -----------------------------------------------------------

@pytest.mark.parametrize("a, b, p", [(1, -2, 2), (-2, 1, 0.5), (5, -2.5, 4)])
def test_dual_exponent_examples(a, b, p):
    pair = dual_exponent(a)
    assert (pair.b, pair.exponent) == (b, p)


def test_dual_exponent_pole():
    with pytest.raises(ValueError):
        dual_exponent(-3)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-50, max_value=50).filter(lambda a: abs(a + 3) > 1e-3))
def test_dual_exponent_is_an_involution(a):
    pair = dual_exponent(a)
    assert (pair.a + 3) * (pair.b + 3) == pytest.approx(4.0, rel=1e-12)
    assert pair.dual().b == pytest.approx(a, rel=1e-9, abs=1e-9)
    assert isinstance(pair, DualLawPair)


# power map ----------------------------------------------------------------

def test_power_map_examples():
    assert power_map([(1, 1)], 2) == pytest.approx(np.array([[0.0, 2.0]]))
    th = np.linspace(0, 2 * math.pi, 50)
    img = power_map(np.column_stack([np.cos(th), np.sin(th)]), 2)
    np.testing.assert_allclose(img, np.column_stack([np.cos(2 * th), np.sin(2 * th)]), atol=1e-15)


def test_origin_rejected_for_negative_or_fractional_powers():
    with pytest.raises(BranchCutError):
        power_map([(0, 0), (1, 0)], -1)
    with pytest.raises(BranchCutError):
        power_map([(0, 0), (1, 0)], 0.5)
    assert power_map([(0, 0)], 2) == pytest.approx(np.zeros((1, 2)))


def test_branch_tracking_keeps_arcs_continuous():
    # an arc crossing the negative real axis: the principal branch would jump there
    th = np.linspace(0.8 * math.pi, 1.2 * math.pi, 41)
    img = power_map(np.column_stack([np.cos(th), np.sin(th)]), 0.5)
    steps = np.hypot(*np.diff(img, axis=0).T)
    assert steps.max() < 0.02
    with pytest.raises(BranchCutError):
        power_map([(-1, 0)], 0.5, track=False)


def test_coarse_sampling_cannot_be_tracked():
    with pytest.raises(BranchCutError):
        power_map([(1, 0), (-1, 1e-3), (1, 0)], 0.5)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(st.floats(min_value=0.01, max_value=10), st.floats(min_value=-10, max_value=10)),
        min_size=1,
        max_size=20,
    )
)
def test_square_then_root_is_identity_in_right_half_plane(pts):
    pts = np.array(pts)
    back = power_map(power_map(pts, 2), 0.5, track=False)
    scale = np.hypot(pts[:, 0], pts[:, 1])[:, None]
    assert np.all(np.abs(back - pts) <= 1e-12 * np.maximum(scale, 1.0))


# fitting ------------------------------------------------------------------

def test_fit_recovers_kepler():
    k, rms = fit_conic(kepler_samples(0.3, 0.2, 1), "kepler")
    np.testing.assert_allclose(k.params, (0.3, 0.2, 1), atol=1e-12)
    assert rms <= 1e-12


def test_fit_recovers_hooke():
    h, rms = fit_conic(hooke_samples(1, 0, 0.25, n=32), "hooke")
    np.testing.assert_allclose(h.params, (1, 0, 0.25), atol=1e-12)
    assert rms <= 1e-12


def test_fit_rejects_degenerate_samples():
    with pytest.raises(FitError):
        fit_conic([(1, 0)] * 3, "kepler")
    line = np.column_stack([np.linspace(1, 2, 10), np.linspace(1, 2, 10)])
    with pytest.raises(FitError):
        fit_conic(line, "hooke")
    with pytest.raises(ValueError):
        fit_conic(kepler_samples(0, 0, 1), "circle")


@pytest.mark.parametrize(
    "params",
    [(2, 0, 1), (1, 0.3, 0.5), (0.5, -0.2, 2), (1, 0, -0.25), (0.25, 0.5, -1), (-1, 0.3, 2)],
)
def test_square_map_takes_hooke_to_kepler(params):
    pts = hooke_samples(*params)
    k, rms = fit_conic(power_map(pts, 2), "kepler")
    assert rms <= 1e-9
    np.testing.assert_allclose(k.params, hooke_to_kepler(ConicElement("hooke", params)).params, atol=1e-9)
    # c > 0 when the trace is positive; otherwise the image is the repulsive branch
    a, _, c = params
    assert (k.params[2] > 0) == (a + c > 0)


def test_rectangular_hyperbola_image_is_a_line():
    # x^2 - y^2 = 1 squares to Re(w) = 1: the Kepler member with c = 0
    k, rms = fit_conic(power_map(hooke_samples(1, 0, -1), 2), "kepler")
    assert rms <= 1e-9
    np.testing.assert_allclose(k.params, (1, 0, 0), atol=1e-12)


def test_hyperbola_image_is_a_kepler_hyperbola():
    k, rms = fit_conic(power_map(hooke_samples(1, 0, -0.25), 2), "kepler")
    assert rms <= 1e-9
    assert classify_conic(k) == "hyperbola"
    a, b, c = k.params
    assert math.hypot(a, b) > c > 0
