import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from taitkneser.conics import (
    ConicElement,
    Family,
    Relation,
    classify_conic,
    quadratic_form,
    relation_codes,
    relation_from_code,
    separation_interval,
    separation_verdict,
)
from taitkneser.errors import FamilyMismatchError, InvalidConicError
from taitkneser.oracle import find_intersections


def el(family, *params):
    return ConicElement(family, params)


# intervals ----------------------------------------------------------------

def test_circle_intervals():
    assert separation_interval(el("circle", 0, 0, 1), el("circle", 0, 0, 2)).value == 1.0
    assert separation_interval(el("circle", 0, 0, 1), el("circle", 1, 0, 2)).value == 0.0


def test_hooke_nested_hyperbolas_interval():
    iv = separation_interval(el("hooke", 1, 0, -1), el("hooke", 1 / 9, 0, -1 / 4))
    assert iv.value == pytest.approx(-2 / 3, abs=1e-12)


@pytest.mark.parametrize(
    "family, delta, value",
    [
        ("circle", (1, 2, 3), -1 - 4 + 9),
        ("hooke", (1, 2, 3), 3 - 4),
        ("kepler", (1, 2, 3), -1 - 4 + 9),
        ("vparabola", (1, 2, 3), 4 - 12),
        ("flinear", (1, 2, 3), 9 - 2),
    ],
)
def test_quadratic_form_table(family, delta, value):
    assert quadratic_form(family, delta) == value


def test_family_mismatch():
    with pytest.raises(FamilyMismatchError):
        separation_interval(el("circle", 0, 0, 1), el("kepler", 0, 0, 1))


triples = st.tuples(*[st.floats(min_value=-5, max_value=5, allow_nan=False)] * 3)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(list(Family)), triples)
def test_interval_is_even(family, delta):
    neg = tuple(-v for v in delta)
    assert quadratic_form(family, delta) == quadratic_form(family, neg)


# classification -----------------------------------------------------------

def test_classification_examples():
    assert classify_conic(el("kepler", 0, 0, 1)) == "ellipse"
    assert classify_conic(el("kepler", 1, 0, 1)) == "parabola"
    assert classify_conic(el("kepler", 2, 0, 1)) == "hyperbola"
    assert classify_conic(el("hooke", 1, 0, -1)) == "hyperbola"
    assert classify_conic(el("hooke", 1, 0, 4)) == "ellipse"
    assert classify_conic(el("hooke", -1, 0, -1)) == "imaginary"
    with pytest.raises(InvalidConicError):
        classify_conic(el("hooke", 0, 0, 0))


@pytest.mark.parametrize(
    "family, params",
    [
        ("circle", (0, 0, 0)),
        ("kepler", (0, 0, -1)),
        ("hooke", (1, 1, 1)),
        ("flinear", (0, 0, 0)),
        ("circle", (0, math.nan, 1)),
    ],
)
def test_invalid_elements(family, params):
    with pytest.raises(InvalidConicError):
        el(family, *params).validate()


# verdicts -----------------------------------------------------------------

def test_verdict_examples():
    v = separation_verdict(el("circle", 0, 0, 1), el("circle", 0.2, 0, 2))
    assert v.relation is Relation.NESTED
    assert v.interval.value == pytest.approx(0.96)
    assert separation_verdict(el("hooke", 1, 0, 1), el("hooke", 4, 0, 4)).relation is Relation.NESTED
    v = separation_verdict(el("kepler", 0, 0, 1), el("kepler", 0.5, 0, 1))
    assert v.relation is Relation.INTERSECTING
    assert v.interval.value == pytest.approx(-0.25)
    pts = find_intersections(el("kepler", 0, 0, 1), el("kepler", 0.5, 0, 1)).points
    angles = sorted(math.atan2(y, x) for x, y in pts)
    assert angles == pytest.approx([-math.pi / 2, math.pi / 2], abs=1e-12)


def test_circle_tangent_and_outside():
    assert separation_verdict(el("circle", 0, 0, 1), el("circle", 1, 0, 2)).relation is Relation.TANGENT
    assert separation_verdict(el("circle", 0, 0, 1), el("circle", 3, 0, 1)).relation is Relation.DISJOINT
    assert separation_verdict(el("circle", 0, 0, 1), el("circle", 2, 0, 1)).relation is Relation.TANGENT
    assert separation_verdict(el("circle", 0, 0, 1), el("circle", 1, 0, 1)).relation is Relation.INTERSECTING


def test_hooke_hyperbola_negative_interval_is_undetermined():
    v = separation_verdict(el("hooke", 1, 0, -1), el("hooke", 1 / 9, 0, -1 / 4))
    assert v.relation is Relation.UNDETERMINED
    # mixed types go to the oracle as well
    v = separation_verdict(el("hooke", 1, 0, 1), el("hooke", 1, 0, -1))
    assert v.relation is Relation.UNDETERMINED


def exact_circle_relation(c1, c2):
    (a1, b1, r1), (a2, b2, r2) = c1, c2
    d = math.hypot(a2 - a1, b2 - b1)
    band = 1e-8 * max(1.0, r1 + r2)
    if abs(d - abs(r1 - r2)) <= band or abs(d - (r1 + r2)) <= band:
        return "tangent"
    if d < abs(r1 - r2):
        return "nested"
    if d > r1 + r2:
        return "disjoint"
    return "intersecting"


def test_circle_predicate_complete_on_random_pairs():
    rng = np.random.default_rng(11)
    p1 = np.column_stack([rng.uniform(-2, 2, (10_000, 2)), rng.uniform(0.1, 3, 10_000)])
    p2 = np.column_stack([rng.uniform(-2, 2, (10_000, 2)), rng.uniform(0.1, 3, 10_000)])
    codes, q = relation_codes("circle", p1, p2)
    mismatches = 0
    for c, a, b, qv in zip(codes, p1, p2, q):
        ref = exact_circle_relation(a, b)
        got = relation_from_code(c).value
        d2 = np.sum((b - a) ** 2)
        if abs(qv) <= 1e-9 * d2:
            continue  # tangency band of the predicate
        mismatches += got != ref
    assert mismatches == 0


def difference_roots(p1, p2):
    coeffs = np.array(p2) - np.array(p1)
    coeffs = np.trim_zeros(coeffs, "f")
    if len(coeffs) <= 1:
        return []
    return [r.real for r in np.roots(coeffs) if abs(r.imag) <= 1e-9 * (1 + abs(r))]


def test_vparabola_predicate_matches_roots():
    rng = np.random.default_rng(5)
    p1 = rng.uniform(-2, 2, (5000, 3))
    p2 = rng.uniform(-2, 2, (5000, 3))
    codes, q = relation_codes("vparabola", p1, p2)
    for c, a, b, qv in zip(codes, p1, p2, q):
        d = b - a
        if abs(qv) <= 1e-6 * np.sum(d * d):
            continue
        meets = bool(difference_roots(a, b))
        rel = relation_from_code(c)
        assert (rel is Relation.INTERSECTING) == meets
        if not meets:
            assert rel is (Relation.NESTED if a[0] * b[0] > 0 else Relation.DISJOINT)


def test_vparabola_translate_is_disjoint():
    v = separation_verdict(el("vparabola", 1, 0, 0), el("vparabola", 1, 0, 1))
    assert v.relation is Relation.NESTED
    assert v.interval.value == 0.0


@settings(max_examples=200, deadline=None)
@given(triples, triples, st.floats(min_value=-3, max_value=3))
def test_vparabola_interval_translation_invariant(p1, p2, s):
    def shift(p):
        # y = a (x + s)^2 + b (x + s) + c
        a, b, c = p
        return (a, 2 * a * s + b, a * s * s + b * s + c)

    q0 = quadratic_form("vparabola", np.subtract(p2, p1))
    q1 = quadratic_form("vparabola", np.subtract(shift(p2), shift(p1)))
    assert q1 == pytest.approx(q0, rel=0, abs=1e-10)


def flinear_meets(p1, p2):
    """Real intersections of (x-a1)(y-b1)=c1^2 and (x-a2)(y-b2)=c2^2 by brute expansion."""
    a1, b1, c1 = p1
    a2, b2, c2 = p2
    P = np.polynomial.Polynomial
    # (x - a2) ((b1 - b2)(x - a1) + c1^2) - c2^2 (x - a1) = 0
    poly = P([-a2, 1]) * P([-(b1 - b2) * a1 + c1 * c1, b1 - b2]) - c2 * c2 * P([-a1, 1])
    coef = np.trim_zeros(poly.coef, "b")
    if len(coef) <= 1:
        return False
    roots = np.polynomial.Polynomial(coef).roots()
    for r in roots:
        if abs(r.imag) > 1e-9 * (1 + abs(r)):
            continue
        x = r.real
        if abs(x - a1) > 1e-9 and abs(x - a2) > 1e-9:
            return True
    return False


def test_flinear_predicate_matches_expansion():
    rng = np.random.default_rng(9)
    p1 = np.column_stack([rng.uniform(-2, 2, (5000, 2)), rng.uniform(0.1, 2, 5000)])
    p2 = np.column_stack([rng.uniform(-2, 2, (5000, 2)), rng.uniform(0.1, 2, 5000)])
    codes, _ = relation_codes("flinear", p1, p2)
    checked = 0
    for c, a, b in zip(codes, p1, p2):
        rel = relation_from_code(c)
        if rel is Relation.TANGENT:
            continue
        checked += 1
        assert (rel is Relation.INTERSECTING) == flinear_meets(a, b)
        if rel is not Relation.INTERSECTING:
            assert rel is Relation.DISJOINT
    assert checked > 4900


def test_flinear_concentric_is_nested():
    v = separation_verdict(el("flinear", 0, 0, 1), el("flinear", 0, 0, 2))
    assert v.relation is Relation.NESTED
    # positive interval here, although the osculating families come out negative
    assert v.interval.value > 0
