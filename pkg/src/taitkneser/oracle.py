"""Brute-force geometric tests for pairs of conics.

Nothing here looks at the parameter-space quadratic forms.  Relations are
decided from the conics as point sets: explicit intersection points
(closed-form circle geometry, angle equations for Kepler conics, polynomial
roots for the graph families, boundary sampling with bisection for central
conics) and containment of sampled boundary points.

Interior conventions, with ``side < 0`` meaning inside:

* circle, hooke ellipse: the bounded region.
* hooke hyperbola: the two convex regions ``Q(p) >= 1``.
* kepler: the focus side of the main branch ``a x + b y + c r < 1``; for a
  hyperbola also the convex side ``a x + b y - c r > 1`` of the second
  branch (the plane meets the lower nappe of the cone there).
* vparabola: above the graph when ``a > 0``, below when ``a < 0``.
* flinear: the two convex regions ``(x - a)(y - b) > c^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import _pykernels, kernels
from .conics import ConicElement, Family, Relation, as_family
from .errors import DomainError, FamilyMismatchError, InvalidConicError

ON_BAND = 1e-10
TOUCH_BAND = 1e-8  # relative to the largest side value along the boundary
NOISE_BAND = 1e-13  # rounding floor of the normalized side function
ROOT_MERGE = 1e-7
HOOKE_SAMPLES = 720
HOOKE_EXTENT = 4.0
HOOKE_FAR = (8.0, 16.0, 30.0)
CONTAINMENT_SAMPLES = 128


class OracleRelation(str, enum.Enum):
    NESTED = "nested"
    TANGENT = "tangent"
    INTERSECTING = "intersecting"
    DISJOINT_UNNESTED = "disjoint_unnested"
    AMBIGUOUS = "ambiguous"

    def __str__(self):
        return self.value


_AS_RELATION = {
    OracleRelation.NESTED: Relation.NESTED,
    OracleRelation.TANGENT: Relation.TANGENT,
    OracleRelation.INTERSECTING: Relation.INTERSECTING,
    OracleRelation.DISJOINT_UNNESTED: Relation.DISJOINT,
    OracleRelation.AMBIGUOUS: Relation.UNDETERMINED,
}
_ORDER = list(OracleRelation)
NESTED, TANGENT, INTERSECTING, DISJOINT_UNNESTED, AMBIGUOUS = range(5)


def as_relation(rel: OracleRelation) -> Relation:
    """Predicate-side name of an oracle outcome."""
    return _AS_RELATION[OracleRelation(rel)]


# side functions -----------------------------------------------------------

def side_function(conic: ConicElement, x, y):
    """Normalized signed side of points: negative inside, positive outside."""
    a, b, c = conic.params
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fam = conic.family
    if fam is Family.CIRCLE:
        d2 = (x - a) ** 2 + (y - b) ** 2
        return (d2 - c * c) / (d2 + c * c)
    if fam is Family.HOOKE:
        q = a * x * x + 2 * b * x * y + c * y * y
        scale = abs(a) * x * x + 2 * np.abs(b * x * y) + abs(c) * y * y + 1.0
        sign = 1.0 if a * c - b * b > 0 else -1.0
        return sign * (q - 1.0) / scale
    if fam is Family.KEPLER:
        r = np.hypot(x, y)
        if np.any(r == 0):
            raise DomainError("kepler side is undefined at the origin (the focus)")
        lin = a * x + b * y
        scale = np.abs(a * x) + np.abs(b * y) + abs(c) * r + 1.0
        main = lin + c * r - 1.0
        second = 1.0 - (lin - c * r)
        return np.minimum(main, second) / scale
    if fam is Family.VPARABOLA:
        poly = a * x * x + b * x + c
        scale = np.abs(y) + np.abs(a) * x * x + np.abs(b * x) + abs(c)
        opening = 1.0 if a >= 0 else -1.0
        return opening * (poly - y) / np.where(scale > 0, scale, 1.0)
    prod = (x - a) * (y - b)
    return (c * c - prod) / (np.abs(prod) + c * c)


def point_side(conic: ConicElement, pt) -> str:
    """'inside', 'on' or 'outside' with an on-band of 1e-10 (normalized)."""
    conic.validate()
    s = float(side_function(conic, pt[0], pt[1]))
    if abs(s) <= ON_BAND:
        return "on"
    return "inside" if s < 0 else "outside"


# boundary sampling ------------------------------------------------------

def _ends_dense(n):
    # parameters in (-1, 1), dense near both ends
    return np.sin(np.linspace(-0.5 * np.pi, 0.5 * np.pi, n + 2)[1:-1])


def boundary_samples(conic: ConicElement, n: int = CONTAINMENT_SAMPLES):
    """Points on the conic; unbounded branches are sampled far out towards infinity.

    Returns an ``(m, 2)`` array.  Hyperbolas contribute ``n`` points per branch.
    """
    conic.validate()
    a, b, c = conic.params
    fam = conic.family
    if fam is Family.CIRCLE:
        s = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        return np.stack([a + c * np.cos(s), b + c * np.sin(s)], axis=-1)
    if fam is Family.HOOKE:
        frame = _pykernels.central_frame(np.array([[a, b, c]]))
        kind = frame[4][0]
        if kind == 0:
            raise InvalidConicError(f"central conic {conic.params} has no real points")
        if kind == 1:
            s = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
            br = np.ones(n)
        else:
            s1 = np.linspace(-6.0, 6.0, n)
            s = np.concatenate([s1, s1])
            br = np.concatenate([np.ones(n), -np.ones(n)])
        x, y = _pykernels.boundary_points(*(v[0] for v in frame), s, br)
        return np.stack([x, y], axis=-1)
    if fam is Family.KEPLER:
        rho = np.hypot(a, b)
        phi = np.arctan2(b, a)
        out = []
        if c > rho:
            th = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        else:
            alpha = np.arccos(-c / rho) if rho > 0 else np.pi
            th = phi + alpha * _ends_dense(n)
        d = c + a * np.cos(th) + b * np.sin(th)
        keep = d > 0
        out.append(np.stack([np.cos(th[keep]), np.sin(th[keep])], axis=-1) / d[keep, None])
        if rho > c:
            beta = np.arccos(c / rho)
            th = phi + beta * _ends_dense(n)
            e = a * np.cos(th) + b * np.sin(th) - c
            keep = e > 0
            out.append(np.stack([np.cos(th[keep]), np.sin(th[keep])], axis=-1) / e[keep, None])
        return np.concatenate(out)
    if fam is Family.VPARABOLA:
        # centre on the vertex, but keep nearly flat parabolas in floating range
        xv = float(np.clip(-b / (2 * a), -1e6, 1e6)) if abs(a) > 1e-300 else 0.0
        span = 10.0 * (1.0 + abs(xv))
        x = xv + span * np.sinh(3.0 * _ends_dense(n)) / np.sinh(3.0)
        return np.stack([x, a * x * x + b * x + c], axis=-1)
    u = c * np.exp(6.0 * _ends_dense(n))
    right = np.stack([a + u, b + c * c / u], axis=-1)
    left = np.stack([a - u, b - c * c / u], axis=-1)
    return np.concatenate([right, left])


@dataclass(frozen=True)
class SideSample:
    conic: ConicElement
    points: np.ndarray
    side_values: np.ndarray

    @property
    def all_inside(self):
        return bool(np.all(self.side_values < -ON_BAND))

    @property
    def all_outside(self):
        return bool(np.all(self.side_values > ON_BAND))


def side_sample(c1: ConicElement, c2: ConicElement, n: int = CONTAINMENT_SAMPLES) -> SideSample:
    """Boundary points of ``c1`` with the side values of ``c2`` at them."""
    pts = boundary_samples(c1, n)
    return SideSample(c1, pts, side_function(c2, pts[:, 0], pts[:, 1]))


# intersections ----------------------------------------------------------

@dataclass(frozen=True)
class Intersection:
    points: tuple[tuple[float, float], ...]
    tangent: bool
    exact: bool

    def __bool__(self):
        return bool(self.points) or bool(self.tangent)


def _check_pair(c1, c2):
    if c1.family is not c2.family:
        raise FamilyMismatchError(f"cannot compare {c1.family} with {c2.family}")
    c1.validate()
    c2.validate()


def _solve_trig(A, B, C):
    """Angles with ``A cos + B sin = C``; returns ``(angles, double_root)``."""
    rho = np.hypot(A, B)
    if rho == 0:
        return [], False
    ratio = C / rho
    if ratio > 1 + ROOT_MERGE or ratio < -1 - ROOT_MERGE:
        return [], False
    base = np.arctan2(B, A)
    half = np.arccos(np.clip(ratio, -1.0, 1.0))
    if half <= ROOT_MERGE:
        return [base], True
    return [base - half, base + half], False


def _circle_relation(c1, c2):
    a1, b1, r1 = c1.params
    a2, b2, r2 = c2.params
    d = np.hypot(a2 - a1, b2 - b1)
    band = 1e-12 * max(1.0, r1 + r2)
    if abs(d - abs(r1 - r2)) <= band or abs(d - (r1 + r2)) <= band:
        return TANGENT
    if d < abs(r1 - r2):
        return NESTED
    if d > r1 + r2:
        return DISJOINT_UNNESTED
    return INTERSECTING


def _circle_points(c1, c2):
    a1, b1, r1 = c1.params
    a2, b2, r2 = c2.params
    d = np.hypot(a2 - a1, b2 - b1)
    if d == 0:
        return ()
    along = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - along * along
    if h2 < -1e-12 * max(1.0, r1 * r1):
        return ()
    h = np.sqrt(max(h2, 0.0))
    ux, uy = (a2 - a1) / d, (b2 - b1) / d
    mx, my = a1 + along * ux, b1 + along * uy
    if h == 0:
        return ((float(mx), float(my)),)
    return ((float(mx - h * uy), float(my + h * ux)), (float(mx + h * uy), float(my - h * ux)))


def _kepler_intersection(c1, c2):
    """Solve the polar-denominator equations on both sheets of the cone."""
    a1, b1, k1 = c1.params
    a2, b2, k2 = c2.params
    pts = []
    tangent = False
    # same sheet: d1 = d2 (upper) or e1 = e2 (lower); both reduce to one equation
    # in theta, the lower-sheet root sitting at theta + pi
    cases = [
        (a2 - a1, b2 - b1, k1 - k2),
        (a2 - a1, b2 - b1, k1 + k2),  # upper sheet of c1, lower of c2
        (a1 - a2, b1 - b2, k1 + k2),  # lower sheet of c1, upper of c2
    ]
    for A, B, C in cases:
        roots, double = _solve_trig(A, B, C)
        for th in roots:
            d1 = k1 + a1 * np.cos(th) + b1 * np.sin(th)
            if abs(d1) < 1e-14:
                continue
            # a negative denominator on the upper sheet is a lower-sheet point
            # in the opposite direction: r = 1/d1 along theta either way
            p = np.array([np.cos(th), np.sin(th)]) / d1
            res = [abs(side_function(c, p[0], p[1])) for c in (c1, c2)]
            if max(res) <= 1e-8:
                pts.append((float(p[0]), float(p[1])))
                tangent = tangent or double
    return pts, tangent


def _quadratic_roots(A, B, C):
    """Real roots of ``A x^2 + B x + C`` (batched) via 2x2 companion eigenvalues.

    Returns ``(roots (k, 2) with nan for missing, double (k,) bool)``.
    """
    A, B, C = (np.asarray(v, dtype=float) for v in (A, B, C))
    k = A.shape[0]
    roots = np.full((k, 2), np.nan)
    double = np.zeros(k, dtype=bool)
    quad = A != 0
    if np.any(quad):
        comp = np.zeros((int(quad.sum()), 2, 2))
        comp[:, 0, 0] = -B[quad] / A[quad]
        comp[:, 0, 1] = -C[quad] / A[quad]
        comp[:, 1, 0] = 1.0
        ev = np.linalg.eigvals(comp)
        size = 1.0 + np.abs(ev.real).max(axis=1)
        spread = np.abs(ev[:, 0] - ev[:, 1])
        merged = spread <= ROOT_MERGE * size
        real = (np.abs(ev.imag) <= ROOT_MERGE * size[:, None]).all(axis=1) | merged
        r = np.where(real[:, None], ev.real, np.nan)
        r[merged, 1] = np.nan
        r[merged, 0] = ev.real[merged].mean(axis=1)
        roots[quad] = r
        double[quad] = merged
    lin = ~quad & (B != 0)
    roots[lin, 0] = -C[lin] / B[lin]
    return roots, double


def _vparabola_roots(p1, p2):
    d = p2 - p1
    return _quadratic_roots(d[:, 0], d[:, 1], d[:, 2])


def _flinear_roots(p1, p2):
    a1, b1, c1 = p1.T
    a2, b2, c2 = p2.T
    k1, k2 = c1 * c1, c2 * c2
    db = b1 - b2
    # (b1 - b2)(x - a1)(x - a2) + k1 (x - a2) - k2 (x - a1) = 0
    A = db
    B = -db * (a1 + a2) + k1 - k2
    C = db * a1 * a2 - k1 * a2 + k2 * a1
    roots, double = _quadratic_roots(A, B, C)
    # x = a1 or a2 are not points of either curve
    bad = np.isclose(roots, a1[:, None], rtol=0, atol=1e-14) | np.isclose(
        roots, a2[:, None], rtol=0, atol=1e-14
    )
    roots[bad] = np.nan
    return roots, double


def _graph_points(family, p1, roots):
    a, b, c = p1
    out = []
    for x in roots:
        if not np.isfinite(x):
            continue
        y = a * x * x + b * x + c if family is Family.VPARABOLA else b + c * c / (x - a)
        out.append((float(x), float(y)))
    return out


def _verified(points, c1, c2):
    return tuple(
        p for p in points
        if max(abs(float(side_function(c, p[0], p[1]))) for c in (c1, c2)) <= 1e-8
    )


def find_intersections(c1: ConicElement, c2: ConicElement) -> Intersection:
    """Common points of two conics of one family.

    Exact (closed-form or polynomial) for every family but hooke, where
    boundary sampling finds sign changes; there ``exact`` is False when
    nothing was found, meaning no intersection at the sampling resolution.
    """
    _check_pair(c1, c2)
    fam = c1.family
    if fam is Family.CIRCLE:
        rel = _circle_relation(c1, c2)
        pts = _circle_points(c1, c2) if rel in (TANGENT, INTERSECTING) else ()
        return Intersection(pts, rel == TANGENT, True)
    if fam is Family.KEPLER:
        pts, tangent = _kepler_intersection(c1, c2)
        return Intersection(tuple(pts), tangent, True)
    if fam in (Family.VPARABOLA, Family.FLINEAR):
        p1, p2 = c1.array[None, :], c2.array[None, :]
        solve = _vparabola_roots if fam is Family.VPARABOLA else _flinear_roots
        roots, double = solve(p1, p2)
        pts = _verified(_graph_points(fam, c1.params, roots[0]), c1, c2)
        return Intersection(pts, bool(double[0]) and bool(pts), True)
    codes, pts = _hooke_pairs(c1.array[None, :], c2.array[None, :], return_points=True)
    found = tuple(pts[0])
    return Intersection(found, bool(codes[0] == TANGENT), bool(found))


def intersects(c1: ConicElement, c2: ConicElement) -> bool:
    return bool(find_intersections(c1, c2))


# batched relations ------------------------------------------------------

def _containment(family, p1, p2, n=CONTAINMENT_SAMPLES):
    """Per pair: +1 if c1's boundary lies inside c2, -1 if c2's lies inside c1, 0 otherwise."""
    out = np.zeros(len(p1), dtype=int)
    for k in range(len(p1)):
        e1 = ConicElement(family, tuple(p1[k]))
        e2 = ConicElement(family, tuple(p2[k]))
        if side_sample(e1, e2, n).all_inside:
            out[k] = 1
        elif side_sample(e2, e1, n).all_inside:
            out[k] = -1
    return out


def _kepler_pairs(p1, p2):
    codes = np.empty(len(p1), dtype=int)
    for k in range(len(p1)):
        e1 = ConicElement(Family.KEPLER, tuple(p1[k]))
        e2 = ConicElement(Family.KEPLER, tuple(p2[k]))
        pts, tangent = _kepler_intersection(e1, e2)
        if tangent:
            codes[k] = TANGENT
        elif pts:
            codes[k] = INTERSECTING
        else:
            codes[k] = -1
    free = codes == -1
    if np.any(free):
        cont = _containment(Family.KEPLER, p1[free], p2[free])
        codes[free] = np.where(cont != 0, NESTED, DISJOINT_UNNESTED)
    return codes


def _graph_pairs(family, p1, p2):
    solve = _vparabola_roots if family is Family.VPARABOLA else _flinear_roots
    roots, double = solve(p1, p2)
    codes = np.empty(len(p1), dtype=int)
    for k in range(len(p1)):
        pts = _verified(_graph_points(family, p1[k], roots[k]), ConicElement(family, tuple(p1[k])),
                        ConicElement(family, tuple(p2[k])))
        if not pts:
            codes[k] = -1
        else:
            codes[k] = TANGENT if double[k] else INTERSECTING
    free = codes == -1
    if np.any(free):
        cont = _containment(family, p1[free], p2[free])
        codes[free] = np.where(cont != 0, NESTED, DISJOINT_UNNESTED)
    return codes


def _hooke_far_conflict(p1, p2, sign_ref, band):
    """Sample hyperbola branches of ``p1`` far beyond the scan window."""
    frame = _pykernels.central_frame(p1)
    s = np.array([-v for v in HOOKE_FAR] + list(HOOKE_FAR))
    s = np.concatenate([s, s])
    br = np.concatenate([np.ones(len(HOOKE_FAR) * 2), -np.ones(len(HOOKE_FAR) * 2)])
    args = tuple(v[:, None] for v in frame)
    x, y = _pykernels.boundary_points(*args, s[None, :], br[None, :])
    g = _pykernels.side_values(p2, x, y)
    crossed = np.any((np.sign(g) != sign_ref[:, None]) & (np.abs(g) > band[:, None]), axis=1)
    touched = np.any(np.abs(g) <= band[:, None], axis=1)
    return crossed, touched


def _refine_suspect(m1, m2, lo, hi, branch, band):
    """Extremum of the side function between two boundary samples.

    Returns 'cross', 'touch' or 'clear'.
    """
    lam1, lam2, cph, sph, kind = (float(v[0]) for v in _pykernels.central_frame(m1[None, :]))
    a, b, c = (float(v) for v in m2)
    # scalar twins of _pykernels.boundary_points and side_values
    r1 = 1.0 / math.sqrt(lam1 if lam1 > 0 else 1.0)
    r2 = 1.0 / math.sqrt(abs(lam2 if lam2 != 0 else 1.0))
    ellipse = kind == 1

    def g(s):
        if ellipse:
            u, v = math.cos(s) * r1, math.sin(s) * r2
        else:
            u, v = branch * math.cosh(s) * r1, math.sinh(s) * r2
        x, y = cph * u - sph * v, sph * u + cph * v
        val = a * x * x + 2.0 * b * x * y + c * y * y - 1.0
        return val / (abs(a) * x * x + 2.0 * abs(b * x * y) + abs(c) * y * y + 1.0)

    mid = 0.5 * (lo + hi)
    ends = (g(lo), g(hi))
    sign = np.sign(g(mid)) or np.sign(ends[0]) or 1.0
    if any(np.sign(e) == -sign and abs(e) > band for e in ends):
        return "cross"
    res = minimize_scalar(lambda s: sign * g(s), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    val = sign * min(res.fun, *(sign * e for e in ends))
    if sign * val < -band:
        return "cross"
    if abs(val) <= band:
        return "touch"
    return "clear"


def _hooke_side_state(kind2, smin, smax, band):
    """+1 if every sample is strictly inside the second conic, -1 strictly outside, 0 mixed."""
    inside_neg = kind2 == 1  # ellipse: inside is g < 0; hyperbola: g > 0
    all_neg = smax < -band
    all_pos = smin > band
    inside = np.where(inside_neg, all_neg, all_pos)
    outside = np.where(inside_neg, all_pos, all_neg)
    return np.where(inside, 1, np.where(outside, -1, 0))


def _hooke_pairs(p1, p2, return_points=False):
    p1 = np.ascontiguousarray(p1, dtype=float)
    p2 = np.ascontiguousarray(p2, dtype=float)
    fwd = kernels.hooke_scan(p1, p2, HOOKE_SAMPLES, HOOKE_EXTENT, NOISE_BAND)
    bwd = kernels.hooke_scan(p2, p1, HOOKE_SAMPLES, HOOKE_EXTENT, NOISE_BAND)
    kind1, kind2 = fwd[0], bwd[0]
    if np.any(kind1 == 0) or np.any(kind2 == 0):
        raise InvalidConicError("hooke oracle needs real nondegenerate central conics")
    k = len(p1)
    codes = np.full(k, -1, dtype=int)
    crossing = (fwd[1] > 0) | (bwd[1] > 0)
    codes[crossing] = INTERSECTING

    # touching is judged against how far apart the two boundaries are overall
    band_f = np.maximum(NOISE_BAND, TOUCH_BAND * np.maximum(np.abs(fwd[2]), np.abs(fwd[3])))
    band_b = np.maximum(NOISE_BAND, TOUCH_BAND * np.maximum(np.abs(bwd[2]), np.abs(bwd[3])))
    touched = np.zeros(k, dtype=bool)
    for scan, band, (m_a, m_b) in ((fwd, band_f, (p1, p2)), (bwd, band_b, (p2, p1))):
        n_susp, susp = scan[5], scan[6]
        for idx in np.flatnonzero((n_susp > 0) & (codes == -1)):
            if n_susp[idx] > susp.shape[1]:
                codes[idx] = AMBIGUOUS
                continue
            for lo, hi, br in susp[idx, : n_susp[idx]]:
                verdict = _refine_suspect(m_a[idx], m_b[idx], lo, hi, br, band[idx])
                if verdict == "cross":
                    codes[idx] = INTERSECTING
                    break
                if verdict == "touch":
                    touched[idx] = True

    state_f = _hooke_side_state(kind2, fwd[2], fwd[3], band_f)
    state_b = _hooke_side_state(kind1, bwd[2], bwd[3], band_b)
    # branches continue past the scan window; their far ends must keep their side
    for kind, band, m_a, m_b, scan in ((kind1, band_f, p1, p2, fwd), (kind2, band_b, p2, p1, bwd)):
        hyp = (kind == -1) & (codes == -1)
        if np.any(hyp):
            ref = np.sign(np.where(np.abs(scan[2]) > np.abs(scan[3]), scan[2], scan[3]))[hyp]
            crossed, near = _hooke_far_conflict(m_a[hyp], m_b[hyp], ref, band[hyp])
            sub = np.flatnonzero(hyp)
            codes[sub[crossed]] = INTERSECTING
            codes[sub[near & ~crossed]] = AMBIGUOUS

    free = codes == -1
    nested = (state_f == 1) | (state_b == 1)
    codes[free & touched] = TANGENT
    codes[free & ~touched & nested] = NESTED
    codes[free & ~touched & ~nested] = DISJOINT_UNNESTED
    if not return_points:
        return codes
    pts = []
    for idx in range(k):
        found = [tuple(map(float, p)) for p in fwd[4][idx, : min(fwd[1][idx], fwd[4].shape[1])]]
        pts.append(found)
    return codes, pts


def nested_oracle_codes(family, p1, p2):
    """Vectorized oracle: integer codes indexing :class:`OracleRelation`."""
    family = as_family(family)
    p1 = np.atleast_2d(np.asarray(p1, dtype=float))
    p2 = np.atleast_2d(np.asarray(p2, dtype=float))
    coincident = np.all(p1 == p2, axis=1)
    if family is Family.CIRCLE:
        codes = np.array([
            _circle_relation(ConicElement(family, tuple(a)), ConicElement(family, tuple(b)))
            for a, b in zip(p1, p2)
        ], dtype=int)
    elif family is Family.KEPLER:
        codes = _kepler_pairs(p1, p2)
    elif family is Family.HOOKE:
        codes = _hooke_pairs(p1, p2)
    else:
        codes = _graph_pairs(family, p1, p2)
    return np.where(coincident, TANGENT, codes)


def nested_oracle_pairs(family, p1, p2) -> list[OracleRelation]:
    return [_ORDER[c] for c in nested_oracle_codes(family, p1, p2)]


def nested_oracle(c1: ConicElement, c2: ConicElement) -> OracleRelation:
    """Geometric relation of two same-family conics.

    nested: no common point and one boundary strictly inside the other;
    tangent: a common point without crossing; intersecting: a transversal
    crossing; disjoint_unnested: no common point and no containment;
    ambiguous: the sampling could not settle the case.
    """
    _check_pair(c1, c2)
    return nested_oracle_pairs(c1.family, c1.array, c2.array)[0]
