"""Expression-backed plane curves and their local invariants.

All invariants are evaluated pointwise from Taylor jets of ``x(t)`` and
``y(t)``; arc-length, centroaffine and polar normalizations are applied
through the chain rule, never by reparameterizing the curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from . import jet as J
from .conics import Family, as_family
from .errors import CurveError, FamilyPreconditionError
from .expr import Expression, evaluate_jet, parse_expression, unparse

REGULAR_EPS = 1e-12
DEFAULT_VERTEX_SAMPLES = 2048
VERTEX_XTOL = 1e-10


@dataclass(frozen=True)
class ParamCurve:
    x: Expression
    y: Expression
    domain: tuple[float, float]
    label: str = ""

    @classmethod
    def from_strings(cls, x: str, y: str, t0: float, t1: float, label: str = ""):
        return cls(parse_expression(x), parse_expression(y), (float(t0), float(t1)), label)

    def __post_init__(self):
        t0, t1 = self.domain
        if not t0 < t1:
            raise CurveError(f"empty domain [{t0}, {t1}]")

    def jets(self, t, order=J.DEFAULT_ORDER):
        """Jets of ``x`` and ``y`` at ``t`` (scalar or array)."""
        return evaluate_jet(self.x, t, order), evaluate_jet(self.y, t, order)

    def points(self, t):
        t = np.asarray(t, dtype=float)
        X, Y = self.jets(t, order=0)
        return np.stack([X.c[0], Y.c[0]], axis=-1)

    def grid(self, n, endpoint=None):
        """``n`` uniform parameters; periodic curves omit the right endpoint."""
        t0, t1 = self.domain
        if endpoint is None:
            endpoint = not self.is_closed()
        return np.linspace(t0, t1, n, endpoint=endpoint)

    def is_closed(self, rtol=1e-9):
        """True if position and first two derivatives agree at both domain ends."""
        t0, t1 = self.domain
        try:
            X, Y = self.jets(np.array([t0, t1]), order=2)
        except Exception:
            return False
        a = np.concatenate([X.c[:, 0], Y.c[:, 0]])
        b = np.concatenate([X.c[:, 1], Y.c[:, 1]])
        return bool(np.all(np.abs(a - b) <= rtol * (1.0 + np.abs(a))))

    def describe(self):
        return f"({unparse(self.x)}, {unparse(self.y)}), t in [{self.domain[0]}, {self.domain[1]}]"


@dataclass(frozen=True)
class EuclideanFrame:
    point: tuple[float, float]
    unit_tangent: tuple[float, float]
    kappa: float
    kappa_prime: float


@dataclass(frozen=True)
class CentroaffineFrame:
    point: tuple[float, float]
    sigma: float
    p: float
    p_prime: float


@dataclass(frozen=True)
class PolarJet:
    theta: float
    u: float
    u1: float
    u2: float
    u3: float


@dataclass(frozen=True)
class VertexRecord:
    family: Family
    t: float
    discriminant_kind: str


DISCRIMINANT_KIND = {
    Family.CIRCLE: "kappa_prime",
    Family.HOOKE: "p_prime",
    Family.KEPLER: "kepler_c_prime",
    Family.VPARABOLA: "y_triple_prime",
    Family.FLINEAR: "schwarzian",
}


def _bad_t(t, mask):
    t = np.asarray(t, dtype=float)
    if t.ndim == 0:
        return float(t)
    return float(t[np.argmax(mask)])


# jet-level invariants ----------------------------------------------------
#
# Each helper takes the x/y jets (possibly batched) and returns jets of the
# invariants.  Every differentiation costs one order, so the orders of the
# returned jets tell exactly how many derivatives of each are available.

def euclidean_jets(X, Y, t=None):
    """speed |g'|, signed curvature kappa and its arc-length derivative."""
    xp, yp = X.diff(), Y.diff()
    speed2 = xp * xp + yp * yp
    bad = speed2.c[0] < REGULAR_EPS**2
    if np.any(bad):
        raise CurveError("non-regular point (zero velocity)", _bad_t(t, bad) if t is not None else None)
    speed = J.sqrt(speed2)
    xpp, ypp = xp.diff(), yp.diff()
    kappa = (xp * ypp - yp * xpp) / (speed2 * speed)
    kappa_s = kappa.diff() / speed
    return {"xp": xp, "yp": yp, "speed": speed, "kappa": kappa, "kappa_s": kappa_s}


def centroaffine_jets(X, Y, t=None):
    """sigma = [g, g_t], the normalized velocity, p and dp/dtau."""
    xp, yp = X.diff(), Y.diff()
    sigma = X * yp - Y * xp
    bad = np.abs(sigma.c[0]) < REGULAR_EPS
    if np.any(bad):
        raise CurveError("not star-shaped ([g, g'] = 0)", _bad_t(t, bad) if t is not None else None)
    xt, yt = xp / sigma, yp / sigma
    xtt, ytt = xt.diff() / sigma, yt.diff() / sigma
    p = xt * ytt - yt * xtt
    p_tau = p.diff() / sigma
    return {"sigma": sigma, "xt": xt, "yt": yt, "p": p, "p_tau": p_tau}


def polar_jets(X, Y, t=None):
    """u = 1/r and its theta-derivatives u1..u3, with cos/sin of the angle."""
    r2 = X * X + Y * Y
    bad = r2.c[0] < REGULAR_EPS**2
    if np.any(bad):
        raise CurveError("curve passes through the origin", _bad_t(t, bad) if t is not None else None)
    sigma = X * Y.diff() - Y * X.diff()
    bad = np.abs(sigma.c[0]) < REGULAR_EPS
    if np.any(bad):
        raise CurveError("stationary polar angle", _bad_t(t, bad) if t is not None else None)
    u = J.power(r2, -0.5)
    theta_t = sigma / r2
    u1 = u.diff() / theta_t
    u2 = u1.diff() / theta_t
    u3 = u2.diff() / theta_t
    return {"u": u, "u1": u1, "u2": u2, "u3": u3, "cos": X * u, "sin": Y * u, "theta_t": theta_t}


def graph_jets(X, Y, t=None):
    """Derivatives dy/dx, d2y/dx2, d3y/dx3 along a curve that is locally a graph."""
    xp = X.diff()
    bad = np.abs(xp.c[0]) < REGULAR_EPS
    if np.any(bad):
        raise CurveError("vertical tangent (not a graph over x)", _bad_t(t, bad) if t is not None else None)
    y1 = Y.diff() / xp
    y2 = y1.diff() / xp
    y3 = y2.diff() / xp
    return {"y1": y1, "y2": y2, "y3": y3}


def _unwrap_theta(theta):
    theta = np.atleast_1d(theta)
    if theta.size > 1 and np.any(np.abs(np.diff(theta)) > np.pi):
        theta = np.unwrap(theta)
    return theta


# public frames ------------------------------------------------------------

def frame_euclidean(curve: ParamCurve, t: float) -> EuclideanFrame:
    X, Y = curve.jets(t)
    e = euclidean_jets(X, Y, t)
    s = e["speed"].value
    return EuclideanFrame(
        point=(X.value, Y.value),
        unit_tangent=(e["xp"].value / s, e["yp"].value / s),
        kappa=e["kappa"].value,
        kappa_prime=e["kappa_s"].value,
    )


def frame_centroaffine(curve: ParamCurve, t: float) -> CentroaffineFrame:
    X, Y = curve.jets(t)
    c = centroaffine_jets(X, Y, t)
    return CentroaffineFrame(
        point=(X.value, Y.value), sigma=c["sigma"].value, p=c["p"].value, p_prime=c["p_tau"].value
    )


def polar_jet(curve: ParamCurve, t):
    """Polar jet at ``t``; for an array of parameters returns a list with unwrapped angles."""
    X, Y = curve.jets(t)
    pj = polar_jets(X, Y, t)
    theta = np.arctan2(Y.c[0], X.c[0])
    if np.ndim(t) == 0:
        return PolarJet(float(theta), pj["u"].value, pj["u1"].value, pj["u2"].value, pj["u3"].value)
    theta = _unwrap_theta(theta)
    return [
        PolarJet(float(th), float(u), float(u1), float(u2), float(u3))
        for th, u, u1, u2, u3 in zip(
            theta, pj["u"].c[0], pj["u1"].c[0], pj["u2"].c[0], pj["u3"].c[0]
        )
    ]


# vertices -----------------------------------------------------------------

# relative band inside which a discriminant sample counts as zero
DISCRIMINANT_ZERO = 1e-9


def _discriminant_parts(curve: ParamCurve, family: Family, t):
    """Discriminant, its natural term scale, and the quantities that must not vanish.

    The scale has the discriminant's units and is built from the terms that
    cancel in it, so ``|d| <= 1e-9 * scale`` means zero up to rounding.
    """
    X, Y = curve.jets(t)
    try:
        if family is Family.CIRCLE:
            e = euclidean_jets(X, Y, t)
            k, d = e["kappa"].value, e["kappa_s"].value
            return d, k * k + np.abs(d), [("curvature", k)]
        if family is Family.HOOKE:
            c = centroaffine_jets(X, Y, t)
            p, d = c["p"].value, c["p_tau"].value
            return d, np.abs(p) ** 1.5 + np.abs(d), [("[g, g']", c["sigma"].value), ("p", p)]
        if family is Family.KEPLER:
            pj = polar_jets(X, Y, t)
            u, u1, u3 = pj["u"].value, pj["u1"].value, pj["u3"].value
            return u1 + u3, np.abs(u) + np.abs(u1) + np.abs(u3), [("d theta/dt", pj["theta_t"].value)]
        g = graph_jets(X, Y, t)
        y1, y2, y3 = g["y1"].value, g["y2"].value, g["y3"].value
        xp = X.diff().value
        if family is Family.VPARABOLA:
            return y3, y2 * y2 + np.abs(y3), [("dx/dt", xp)]
        bad = np.abs(y1) < REGULAR_EPS
        if np.any(bad):
            raise CurveError("horizontal tangent (Schwarzian undefined)", _bad_t(t, bad))
        a, b = y3 / y1, 1.5 * (y2 / y1) ** 2
        return a - b, np.abs(a) + b, [("dx/dt", xp), ("dy/dx", y1), ("d2y/dx2", y2)]
    except CurveError as err:
        raise FamilyPreconditionError(family.value, str(err).split(" at t=")[0], err.t) from err


def discriminant(curve: ParamCurve, family, t):
    """Hyper-osculation discriminant of ``family`` at ``t`` (vectorized).

    circle: dkappa/ds; hooke: dp/dtau; kepler: u1 + u3;
    vparabola: y'''; flinear: the Schwarzian y'''/y' - 3/2 (y''/y')^2.
    """
    return _discriminant_parts(curve, as_family(family), t)[0]


def find_vertices(curve: ParamCurve, family, n: int = DEFAULT_VERTEX_SAMPLES) -> list[VertexRecord]:
    """Sign changes of the family discriminant on an ``n``-point grid, bisected to 1e-10.

    Closed curves are scanned periodically.  Roots of even multiplicity do
    not change sign and are not reported.
    """
    family = as_family(family)
    closed = curve.is_closed()
    t0, t1 = curve.domain
    period = t1 - t0
    ts = curve.grid(n, endpoint=not closed)
    vals, scale, guards = _discriminant_parts(curve, family, ts)
    for name, g in guards:
        flips = np.flatnonzero(np.sign(g[1:]) != np.sign(g[:-1]))
        if closed and np.sign(g[-1]) != np.sign(g[0]):
            flips = np.append(flips, len(g) - 1)
        if flips.size:
            i = int(flips[0])
            raise FamilyPreconditionError(
                family.value, f"{name} changes sign", float(ts[i])
            )
    vals = np.asarray(vals, dtype=float)
    signs = np.where(np.abs(vals) <= DISCRIMINANT_ZERO * scale, 0, np.sign(vals)).astype(int)
    nz = np.flatnonzero(signs)
    if nz.size == 0:
        return []

    def f(t):
        return float(discriminant(curve, family, t))

    def fwrap(t):
        return f(t0 + (t - t0) % period) if closed else f(t)

    brackets = [(ts[i], ts[j]) for i, j in zip(nz[:-1], nz[1:]) if signs[i] != signs[j]]
    if closed and signs[nz[-1]] != signs[nz[0]]:
        brackets.append((ts[nz[-1]], ts[nz[0]] + period))

    out = []
    for lo, hi in brackets:
        root = bisect(fwrap, lo, hi, xtol=VERTEX_XTOL, rtol=4 * np.finfo(float).eps, maxiter=200)
        if closed:
            root = t0 + (root - t0) % period
        out.append(VertexRecord(family, float(root), DISCRIMINANT_KIND[family]))
    out.sort(key=lambda v: v.t)
    return out
