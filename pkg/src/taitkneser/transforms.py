"""Complex power maps between central-force trajectory families, and conic fitting.

Trajectories of the force law ``r^a`` are carried to trajectories of the dual
law ``r^b``, with ``(a + 3)(b + 3) = 4``, by ``z -> z^((a + 3) / 2)``.  For
``a = 1`` (Hooke) the map is the square and the dual law is ``b = -2``
(Newton), so central conics go to conics with a focus at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conics import ConicElement, Family, as_family
from .curves import ParamCurve
from .errors import BranchCutError, FitError
from .expr import BinOp, Num

FIT_MAX_CONDITION = 1e10
# consecutive arguments further apart than this cannot be tracked reliably
TRACK_MAX_STEP = 0.75 * math.pi


@dataclass(frozen=True)
class DualLawPair:
    a: float
    b: float
    exponent: float

    @classmethod
    def from_source(cls, a: float) -> "DualLawPair":
        a = float(a)
        if a == -3.0:
            raise ValueError("the force exponent a = -3 has no dual law")
        return cls(a, 4.0 / (a + 3.0) - 3.0, (a + 3.0) / 2.0)

    def dual(self) -> "DualLawPair":
        return DualLawPair.from_source(self.b)


def dual_exponent(a: float) -> DualLawPair:
    """Dual force exponent ``b = 4 / (a + 3) - 3`` and the map power ``(a + 3) / 2``."""
    return DualLawPair.from_source(a)


def _is_integer(v):
    return float(v).is_integer()


def power_map(points, exponent: float, track: bool = True) -> np.ndarray:
    """Apply ``z -> z^exponent`` to an ``(n, 2)`` array of points.

    The first point uses the principal argument.  With ``track`` the points
    are treated as consecutive samples of an arc and the argument is
    unwrapped along it, so the image stays continuous across the negative
    real axis; without it every point uses the principal branch, which is
    rejected for non-integer exponents when the points straddle the cut.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    e = float(exponent)
    z = pts[:, 0] + 1j * pts[:, 1]
    at_origin = z == 0
    if np.any(at_origin) and (e <= 0 or not _is_integer(e)):
        i = int(np.argmax(at_origin))
        raise BranchCutError(f"point {i} is the origin, where z^{e:g} is undefined or not smooth")
    r = np.abs(z)
    theta = np.angle(z)
    if not _is_integer(e):
        if track and len(z) > 1:
            step = np.angle(z[1:] / np.where(z[:-1] == 0, 1, z[:-1]))
            if np.any(np.abs(step) > TRACK_MAX_STEP):
                i = int(np.argmax(np.abs(step) > TRACK_MAX_STEP))
                raise BranchCutError(
                    f"argument jumps by {step[i]:.3g} rad between points {i} and {i + 1}; "
                    "the arc is sampled too coarsely to track the branch"
                )
            theta = theta[0] + np.concatenate([[0.0], np.cumsum(step)])
        elif not track:
            on_cut = (pts[:, 1] == 0) & (pts[:, 0] < 0)
            if np.any(on_cut):
                raise BranchCutError("points on the negative real axis with a non-integer exponent")
    if _is_integer(e):
        w = z ** int(e)
    else:
        w = r ** e * np.exp(1j * e * theta)
    return np.stack([w.real, w.imag], axis=-1)


def fit_conic(points, family) -> tuple[ConicElement, float]:
    """Linear least-squares conic through the points.

    kepler: ``a x + b y + c r = 1``; hooke: ``a x^2 + 2 b x y + c y^2 = 1``.
    Solved by the normal equations; returns the element and the RMS of the
    equation residuals.  The element is not validated, so a fit landing on a
    degenerate member (for instance ``c = 0``) is reported, not rejected.
    """
    family = as_family(family)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 5:
        raise FitError(f"need at least 5 points, got {len(pts)}")
    x, y = pts[:, 0], pts[:, 1]
    if family is Family.KEPLER:
        A = np.column_stack([x, y, np.hypot(x, y)])
    elif family is Family.HOOKE:
        A = np.column_stack([x * x, 2 * x * y, y * y])
    else:
        raise ValueError(f"fitting is implemented for hooke and kepler, not {family}")
    N = A.T @ A
    cond = np.linalg.cond(N)
    if not np.isfinite(cond) or cond > FIT_MAX_CONDITION:
        raise FitError(f"normal matrix is rank deficient or ill-conditioned (condition {cond:.3g})")
    coef = np.linalg.solve(N, A.T @ np.ones(len(pts)))
    rms = float(np.sqrt(np.mean((A @ coef - 1.0) ** 2)))
    return ConicElement(family, tuple(coef)), rms


def hooke_to_kepler(element: ConicElement) -> ConicElement:
    """Closed-form square-map image of a central conic: ``((a - c)/2, b, (a + c)/2)``."""
    if element.family is not Family.HOOKE:
        raise ValueError("expected a hooke element")
    a, b, c = element.params
    return ConicElement(Family.KEPLER, ((a - c) / 2.0, b, (a + c) / 2.0))


def square_map_curve(curve: ParamCurve) -> ParamCurve:
    """The curve ``t -> gamma(t)^2`` as a new expression-backed curve."""
    x, y = curve.x, curve.y
    u = BinOp("-", BinOp("*", x, x), BinOp("*", y, y))
    v = BinOp("*", Num(2.0), BinOp("*", x, y))
    label = f"{curve.label} squared" if curve.label else "squared"
    return ParamCurve(u, v, curve.domain, label)
