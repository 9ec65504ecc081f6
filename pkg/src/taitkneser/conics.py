"""The five three-parameter conic families and their Lorentzian parameter spaces.

Parameter triples per family:

========== ==================== =========================================
family     params               curve
========== ==================== =========================================
circle     (a, b, r)            (x-a)^2 + (y-b)^2 = r^2
hooke      (a, b, c)            a x^2 + 2 b x y + c y^2 = 1
kepler     (a, b, c)            1/r = c + a cos(theta) + b sin(theta)
vparabola  (a, b, c)            y = a x^2 + b x + c
flinear    (a, b, c)            (x-a)(y-b) = c^2
========== ==================== =========================================

Each parameter space carries an indefinite quadratic form ``Q``.  For
circle, hooke and kepler a positive value of ``Q(p2 - p1)`` means nested;
for vparabola and flinear the form has the opposite signature and a
*negative* value is the timelike (disjoint) direction.  ``ORIENTATION``
records that sign so callers can compare across families.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import FamilyMismatchError, InvalidConicError


class Family(str, enum.Enum):
    CIRCLE = "circle"
    HOOKE = "hooke"
    KEPLER = "kepler"
    VPARABOLA = "vparabola"
    FLINEAR = "flinear"

    def __str__(self):
        return self.value


class Relation(str, enum.Enum):
    NESTED = "nested"
    TANGENT = "tangent"
    INTERSECTING = "intersecting"
    DISJOINT = "disjoint"  # disjoint but not nested
    UNDETERMINED = "undetermined"

    def __str__(self):
        return self.value


# Gram matrices: Q(d) = d @ G @ d
GRAM = {
    Family.CIRCLE: np.diag([-1.0, -1.0, 1.0]),
    Family.HOOKE: np.array([[0.0, 0.0, 0.5], [0.0, -1.0, 0.0], [0.5, 0.0, 0.0]]),
    Family.KEPLER: np.diag([-1.0, -1.0, 1.0]),
    Family.VPARABOLA: np.array([[0.0, 0.0, -2.0], [0.0, 1.0, 0.0], [-2.0, 0.0, 0.0]]),
    Family.FLINEAR: np.array([[0.0, -0.5, 0.0], [-0.5, 0.0, 0.0], [0.0, 0.0, 1.0]]),
}

ORIENTATION = {
    Family.CIRCLE: 1.0,
    Family.HOOKE: 1.0,
    Family.KEPLER: 1.0,
    Family.VPARABOLA: -1.0,
    Family.FLINEAR: -1.0,
}

DEFAULT_TOL = 1e-9
PARABOLA_BAND = 1e-12


def as_family(value) -> Family:
    if isinstance(value, Family):
        return value
    try:
        return Family(str(value).lower())
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise ValueError(f"unknown family {value!r}; expected one of {names}") from None


def quadratic_form(family, delta):
    """``Q(delta)`` for one triple or an ``(..., 3)`` array of triples."""
    family = as_family(family)
    d = np.asarray(delta, dtype=float)
    d0, d1, d2 = d[..., 0], d[..., 1], d[..., 2]
    # closed forms keep exact cancellation where the Gram product would not
    if family in (Family.CIRCLE, Family.KEPLER):
        q = -d0 * d0 - d1 * d1 + d2 * d2
    elif family is Family.HOOKE:
        q = d0 * d2 - d1 * d1
    elif family is Family.VPARABOLA:
        q = d1 * d1 - 4.0 * d0 * d2
    else:
        q = d2 * d2 - d0 * d1
    return float(q) if np.ndim(q) == 0 else q


@dataclass(frozen=True)
class ConicElement:
    family: Family
    params: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "family", as_family(self.family))
        p = tuple(float(v) for v in self.params)
        if len(p) != 3:
            raise InvalidConicError("a conic element needs exactly three parameters")
        object.__setattr__(self, "params", p)

    def __iter__(self):
        return iter(self.params)

    @property
    def array(self):
        return np.array(self.params)

    def validate(self):
        """Raise :class:`InvalidConicError` unless the family invariant holds."""
        a, b, c = self.params
        if not all(math.isfinite(v) for v in self.params):
            raise InvalidConicError(f"non-finite parameters {self.params}")
        fam = self.family
        if fam is Family.CIRCLE and not c > 0:
            raise InvalidConicError(f"circle radius must be positive, got {c}")
        if fam is Family.KEPLER and not c > 0:
            raise InvalidConicError(f"kepler conic needs c > 0, got {c}")
        if fam is Family.HOOKE and abs(a * c - b * b) <= 1e-14:
            raise InvalidConicError(f"degenerate central conic {self.params}")
        if fam is Family.FLINEAR and not c > 0:
            raise InvalidConicError(f"fractional-linear hyperbola needs c > 0, got {c}")
        return self

    def defining_function(self, x, y):
        """Implicit equation ``F(x, y)``, zero on the conic.

        For kepler only the sheet of the cone with ``z = +r`` is described,
        i.e. the branch with positive polar denominator.
        """
        a, b, c = self.params
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        fam = self.family
        if fam is Family.CIRCLE:
            return (x - a) ** 2 + (y - b) ** 2 - c * c
        if fam is Family.HOOKE:
            return a * x * x + 2 * b * x * y + c * y * y - 1.0
        if fam is Family.KEPLER:
            return a * x + b * y + c * np.hypot(x, y) - 1.0
        if fam is Family.VPARABOLA:
            return y - (a * x * x + b * x + c)
        return (x - a) * (y - b) - c * c


@dataclass(frozen=True)
class SeparationInterval:
    """``Q(p2 - p1)`` for two elements of one family."""

    family: Family
    value: float
    delta: tuple[float, float, float]

    @property
    def norm2(self) -> float:
        return float(sum(d * d for d in self.delta))

    @property
    def normalized(self) -> float:
        """``Q`` of the unit-Euclidean-norm difference (0 for coincident elements)."""
        n2 = self.norm2
        return self.value / n2 if n2 > 0 else 0.0

    @property
    def oriented(self) -> float:
        """``value`` with the family sign applied so that positive means timelike."""
        return ORIENTATION[self.family] * self.value


@dataclass(frozen=True)
class SeparationVerdict:
    relation: Relation
    interval: SeparationInterval
    oracle_checked: bool = False


def _check_pair(c1, c2):
    if c1.family is not c2.family:
        raise FamilyMismatchError(f"cannot compare {c1.family} with {c2.family}")


def separation_interval(c1: ConicElement, c2: ConicElement) -> SeparationInterval:
    _check_pair(c1, c2)
    delta = tuple(q - p for p, q in zip(c1.params, c2.params))
    return SeparationInterval(c1.family, quadratic_form(c1.family, delta), delta)


def hooke_type(a, b, c):
    """'ellipse', 'imaginary' (negative definite) or 'hyperbola' for a central conic."""
    det = a * c - b * b
    if abs(det) <= 1e-14:
        raise InvalidConicError(f"degenerate central conic ({a}, {b}, {c})")
    if det < 0:
        return "hyperbola"
    return "ellipse" if a + c > 0 else "imaginary"


def classify_conic(conic: ConicElement) -> str:
    """Geometric class of an element.

    kepler: 'ellipse' / 'parabola' / 'hyperbola' by the sign of the form
    (parabola inside a band of 1e-12); hooke: 'ellipse', 'hyperbola' or
    'imaginary' for a negative definite form; circle: 'circle'; vparabola:
    'parabola' ('line' when a == 0); flinear: 'hyperbola'.
    """
    a, b, c = conic.params
    fam = conic.family
    if fam is Family.KEPLER:
        q = -a * a - b * b + c * c
        if abs(q) <= PARABOLA_BAND:
            return "parabola"
        return "ellipse" if q > 0 else "hyperbola"
    if fam is Family.HOOKE:
        return hooke_type(a, b, c)
    if fam is Family.CIRCLE:
        return "circle"
    if fam is Family.VPARABOLA:
        return "parabola" if a != 0 else "line"
    return "hyperbola"


# verdicts -----------------------------------------------------------------

_REL = np.array([r.value for r in Relation], dtype=object)
_CODE = {r: i for i, r in enumerate(Relation)}
NESTED, TANGENT, INTERSECTING, DISJOINT, UNDETERMINED = range(5)


def _hooke_type_codes(p):
    a, b, c = p[..., 0], p[..., 1], p[..., 2]
    det = a * c - b * b
    # 1 ellipse, -1 hyperbola, 0 degenerate or imaginary
    return np.where(det > 1e-14, np.where(a + c > 0, 1, 0), np.where(det < -1e-14, -1, 0))


def relation_codes(family, p1, p2, tol=DEFAULT_TOL):
    """Vectorized predicate verdicts for arrays of parameter triples.

    Returns ``(codes, q)`` with integer relation codes (indices into
    :class:`Relation`) and the raw interval values.
    """
    family = as_family(family)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    d = p2 - p1
    q = np.asarray(quadratic_form(family, d), dtype=float)
    n2 = np.sum(d * d, axis=-1)
    coincident = n2 == 0
    qn = np.where(coincident, 0.0, q / np.where(coincident, 1.0, n2))
    codes = np.full(q.shape, UNDETERMINED, dtype=int)

    if family in (Family.CIRCLE, Family.KEPLER):
        codes = np.where(qn > tol, NESTED, np.where(qn >= -tol, TANGENT, INTERSECTING))
        if family is Family.CIRCLE:
            dist = np.hypot(d[..., 0], d[..., 1])
            rsum = p1[..., 2] + p2[..., 2]
            band = 1e-8 * np.maximum(1.0, rsum)
            outer = np.where(
                np.abs(dist - rsum) <= band, TANGENT, np.where(dist > rsum, DISJOINT, INTERSECTING)
            )
            codes = np.where(qn < -tol, outer, codes)
    elif family is Family.HOOKE:
        t1 = _hooke_type_codes(p1)
        t2 = _hooke_type_codes(p2)
        if np.any(t1 == 0) or np.any(t2 == 0):
            raise InvalidConicError("hooke verdict needs real nondegenerate central conics")
        both_ell = (t1 == 1) & (t2 == 1)
        both_hyp = (t1 == -1) & (t2 == -1)
        ell = np.where(qn > tol, NESTED, np.where(qn >= -tol, TANGENT, INTERSECTING))
        hyp = np.where(qn > tol, NESTED, UNDETERMINED)
        codes = np.where(both_ell, ell, np.where(both_hyp, hyp, UNDETERMINED))
    elif family is Family.VPARABOLA:
        same_opening = p1[..., 0] * p2[..., 0] > 0
        disjoint = np.where(same_opening, NESTED, DISJOINT)
        codes = np.where(qn < -tol, disjoint, np.where(qn <= tol, TANGENT, INTERSECTING))
        # vertical translates never meet
        translate = (d[..., 0] == 0) & (d[..., 1] == 0) & ~coincident
        codes = np.where(translate, disjoint, codes)
    else:
        codes = _flinear_codes(p1, p2, d, qn, coincident, tol)
    codes = np.where(coincident, TANGENT, codes)
    return codes, q


def _flinear_codes(p1, p2, d, qn, coincident, tol):
    # Eliminating y gives a quadratic in x whose discriminant factors as
    #   (dc^2 - da db) * ((c1 + c2)^2 - da db) = Q(d) * Q(d+)
    # where d+ replaces c2 - c1 by c2 + c1 (the same curve, since only c^2
    # enters).  No real root <=> the two factors have opposite signs.
    # Whole hyperbolas with distinct centres are never nested (the two
    # interior components would need opposite containments), so a
    # root-free pair is DISJOINT unless it is concentric.
    dplus = d.copy()
    dplus[..., 2] = p1[..., 2] + p2[..., 2]
    qp = quadratic_form(Family.FLINEAR, dplus)
    qpn = qp / np.sum(dplus * dplus, axis=-1)
    quad = np.where(
        (np.abs(qn) <= tol) | (np.abs(qpn) <= tol),
        TANGENT,
        np.where(qn * qpn < 0, DISJOINT, INTERSECTING),
    )
    # db == 0: the equation is linear, (c1^2 - c2^2) x = c1^2 a2 - c2^2 a1
    same_c = np.isclose(p1[..., 2] ** 2, p2[..., 2] ** 2, rtol=1e-12, atol=0.0)
    lin = np.where(d[..., 0] == 0, NESTED, np.where(same_c, DISJOINT, INTERSECTING))
    return np.where(d[..., 1] == 0, lin, quad)


def separation_verdict(c1: ConicElement, c2: ConicElement, tol: float = DEFAULT_TOL) -> SeparationVerdict:
    """Classify a pair of same-family elements from their parameter-space interval.

    Tolerances apply to the interval of the Euclidean-normalized difference.
    Hooke hyperbola pairs with nonpositive interval, and mixed-type Hooke
    pairs, come back ``undetermined``: the interval criterion is only
    sufficient there.
    """
    _check_pair(c1, c2)
    c1.validate()
    c2.validate()
    codes, _ = relation_codes(c1.family, np.array(c1.params), np.array(c2.params), tol)
    return SeparationVerdict(Relation(_REL[int(codes)]), separation_interval(c1, c2))


def relation_from_code(code) -> Relation:
    return Relation(_REL[int(code)])
