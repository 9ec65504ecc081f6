"""Osculating elements, their traces in parameter space, and the nesting check."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from . import jet as J
from . import kernels
from .conics import (
    DEFAULT_TOL,
    GRAM,
    ORIENTATION,
    ConicElement,
    Family,
    Relation,
    SeparationInterval,
    as_family,
    quadratic_form,
    relation_codes,
    relation_from_code,
)
from .curves import (
    REGULAR_EPS,
    ParamCurve,
    VertexRecord,
    centroaffine_jets,
    euclidean_jets,
    find_vertices,
    graph_jets,
    polar_jets,
)
from .errors import CurveError, FamilyPreconditionError, TaitKneserError, VertexInsideError

DEFAULT_SAMPLES = 100
DEGENERATE_TANGENT = 1e-12
MAX_LISTED_VIOLATIONS = 50

# relations that count as the Tait-Kneser outcome for each family; whole
# fractional-linear hyperbolas with distinct centres can only be disjoint
GOOD_RELATIONS = {
    Family.CIRCLE: {Relation.NESTED},
    Family.HOOKE: {Relation.NESTED},
    Family.KEPLER: {Relation.NESTED},
    Family.VPARABOLA: {Relation.NESTED},
    Family.FLINEAR: {Relation.DISJOINT, Relation.NESTED},
}


def _fail(family, reason, t, mask=None):
    t = np.asarray(t, dtype=float)
    if t.ndim and mask is not None:
        t = t[np.argmax(mask)]
    raise FamilyPreconditionError(family.value, reason, float(t))


def element_jets(curve: ParamCurve, family, t):
    """Jets of the three osculating parameters (order >= 1) at ``t``.

    The first derivative of each jet is the trace tangent; it comes from
    differentiating the closed-form coefficient formulas, never from
    differencing samples.
    """
    family = as_family(family)
    X, Y = curve.jets(t)
    try:
        if family is Family.CIRCLE:
            e = euclidean_jets(X, Y, t)
            kappa = e["kappa"]
            small = np.abs(kappa.c[0]) < REGULAR_EPS
            if np.any(small):
                _fail(family, "zero curvature", t, small)
            # centre = g + N / kappa, radius = 1 / |kappa|
            inv_k = 1.0 / kappa
            nx, ny = -e["yp"] / e["speed"], e["xp"] / e["speed"]
            a = X + nx * inv_k
            b = Y + ny * inv_k
            r = inv_k * np.sign(kappa.c[0])
            return a, b, r
        if family is Family.HOOKE:
            c = centroaffine_jets(X, Y, t)
            p = c["p"]
            small = np.abs(p.c[0]) < REGULAR_EPS
            if np.any(small):
                _fail(family, "zero centroaffine curvature", t, small)
            xt, yt = c["xt"], c["yt"]
            a = p * Y * Y + yt * yt
            b = -(p * X * Y + xt * yt)
            cc = p * X * X + xt * xt
            return a, b, cc
        if family is Family.KEPLER:
            pj = polar_jets(X, Y, t)
            u, u1, u2 = pj["u"], pj["u1"], pj["u2"]
            cos, sin = pj["cos"], pj["sin"]
            c = u + u2
            bad = c.c[0] <= 0
            if np.any(bad):
                _fail(family, "osculating Kepler conic has c <= 0 (wrong branch)", t, bad)
            a = (u - c) * cos - u1 * sin
            b = (u - c) * sin + u1 * cos
            return a, b, c
        if family is Family.VPARABOLA:
            g = graph_jets(X, Y, t)
            y1, y2 = g["y1"], g["y2"]
            a = 0.5 * y2
            b = y1 - X * y2
            c = Y - X * y1 + 0.5 * X * X * y2
            return a, b, c
        # flinear
        g = graph_jets(X, Y, t)
        y1, y2 = g["y1"], g["y2"]
        bad = y1.c[0] >= 0
        if np.any(bad):
            _fail(family, "increasing or flat graph (only decreasing branches are supported)", t, bad)
        small = np.abs(y2.c[0]) < REGULAR_EPS
        if np.any(small):
            _fail(family, "inflection (y'' = 0)", t, small)
        h = -2.0 * y1 / y2  # x - a
        c2 = -y1 * h * h
        a = X - h
        b = Y - c2 / h
        return a, b, J.sqrt(c2)
    except FamilyPreconditionError:
        raise
    except CurveError as err:
        reason = str(err).split(" at t=")[0]
        raise FamilyPreconditionError(family.value, reason, err.t) from err


def osculating_element(curve: ParamCurve, family, t: float) -> ConicElement:
    """The family member with 2nd-order contact with ``curve`` at ``t``."""
    family = as_family(family)
    a, b, c = element_jets(curve, family, float(t))
    return ConicElement(family, (a.value, b.value, c.value))


def contact_residuals(curve: ParamCurve, element: ConicElement, t: float):
    """Defining function of ``element`` along ``curve``: value and two t-derivatives.

    Normalized by the magnitude of the terms of the defining function so the
    numbers are comparable across scales.
    """
    a, b, c = element.params
    X, Y = curve.jets(float(t), order=2)
    fam = element.family
    if fam is Family.CIRCLE:
        F = (X - a) * (X - a) + (Y - b) * (Y - b) - c * c
        scale = c * c
    elif fam is Family.HOOKE:
        F = a * X * X + 2 * b * X * Y + c * Y * Y - 1.0
        scale = abs(a) * X.value**2 + 2 * abs(b * X.value * Y.value) + abs(c) * Y.value**2 + 1.0
    elif fam is Family.KEPLER:
        r = J.sqrt(X * X + Y * Y)
        F = a * X + b * Y + c * r - 1.0
        scale = abs(a * X.value) + abs(b * Y.value) + c * r.value + 1.0
    elif fam is Family.VPARABOLA:
        F = Y - (a * X * X + b * X + c)
        scale = abs(Y.value) + abs(a) * X.value**2 + abs(b * X.value) + abs(c)
    else:
        F = (X - a) * (Y - b) - c * c
        scale = c * c
    return tuple(float(F.derivative(k)) / scale for k in range(3))


@dataclass
class FamilyTrace:
    family: Family
    t: np.ndarray
    params: np.ndarray  # (n, 3)
    tangents: np.ndarray  # (n, 3), d params / dt
    curve_label: str = ""

    def __len__(self):
        return len(self.t)

    @property
    def samples(self):
        return [
            (float(t), tuple(map(float, p)), tuple(map(float, g)))
            for t, p, g in zip(self.t, self.params, self.tangents)
        ]

    def element(self, i) -> ConicElement:
        return ConicElement(self.family, tuple(self.params[i]))

    @classmethod
    def from_points(cls, family, t, params, tangents, label=""):
        return cls(as_family(family), np.asarray(t, float), np.asarray(params, float),
                   np.asarray(tangents, float), label)


def family_trace(curve: ParamCurve, family, n: int = DEFAULT_SAMPLES, t=None) -> FamilyTrace:
    """Sample the osculating elements and their analytic tangents on a uniform grid."""
    family = as_family(family)
    ts = curve.grid(n) if t is None else np.asarray(t, dtype=float)
    a, b, c = element_jets(curve, family, ts)
    params = np.stack([a.c[0], b.c[0], c.c[0]], axis=-1)
    tangents = np.stack([a.c[1], b.c[1], c.c[1]], axis=-1)
    return FamilyTrace(family, ts, params, tangents, curve.label)


@dataclass(frozen=True)
class NullResidual:
    value: float
    skipped: int
    used: int


def null_residual(trace: FamilyTrace) -> NullResidual:
    """Worst ``|Q(G')| / |G'|^2`` over samples with ``|G'| >= 1e-12``."""
    if len(trace) == 0:
        raise TaitKneserError("empty trace")
    g = trace.tangents
    n2 = np.sum(g * g, axis=1)
    keep = n2 >= DEGENERATE_TANGENT**2
    if not np.any(keep):
        return NullResidual(0.0, int(len(trace)), 0)
    q = quadratic_form(trace.family, g[keep])
    return NullResidual(float(np.max(np.abs(q) / n2[keep])), int(np.sum(~keep)), int(np.sum(keep)))


@dataclass(frozen=True)
class EndpointInterval:
    interval: SeparationInterval
    oriented: float
    # circle family only: length of the (a, b) projection and |r1 - r0|
    projection_length: float | None = None
    radius_change: float | None = None

    @property
    def projection_mismatch(self):
        if self.projection_length is None or self.radius_change == 0:
            return None
        return abs(self.projection_length - self.radius_change) / self.radius_change


def _check_regular(trace):
    g = trace.tangents
    norms = np.linalg.norm(g, axis=1)
    top = norms.max() if norms.size else 0.0
    inner = norms[1:-1]
    if top == 0.0 or np.any(inner <= 1e-9 * top):
        raise VertexInsideError("trace is singular strictly inside its range")
    # a sign flip of the tangent between samples means it passed through zero
    dots = np.sum(g[1:] * g[:-1], axis=1)
    if np.any(dots < 0):
        i = int(np.argmax(dots < 0))
        raise VertexInsideError(f"trace tangent reverses between t={trace.t[i]} and t={trace.t[i + 1]}")


def endpoint_interval(trace: FamilyTrace) -> EndpointInterval:
    """Interval between the first and last element of a regular trace."""
    _check_regular(trace)
    fam = trace.family
    delta = tuple(float(v) for v in trace.params[-1] - trace.params[0])
    value = quadratic_form(fam, delta)
    iv = SeparationInterval(fam, value, delta)
    proj = dr = None
    if fam is Family.CIRCLE:
        speed = np.hypot(trace.tangents[:, 0], trace.tangents[:, 1])
        proj = float(abs(simpson(speed, x=trace.t)))
        dr = abs(float(trace.params[-1, 2] - trace.params[0, 2]))
    return EndpointInterval(iv, ORIENTATION[fam] * value, proj, dr)


# verification -------------------------------------------------------------

@dataclass
class FoliationReport:
    curve_label: str
    family: Family
    n_samples: int
    vertices: list[VertexRecord]
    max_null_residual: float
    null_skipped: int
    min_pairwise_interval: float
    min_normalized_interval: float
    pair_verdicts: dict[str, int]
    oracle_agreement: dict[str, int]
    oracle_relations: dict[str, int]
    n_violations: int
    violations: list[tuple[float, float, str]] = field(default_factory=list)
    used_oracle: bool = False

    @property
    def passed(self) -> bool:
        return not self.vertices and self.n_violations == 0

    @property
    def n_pairs(self):
        return self.n_samples * (self.n_samples - 1) // 2

    def to_dict(self):
        return {
            "curve_label": self.curve_label,
            "family": self.family.value,
            "status": "PASS" if self.passed else "FAIL",
            "n_samples": self.n_samples,
            "n_pairs": self.n_pairs,
            "vertices": [
                {"t": v.t, "discriminant_kind": v.discriminant_kind} for v in self.vertices
            ],
            "max_null_residual": self.max_null_residual,
            "null_skipped": self.null_skipped,
            "min_pairwise_interval": self.min_pairwise_interval,
            "min_normalized_interval": self.min_normalized_interval,
            "pair_verdicts": dict(sorted(self.pair_verdicts.items())),
            "used_oracle": self.used_oracle,
            "oracle_agreement": dict(sorted(self.oracle_agreement.items())),
            "oracle_relations": dict(sorted(self.oracle_relations.items())),
            "n_violations": self.n_violations,
            "violations": [
                {"t_i": ti, "t_j": tj, "details": d} for ti, tj, d in self.violations
            ],
        }

    @classmethod
    def from_dict(cls, d):
        fam = as_family(d["family"])
        return cls(
            curve_label=d["curve_label"],
            family=fam,
            n_samples=d["n_samples"],
            vertices=[VertexRecord(fam, v["t"], v["discriminant_kind"]) for v in d["vertices"]],
            max_null_residual=d["max_null_residual"],
            null_skipped=d["null_skipped"],
            min_pairwise_interval=d["min_pairwise_interval"],
            min_normalized_interval=d["min_normalized_interval"],
            pair_verdicts=dict(d["pair_verdicts"]),
            oracle_agreement=dict(d["oracle_agreement"]),
            oracle_relations=dict(d["oracle_relations"]),
            n_violations=d["n_violations"],
            violations=[(v["t_i"], v["t_j"], v["details"]) for v in d["violations"]],
            used_oracle=d["used_oracle"],
        )


def verify_foliation(
    curve: ParamCurve,
    family,
    n: int = DEFAULT_SAMPLES,
    use_oracle: bool = True,
    tol: float = DEFAULT_TOL,
    vertex_samples: int | None = None,
) -> FoliationReport:
    """Check that all pairs of osculating elements along ``curve`` are nested.

    PASS requires a vertex-free arc and zero violations.  A violation is a
    pair whose (oracle-resolved) relation is not the family's nesting
    outcome, or where the oracle contradicts the interval predicate.
    """
    from . import oracle

    family = as_family(family)
    vertices = find_vertices(curve, family, vertex_samples or max(2048, 4 * n))
    trace = family_trace(curve, family, n)
    nr = null_residual(trace)

    P = trace.params
    i_idx, j_idx = np.triu_indices(len(trace), k=1)
    q_mat, qn_mat = kernels.pairwise_interval_matrix(P, GRAM[family])
    orient = ORIENTATION[family]
    q = q_mat[i_idx, j_idx]
    qn = qn_mat[i_idx, j_idx]
    codes, _ = relation_codes(family, P[i_idx], P[j_idx], tol)
    verdicts = Counter(relation_from_code(c).value for c in codes)

    good = GOOD_RELATIONS[family]
    agreement = Counter()
    oracle_rel = Counter()
    final = [relation_from_code(c) for c in codes]
    details = [""] * len(final)
    if use_oracle:
        orels = oracle.nested_oracle_pairs(family, P[i_idx], P[j_idx])
        for k, orel in enumerate(orels):
            oracle_rel[orel.value] += 1
            pred = final[k]
            omapped = oracle.as_relation(orel)
            if pred is Relation.UNDETERMINED:
                agreement["resolved"] += 1
                final[k] = omapped
                details[k] = f"oracle resolved undetermined as {orel.value}"
            elif pred is omapped:
                agreement["agree"] += 1
            else:
                agreement["disagree"] += 1
                details[k] = f"predicate {pred.value} vs oracle {orel.value}"
                final[k] = omapped

    violations = []
    n_viol = 0
    for k, rel in enumerate(final):
        bad = rel not in good or details[k].startswith("predicate")
        if bad:
            n_viol += 1
            if len(violations) < MAX_LISTED_VIOLATIONS:
                msg = details[k] or f"predicate {rel.value}"
                msg += f"; interval {q[k]:.6g}"
                violations.append((float(trace.t[i_idx[k]]), float(trace.t[j_idx[k]]), msg))

    return FoliationReport(
        curve_label=curve.label,
        family=family,
        n_samples=len(trace),
        vertices=vertices,
        max_null_residual=nr.value,
        null_skipped=nr.skipped,
        min_pairwise_interval=float(np.min(orient * q)) if q.size else 0.0,
        min_normalized_interval=float(np.min(orient * qn)) if qn.size else 0.0,
        pair_verdicts=dict(verdicts),
        oracle_agreement=dict(agreement),
        oracle_relations=dict(oracle_rel),
        n_violations=n_viol,
        violations=violations,
        used_oracle=use_oracle,
    )


# randomized predicate/oracle comparison -----------------------------------

def random_parameters(family, n: int, rng: np.random.Generator) -> np.ndarray:
    """Random valid parameter triples for ``family``.

    circle: centres in [-2, 2]^2, radii in (0, 3]; kepler: (a, b) in [-1, 1]^2,
    c in (0, 2]; hooke: entries in [-3, 3] with real, nondegenerate forms;
    vparabola: entries in [-2, 2]; flinear: (a, b) in [-2, 2]^2, c in (0, 2].
    """
    family = as_family(family)
    if family is Family.CIRCLE:
        return np.column_stack([rng.uniform(-2, 2, (n, 2)), 3.0 - rng.uniform(0, 3, n)])
    if family is Family.KEPLER:
        return np.column_stack([rng.uniform(-1, 1, (n, 2)), 2.0 - rng.uniform(0, 2, n)])
    if family is Family.FLINEAR:
        return np.column_stack([rng.uniform(-2, 2, (n, 2)), 2.0 - rng.uniform(0, 2, n)])
    if family is Family.VPARABOLA:
        return rng.uniform(-2, 2, (n, 3))
    out = np.empty((0, 3))
    while len(out) < n:
        m = rng.uniform(-3, 3, (2 * n, 3))
        det = m[:, 0] * m[:, 2] - m[:, 1] ** 2
        real = (det < -1e-6) | ((det > 1e-6) & (m[:, 0] + m[:, 2] > 0))
        out = np.concatenate([out, m[real]])
    return out[:n]


@dataclass
class RandomPairCheck:
    family: Family
    n_pairs: int
    seed: int
    agree: int
    disagree: int
    resolved: int
    band_excluded: int
    mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.disagree == 0

    def to_dict(self):
        return {
            "family": self.family.value,
            "n_pairs": self.n_pairs,
            "seed": self.seed,
            "agree": self.agree,
            "disagree": self.disagree,
            "resolved": self.resolved,
            "band_excluded": self.band_excluded,
            "mismatches": self.mismatches,
        }


def random_pair_check(family, n_pairs: int, seed: int = 0, tol: float = DEFAULT_TOL) -> RandomPairCheck:
    """Compare the interval predicate with the oracle on random element pairs.

    Pairs inside the tangency band ``|Q| <= tol`` (normalized) are excluded;
    pairs the predicate leaves undetermined count as resolved by the oracle.
    """
    from . import oracle

    family = as_family(family)
    rng = np.random.default_rng(seed)
    p1 = random_parameters(family, n_pairs, rng)
    p2 = random_parameters(family, n_pairs, rng)
    codes, q = relation_codes(family, p1, p2, tol)
    d = p2 - p1
    qn = q / np.sum(d * d, axis=1)
    orels = oracle.nested_oracle_pairs(family, p1, p2)
    agree = disagree = resolved = excluded = 0
    mismatches = []
    for k, orel in enumerate(orels):
        pred = relation_from_code(codes[k])
        if abs(qn[k]) <= tol:
            excluded += 1
        elif pred is Relation.UNDETERMINED:
            resolved += 1
        elif pred is oracle.as_relation(orel):
            agree += 1
        else:
            disagree += 1
            if len(mismatches) < MAX_LISTED_VIOLATIONS:
                mismatches.append({
                    "p1": [float(v) for v in p1[k]],
                    "p2": [float(v) for v in p2[k]],
                    "predicate": pred.value,
                    "oracle": orel.value,
                    "interval": float(q[k]),
                })
    return RandomPairCheck(family, n_pairs, seed, agree, disagree, resolved, excluded, mismatches)
