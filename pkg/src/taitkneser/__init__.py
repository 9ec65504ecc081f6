"""Osculating conics of plane curves and numerical checks of their nesting."""

from .conics import (
    ConicElement,
    Family,
    Relation,
    SeparationInterval,
    SeparationVerdict,
    classify_conic,
    separation_interval,
    separation_verdict,
)
from .curves import ParamCurve, VertexRecord, discriminant, find_vertices
from .errors import (
    BranchCutError,
    CurveError,
    CurveSpecError,
    DomainError,
    ExpressionError,
    FamilyMismatchError,
    FamilyPreconditionError,
    FitError,
    InvalidConicError,
    NonFiniteError,
    TaitKneserError,
    UnknownIdentifierError,
    VertexInsideError,
)
from .expr import evaluate, evaluate_jet, parse_expression, unparse
from .jet import Jet
from .oracle import OracleRelation, find_intersections, nested_oracle, point_side
from .osculate import (
    FamilyTrace,
    FoliationReport,
    contact_residuals,
    endpoint_interval,
    family_trace,
    null_residual,
    osculating_element,
    verify_foliation,
)
from .render import RenderStyle, render_svg
from .transforms import DualLawPair, dual_exponent, fit_conic, hooke_to_kepler, power_map

__version__ = "0.1.0"

__all__ = [
    "BranchCutError",
    "ConicElement",
    "CurveError",
    "CurveSpecError",
    "DomainError",
    "DualLawPair",
    "ExpressionError",
    "Family",
    "FamilyMismatchError",
    "FamilyPreconditionError",
    "FamilyTrace",
    "FitError",
    "FoliationReport",
    "InvalidConicError",
    "Jet",
    "NonFiniteError",
    "OracleRelation",
    "ParamCurve",
    "Relation",
    "RenderStyle",
    "SeparationInterval",
    "SeparationVerdict",
    "TaitKneserError",
    "UnknownIdentifierError",
    "VertexInsideError",
    "VertexRecord",
    "classify_conic",
    "contact_residuals",
    "discriminant",
    "dual_exponent",
    "endpoint_interval",
    "evaluate",
    "evaluate_jet",
    "family_trace",
    "find_intersections",
    "find_vertices",
    "fit_conic",
    "hooke_to_kepler",
    "nested_oracle",
    "null_residual",
    "osculating_element",
    "parse_expression",
    "point_side",
    "power_map",
    "render_svg",
    "separation_interval",
    "separation_verdict",
    "unparse",
    "verify_foliation",
]
