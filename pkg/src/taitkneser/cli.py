"""Command-line front end.

Curve-spec files are line based::

    # lower half of a parabola
    x = "t"
    y = "t^2"
    t0 = -1.5
    t1 = -0.1
    label = "parabola"      # optional
    family = "circle"       # optional default for --family
    samples = 100           # optional default for --samples

String values are double-quoted; numeric values may be constant
expressions such as ``2*pi``.

Exit codes: 0 success, 1 usage error, 2 input or parse error,
3 verification FAIL, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .conics import Family, as_family
from .curves import REGULAR_EPS, ParamCurve, find_vertices
from .errors import (
    CurveSpecError,
    ExpressionError,
    TaitKneserError,
)
from .expr import constant_value, parse_expression
from .osculate import DEFAULT_SAMPLES, family_trace, random_pair_check, verify_foliation
from .render import RenderStyle, build_svg
from .transforms import dual_exponent, fit_conic, power_map

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_FAIL = 3
EXIT_NUMERIC = 4

PROBE_POINTS = 64
STRING_KEYS = ("x", "y", "label", "family")
NUMBER_KEYS = ("t0", "t1", "samples")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CurveSpec:
    x_expr: str
    y_expr: str
    t0: float
    t1: float
    label: str
    family: str | None = None
    samples: int | None = None

    def to_curve(self) -> ParamCurve:
        return ParamCurve.from_strings(self.x_expr, self.y_expr, self.t0, self.t1, self.label)

    def to_dict(self):
        d = {"x": self.x_expr, "y": self.y_expr, "t0": self.t0, "t1": self.t1, "label": self.label}
        if self.family is not None:
            d["family"] = self.family
        if self.samples is not None:
            d["samples"] = self.samples
        return d


def _parse_value(key, raw, line_no):
    if key in STRING_KEYS:
        if len(raw) < 2 or not (raw.startswith('"') and raw.endswith('"')):
            raise CurveSpecError(f"value of {key!r} must be a double-quoted string", line_no)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError as err:
            raise CurveSpecError(f"bad string for {key!r}: {err.msg}", line_no) from None
        if not isinstance(value, str):
            raise CurveSpecError(f"bad string for {key!r}", line_no)
        return value
    try:
        value = constant_value(parse_expression(raw))
    except ExpressionError as err:
        raise CurveSpecError(f"bad number for {key!r}: {err}", line_no) from None
    if not math.isfinite(value):
        raise CurveSpecError(f"{key!r} is not finite", line_no)
    if key == "samples":
        if value != int(value) or value < 2:
            raise CurveSpecError("samples must be an integer >= 2", line_no)
        return int(value)
    return value


def _strip_comment(line):
    # a '#' inside a quoted string is not a comment
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"' and (i == 0 or line[i - 1] != "\\"):
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def parse_curve_spec(text: str, default_label: str = "curve") -> CurveSpec:
    """Parse and validate curve-spec text."""
    values = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(line).strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key = key.strip()
        raw = raw.strip()
        if not sep or not key:
            raise CurveSpecError("expected 'key = value'", line_no)
        if key not in STRING_KEYS + NUMBER_KEYS:
            raise CurveSpecError(f"unknown key {key!r}", line_no)
        if key in values:
            raise CurveSpecError(f"duplicate key {key!r}", line_no)
        if not raw:
            raise CurveSpecError(f"missing value for {key!r}", line_no)
        values[key] = (_parse_value(key, raw, line_no), line_no)

    missing = [k for k in ("x", "y", "t0", "t1") if k not in values]
    if missing:
        raise CurveSpecError(f"missing required key(s): {', '.join(missing)}")
    for key in ("x", "y"):
        src, line_no = values[key]
        try:
            parse_expression(src)
        except ExpressionError as err:
            raise CurveSpecError(f"{key}: {err}", line_no) from None
    family = values.get("family", (None, None))
    if family[0] is not None:
        try:
            as_family(family[0])
        except ValueError as err:
            raise CurveSpecError(str(err), family[1]) from None
    t0, t1 = values["t0"][0], values["t1"][0]
    if not t0 < t1:
        raise CurveSpecError("t0 < t1 required", values["t1"][1])
    spec = CurveSpec(
        values["x"][0],
        values["y"][0],
        float(t0),
        float(t1),
        values.get("label", (default_label, None))[0],
        family[0],
        values.get("samples", (None, None))[0],
    )
    _probe(spec)
    return spec


def _probe(spec: CurveSpec):
    """Evaluate the curve at 64 parameters; it must be finite and regular there."""
    curve = spec.to_curve()
    ts = np.linspace(spec.t0, spec.t1, PROBE_POINTS)
    for t in ts.tolist():
        try:
            X, Y = curve.jets(t, order=1)
        except TaitKneserError as err:
            raise CurveSpecError(f"curve cannot be evaluated at t={t!r}: {err}") from None
        speed = math.hypot(X.derivative(1), Y.derivative(1))
        if not speed > REGULAR_EPS:
            raise CurveSpecError(f"curve is not regular at t={t!r} (speed {speed:.3g})")


def load_curve_spec(path) -> CurveSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise CurveSpecError(f"cannot read {path}: {err.strerror or err}") from None
    return parse_curve_spec(text, default_label=path.stem)


# output helpers -------------------------------------------------------------

def _num(v: float) -> str:
    return f"{float(v):.17g}"


def _clean(obj):
    """Replace non-finite floats by None so the JSON stays standard."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return _clean(obj.item())
    return obj


def dumps_json(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_clean(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _write_text(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as err:
        raise CurveSpecError(f"cannot write {path}: {err.strerror or err}") from None


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_num(v) for v in row])
    return buf.getvalue()


def _emit(text, out):
    if out:
        _write_text(out, text)
    else:
        sys.stdout.write(text)


# commands -------------------------------------------------------------------

def _resolve(args, spec):
    family = args.family or spec.family
    if family is None:
        raise UsageError("--family is required (the curve spec sets no default)")
    try:
        family = as_family(family)
    except ValueError as err:
        raise UsageError(str(err)) from None
    samples = getattr(args, "samples", None) or spec.samples or DEFAULT_SAMPLES
    if samples < 2:
        raise UsageError("--samples must be at least 2")
    return family, samples


def cmd_osculate(args):
    spec = load_curve_spec(args.curve)
    family, n = _resolve(args, spec)
    fmt = _output_format(args.out, ("csv", "json"), default="csv")
    trace = family_trace(spec.to_curve(), family, n)
    if fmt == "csv":
        rows = np.column_stack([trace.t, trace.params, trace.tangents])
        text = _csv_text(["t", "p1", "p2", "p3", "dp1", "dp2", "dp3"], rows)
    else:
        text = dumps_json({
            "curve": spec.to_dict(),
            "family": family.value,
            "samples": [
                {"t": t, "params": list(p), "tangent": list(g)} for t, p, g in trace.samples
            ],
        })
    _emit(text, args.out)
    return EXIT_OK


def cmd_vertices(args):
    spec = load_curve_spec(args.curve)
    family, _ = _resolve(args, spec)
    found = find_vertices(spec.to_curve(), family, args.grid)
    text = dumps_json({
        "curve": spec.to_dict(),
        "family": family.value,
        "vertices": [{"t": v.t, "discriminant_kind": v.discriminant_kind} for v in found],
    })
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args):
    if args.curve is None and args.random_pairs is None:
        raise UsageError("verify needs --curve, --random-pairs, or both")
    doc = {"backend": kernels.BACKEND}
    ok = True
    lines = []
    if args.curve is not None:
        spec = load_curve_spec(args.curve)
        family, n = _resolve(args, spec)
        report = verify_foliation(spec.to_curve(), family, n, use_oracle=args.oracle)
        doc["curve"] = spec.to_dict()
        doc["report"] = report.to_dict()
        ok = ok and report.passed
        verdicts = ", ".join(f"{v} {k}" for k, v in sorted(report.pair_verdicts.items()))
        lines.append(
            f"{'PASS' if report.passed else 'FAIL'}: {spec.label} ({family.value}), "
            f"{report.n_pairs} pairs: {verdicts}; {len(report.vertices)} vertices; "
            f"{report.n_violations} violations"
        )
    else:
        if args.family is None:
            raise UsageError("--family is required with --random-pairs")
        family = as_family(args.family)
    if args.random_pairs is not None:
        if args.random_pairs < 1:
            raise UsageError("--random-pairs must be positive")
        check = random_pair_check(family, args.random_pairs, args.seed)
        doc["random_pairs"] = check.to_dict()
        ok = ok and check.passed
        lines.append(
            f"{'PASS' if check.passed else 'FAIL'}: {check.n_pairs} random {family.value} pairs, "
            f"{check.agree} agree, {check.disagree} disagree, {check.resolved} resolved by oracle, "
            f"{check.band_excluded} in tangency band (seed {check.seed})"
        )
    doc["status"] = "PASS" if ok else "FAIL"
    if args.out:
        _write_text(args.out, dumps_json(doc))
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args):
    spec = load_curve_spec(args.curve)
    family, _ = _resolve(args, spec)
    if args.count < 1:
        raise UsageError("--count must be positive")
    _output_format(args.out, ("svg",), default="svg")
    curve = spec.to_curve()
    trace = family_trace(curve, family, args.count)
    try:
        style = RenderStyle(width_px=args.width, height_px=args.height, conic_count=args.count,
                            show_axes=args.axes)
    except ValueError as err:
        raise UsageError(str(err)) from None
    result = build_svg(curve, [trace.element(i) for i in range(len(trace))], style)
    for msg in result.skipped:
        print(f"warning: {msg}", file=sys.stderr)
    _emit(result.svg, args.out)
    return EXIT_OK


def cmd_map(args):
    if args.dual_of is not None:
        if args.curve is not None or args.exponent is not None:
            raise UsageError("--dual-of cannot be combined with --curve or --exponent")
        try:
            pair = dual_exponent(args.dual_of)
        except ValueError as err:
            raise UsageError(str(err)) from None
        print(f"a = {pair.a:g}\nb = {pair.b:g}\nexponent = {pair.exponent:g}")
        return EXIT_OK
    if args.curve is None or args.exponent is None:
        raise UsageError("map needs --curve and --exponent, or --dual-of")
    _output_format(args.out, ("csv",), default="csv")
    spec = load_curve_spec(args.curve)
    curve = spec.to_curve()
    n = args.samples or spec.samples or 256
    ts = curve.grid(n, endpoint=True)
    pts = curve.points(ts)
    img = power_map(pts, args.exponent)
    fit_line = None
    if args.fit:
        element, rms = fit_conic(img, args.fit)
        params = ", ".join(_num(v) for v in element.params)
        fit_line = f"fit {element.family.value}: ({params}) rms {rms:.3g}"
    text = _csv_text(["t", "x", "y", "u", "v"], np.column_stack([ts, pts, img]))
    _emit(text, args.out)
    if fit_line:
        print(fit_line, file=sys.stderr)
    return EXIT_OK


def _output_format(out, allowed, default):
    if not out:
        return default
    ext = Path(out).suffix.lower().lstrip(".")
    if ext not in allowed:
        raise UsageError(f"output must end in {' or '.join('.' + a for a in allowed)}, got {out!r}")
    return ext


# argument parsing -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="taitkneser", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    families = [f.value for f in Family]

    def common(p, out_help, need_curve=True):
        p.add_argument("--curve", required=need_curve, help="curve-spec file")
        p.add_argument("--family", choices=families, help="conic family")
        p.add_argument("--out", help=out_help)

    p = sub.add_parser("osculate", help="osculating elements and trace tangents on a grid")
    common(p, "output .csv or .json (default: CSV on stdout)")
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_osculate)

    p = sub.add_parser("vertices", help="hyper-osculation points of a family")
    common(p, "output .json (default: stdout)")
    p.add_argument("--grid", type=int, default=2048, help="scan grid size")
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("verify", help="check pairwise nesting along the curve")
    common(p, "JSON report path", need_curve=False)
    p.add_argument("--samples", type=int)
    p.add_argument("--oracle", action="store_true", help="cross-check every pair geometrically")
    p.add_argument("--random-pairs", type=int, help="also compare predicate and oracle on N random pairs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG of the curve and its osculating conics")
    common(p, "output .svg (default: stdout)")
    p.add_argument("--count", type=int, default=12)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=640)
    p.add_argument("--axes", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("map", help="complex power map of a curve, or the dual force law")
    p.add_argument("--curve")
    p.add_argument("--exponent", type=float)
    p.add_argument("--dual-of", type=float, metavar="A")
    p.add_argument("--samples", type=int)
    p.add_argument("--fit", choices=["hooke", "kepler"], help="fit a conic to the image")
    p.add_argument("--out", help="output .csv (default: stdout)")
    p.set_defaults(func=cmd_map)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CurveSpecError, ExpressionError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (TaitKneserError, ArithmeticError, np.linalg.LinAlgError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC


def main(argv=None) -> int:
    return run_command(argv)
