"""SVG figures of a curve with a fan of its osculating conics.

Every conic is drawn as a sampled polyline (512 points per branch) clipped to
the viewport, so all five families render the same way.  Output is a pure
function of the inputs: coordinates are written with 9 significant digits
and elements appear in a fixed order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from . import _pykernels
from .conics import ConicElement, Family
from .curves import ParamCurve

BRANCH_SAMPLES = 512
CURVE_SAMPLES = 1024
AUTO_MARGIN = 0.2
MIN_PIXELS = 64


@dataclass(frozen=True)
class RenderStyle:
    viewport: tuple[float, float, float, float] | None = None  # xmin, xmax, ymin, ymax
    width_px: int = 640
    height_px: int = 640
    curve_color: str = "#000000"
    conic_color: str = "#3b6ea8"
    accent_color: str = "#b0b0b0"
    curve_width: float = 2.0
    conic_width: float = 0.8
    conic_count: int = 12
    show_axes: bool = False
    title: str | None = None

    def __post_init__(self):
        if self.width_px < MIN_PIXELS or self.height_px < MIN_PIXELS:
            raise ValueError(f"pixel dimensions must be at least {MIN_PIXELS}")
        if self.viewport is not None:
            xmin, xmax, ymin, ymax = self.viewport
            if not (xmin < xmax and ymin < ymax):
                raise ValueError(f"empty viewport {self.viewport}")


@dataclass(frozen=True)
class RenderResult:
    svg: str
    skipped: tuple[str, ...]


def _fmt(v: float) -> str:
    s = f"{v + 0.0:.9g}"
    return "0" if s == "-0" else s


def auto_viewport(curve: ParamCurve, width_px: int, height_px: int):
    """Curve bounding box plus a 20% margin, widened to the pixel aspect ratio."""
    pts = curve.points(curve.grid(CURVE_SAMPLES, endpoint=True))
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    if not np.all(np.isfinite(span)) or span.max() <= 0:
        raise ValueError("empty viewport: the curve has no extent")
    span = np.where(span > 0, span, span.max())
    centre = 0.5 * (lo + hi)
    half = 0.5 * span * (1.0 + 2.0 * AUTO_MARGIN)
    aspect = width_px / height_px
    if half[0] / half[1] < aspect:
        half[0] = half[1] * aspect
    else:
        half[1] = half[0] / aspect
    return (centre[0] - half[0], centre[0] + half[0], centre[1] - half[1], centre[1] + half[1])


def _dense_ends(n):
    return np.sin(np.linspace(-0.5 * np.pi, 0.5 * np.pi, n + 2)[1:-1])


def conic_branches(conic: ConicElement, viewport) -> list[np.ndarray]:
    """Sampled branches of a conic covering the viewport, each ``(m, 2)``."""
    a, b, c = conic.params
    xmin, xmax, ymin, ymax = viewport
    reach = math.hypot(max(abs(xmin), abs(xmax)), max(abs(ymin), abs(ymax)))
    n = BRANCH_SAMPLES
    fam = conic.family
    if fam is Family.CIRCLE:
        s = np.linspace(0.0, 2 * np.pi, n)
        return [np.stack([a + c * np.cos(s), b + c * np.sin(s)], axis=-1)]
    if fam is Family.HOOKE:
        frame = [v[0] for v in _pykernels.central_frame(np.array([[a, b, c]], dtype=float))]
        kind = frame[4]
        if kind == 1:
            s = np.linspace(0.0, 2 * np.pi, n)
            x, y = _pykernels.boundary_points(*frame, s, np.ones(n))
            return [np.stack([x, y], axis=-1)]
        if kind == -1:
            top = math.asinh(reach * math.sqrt(max(abs(frame[0]), abs(frame[1])))) + 1.0
            s = np.linspace(-top, top, n)
            out = []
            for br in (1.0, -1.0):
                x, y = _pykernels.boundary_points(*frame, s, np.full(n, br))
                out.append(np.stack([x, y], axis=-1))
            return out
        return []
    if fam is Family.KEPLER:
        rho = math.hypot(a, b)
        phi = math.atan2(b, a)
        floor = 0.5 / max(reach, 1e-300)  # points with 1/d beyond twice the reach are off-canvas
        if c - rho >= floor:
            th = np.linspace(0.0, 2 * np.pi, n)
        else:
            if rho == 0:
                return []
            cos_lim = (floor - c) / rho
            if cos_lim >= 1:
                return []
            th = phi + math.acos(max(cos_lim, -1.0)) * _dense_ends(n)
        d = c + a * np.cos(th) + b * np.sin(th)
        keep = d > 0
        return [np.stack([np.cos(th[keep]), np.sin(th[keep])], axis=-1) / d[keep, None]]
    if fam is Family.VPARABOLA:
        x = np.linspace(xmin, xmax, n)
        return [np.stack([x, a * x * x + b * x + c], axis=-1)]
    # flinear: y - b = c^2 / (x - a) on both sides of the pole
    k = c * c
    out = []
    far = 2.0 * (ymax - ymin) + abs(b) + max(abs(ymin), abs(ymax))
    u_lo = k / far if far > 0 else 1e-6
    for sign, edge in ((1.0, xmax), (-1.0, xmin)):
        u_hi = sign * (edge - a)
        if u_hi <= u_lo:
            continue
        u = np.geomspace(u_lo, u_hi, n)
        x = a + sign * u
        out.append(np.stack([x, b + sign * k / u], axis=-1))
    return out


def _clip_runs(pts: np.ndarray, viewport) -> list[np.ndarray]:
    """Maximal runs of consecutive points inside the viewport."""
    xmin, xmax, ymin, ymax = viewport
    inside = (
        np.isfinite(pts).all(axis=1)
        & (pts[:, 0] >= xmin) & (pts[:, 0] <= xmax)
        & (pts[:, 1] >= ymin) & (pts[:, 1] <= ymax)
    )
    runs = []
    start = None
    for i, ok in enumerate(inside):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            runs.append(pts[start:i])
            start = None
    if start is not None:
        runs.append(pts[start:])
    return [r for r in runs if len(r) >= 2]


class _Canvas:
    def __init__(self, viewport, width, height):
        self.viewport = viewport
        self.width = width
        self.height = height
        xmin, xmax, ymin, ymax = viewport
        self.sx = width / (xmax - xmin)
        self.sy = height / (ymax - ymin)

    def to_px(self, pts):
        xmin, _, _, ymax = self.viewport
        return np.column_stack([(pts[:, 0] - xmin) * self.sx, (ymax - pts[:, 1]) * self.sy])

    def path_data(self, runs):
        parts = []
        for run in runs:
            px = self.to_px(run)
            cmds = [f"M{_fmt(px[0, 0])} {_fmt(px[0, 1])}"]
            cmds += [f"L{_fmt(x)} {_fmt(y)}" for x, y in px[1:]]
            parts.append(" ".join(cmds))
        return " ".join(parts)


def build_svg(curve: ParamCurve, elements, style: RenderStyle = RenderStyle()) -> RenderResult:
    """Render and also report the conics that had no visible part."""
    elements = list(elements)
    families = {e.family for e in elements}
    if len(families) > 1:
        raise ValueError("all elements must belong to one family")
    viewport = style.viewport or auto_viewport(curve, style.width_px, style.height_px)
    canvas = _Canvas(viewport, style.width_px, style.height_px)
    w, h = style.width_px, style.height_px

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]
    if style.show_axes:
        xmin, xmax, ymin, ymax = viewport
        stroke = f'stroke={quoteattr(style.accent_color)} stroke-width="0.5"'
        if xmin <= 0 <= xmax:
            x0 = canvas.to_px(np.array([[0.0, 0.0]]))[0, 0]
            lines.append(f'<line x1="{_fmt(x0)}" y1="0" x2="{_fmt(x0)}" y2="{h}" {stroke}/>')
        if ymin <= 0 <= ymax:
            y0 = canvas.to_px(np.array([[0.0, 0.0]]))[0, 1]
            lines.append(f'<line x1="0" y1="{_fmt(y0)}" x2="{w}" y2="{_fmt(y0)}" {stroke}/>')

    skipped = []
    conic_attrs = (
        f'fill="none" stroke={quoteattr(style.conic_color)} stroke-width="{_fmt(style.conic_width)}"'
    )
    for i, el in enumerate(elements):
        runs = []
        for branch in conic_branches(el, viewport):
            runs += _clip_runs(branch, viewport)
        if not runs:
            skipped.append(f"conic {i} {el.family.value} {el.params} is not visible in the viewport")
            continue
        lines.append(f'<path d="{canvas.path_data(runs)}" {conic_attrs}/>')

    ts = curve.grid(CURVE_SAMPLES, endpoint=True)
    curve_runs = _clip_runs(curve.points(ts), viewport)
    curve_attrs = (
        f'fill="none" stroke={quoteattr(style.curve_color)} stroke-width="{_fmt(style.curve_width)}"'
    )
    if curve_runs:
        lines.append(f'<path d="{canvas.path_data(curve_runs)}" {curve_attrs}/>')
    else:
        skipped.append("the curve is not visible in the viewport")
    if style.title:
        lines.append(f'<text x="8" y="18" font-size="14">{escape(style.title)}</text>')
    lines.append("</svg>")
    return RenderResult("\n".join(lines) + "\n", tuple(skipped))


def render_svg(curve: ParamCurve, elements, style: RenderStyle = RenderStyle()) -> str:
    """SVG document with the curve and one path per visible conic."""
    return build_svg(curve, elements, style).svg
