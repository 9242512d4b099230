"""SVG rendering of the I-P phase diagram.

Data coordinates map to pixels by the affine transform

    x = X0 + SX * I,    y = Y0 + SY * P

whose four coefficients are written into the document as a comment of the
form ``<!-- roegen-transform X0=... SX=... Y0=... SY=... -->``.
"""
import re
from xml.sax.saxutils import escape

import numpy as np

from .core import Phase, classify_phase, dictionary_lookup, phase_name
from .equilibrium import CurveKind
from .exceptions import ArgumentError, RenderError

__all__ = ["render_svg", "read_transform", "Transform"]

MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 20, 20, 50
LABEL_GRID = 64

_COLORS = {
    CurveKind.BOOM_CRISIS: "#b2182b",
    CurveKind.RECOVERY_RECESSION: "#2166ac",
    CurveKind.INCREASE_DECREASE: "#1b7837",
}


class Transform:
    def __init__(self, x0, sx, y0, sy):
        self.x0, self.sx, self.y0, self.sy = x0, sx, y0, sy

    def __call__(self, I, P):
        return self.x0 + self.sx * I, self.y0 + self.sy * P

    def inverse(self, x, y):
        return (x - self.x0) / self.sx, (y - self.y0) / self.sy

    def comment(self):
        return "<!-- roegen-transform X0={:.17g} SX={:.17g} Y0={:.17g} SY={:.17g} -->".format(
            self.x0, self.sx, self.y0, self.sy
        )


_TRANSFORM_RE = re.compile(r"roegen-transform X0=(\S+) SX=(\S+) Y0=(\S+) SY=(\S+) -->")


def read_transform(svg_text):
    """Recover the data-to-pixel transform recorded in an SVG document."""
    m = _TRANSFORM_RE.search(svg_text)
    if m is None:
        raise ArgumentError("no roegen-transform comment in document")
    return Transform(*(float(g) for g in m.groups()))


def _fmt(v):
    return f"{v:.3f}"


def _region_centroids(diagram, I_lo, I_hi, P_lo, P_hi):
    I_cells = I_lo + (np.arange(LABEL_GRID) + 0.5) * (I_hi - I_lo) / LABEL_GRID
    P_cells = P_lo + (np.arange(LABEL_GRID) + 0.5) * (P_hi - P_lo) / LABEL_GRID
    sums = {}
    for I in I_cells:
        for P in P_cells:
            label = classify_phase((I, P), diagram)
            if label in (Phase.INFLATION, Phase.LIQUIDITY, Phase.INCOME):
                s = sums.setdefault(label, [0.0, 0.0, 0])
                s[0] += I
                s[1] += P
                s[2] += 1
    return {k: (s[0] / s[2], s[1] / s[2]) for k, s in sums.items()}


def render_svg(diagram, width=800, height=600):
    """Standalone SVG of the phase diagram; identical input gives identical bytes."""
    if width < 100 or height < 100:
        raise ArgumentError(f"width and height must be >= 100, got {width}x{height}")
    I_lo, I_hi = diagram.i_range
    P_top = max(float(np.max(c.P)) for c in diagram.curves)
    P_lo, P_hi = 0.0, 1.05 * P_top
    if not (np.isfinite(P_hi) and P_hi > P_lo and I_hi > I_lo):
        raise RenderError("degenerate diagram: empty plotting range")

    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM
    sx = plot_w / (I_hi - I_lo)
    sy = -plot_h / (P_hi - P_lo)
    tf = Transform(MARGIN_LEFT - sx * I_lo, sx, MARGIN_TOP + plot_h - sy * P_lo, sy)

    x_label = f"{dictionary_lookup('T').econ_name} {dictionary_lookup('T').econ_symbol}"
    y_label = f"{dictionary_lookup('P').econ_name} {dictionary_lookup('P').econ_symbol}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        tf.comment(),
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    x_axis_y = MARGIN_TOP + plot_h
    out.append(
        f'<g id="axes" stroke="#000000" stroke-width="1">'
        f'<line x1="{MARGIN_LEFT}" y1="{x_axis_y}" x2="{MARGIN_LEFT + plot_w}" y2="{x_axis_y}"/>'
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{x_axis_y}"/></g>'
    )
    ticks = ['<g id="ticks" font-family="sans-serif" font-size="10" fill="#000000">']
    for I in np.linspace(I_lo, I_hi, 5):
        x, _ = tf(I, P_lo)
        ticks.append(f'<text x="{_fmt(x)}" y="{x_axis_y + 14}" text-anchor="middle">{I:.3g}</text>')
    for P in np.linspace(P_lo, P_hi, 5):
        _, y = tf(I_lo, P)
        ticks.append(f'<text x="{MARGIN_LEFT - 6}" y="{_fmt(y + 3)}" text-anchor="end">{P:.3g}</text>')
    ticks.append("</g>")
    out.extend(ticks)
    out.append(
        f'<text id="x-label" x="{_fmt(MARGIN_LEFT + plot_w / 2)}" y="{height - 12}" '
        f'font-family="sans-serif" font-size="13" text-anchor="middle">{escape(x_label)}</text>'
    )
    yc = MARGIN_TOP + plot_h / 2
    out.append(
        f'<text id="y-label" x="16" y="{_fmt(yc)}" transform="rotate(-90 16 {_fmt(yc)})" '
        f'font-family="sans-serif" font-size="13" text-anchor="middle">{escape(y_label)}</text>'
    )

    for kind in (CurveKind.BOOM_CRISIS, CurveKind.RECOVERY_RECESSION, CurveKind.INCREASE_DECREASE):
        curve = diagram.curve(kind)
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(*tf(curve.I, curve.P)))
        out.append(
            f'<polyline id="curve-{kind.slug}" points="{pts}" fill="none" '
            f'stroke="{_COLORS[kind]}" stroke-width="2"/>'
        )

    for node_id, (I, P), text in (
        ("triple-point", (diagram.triple.I_t, diagram.triple.P_t), "triple point"),
        ("critical-point", (diagram.critical.I_c, diagram.critical.P_c), "critical point"),
    ):
        x, y = tf(I, P)
        out.append(f'<circle id="{node_id}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="#000000"/>')
        out.append(
            f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-family="sans-serif" font-size="11">{text}</text>'
        )

    centroids = _region_centroids(diagram, I_lo, I_hi, P_lo, P_hi)
    for phase in (Phase.INFLATION, Phase.LIQUIDITY, Phase.INCOME):
        if phase not in centroids:
            continue
        x, y = tf(*centroids[phase])
        out.append(
            f'<text class="region" x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="14" text-anchor="middle">{escape(phase_name(phase))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
