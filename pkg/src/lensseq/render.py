"""SVG output for chain layouts.

One ``<circle>`` per lens circle and chain circle, lens circles first and the
chain in index order.  The lens centre is the origin and one SVG unit is one
unit of length (1/curvature).  The y-axis is flipped so that +y points up.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape, quoteattr

from .exactnum import QuadExt, as_rational, quad_to_float
from .geometry import ChainLayout, Circle


def _exact_scaled(v, scale: Fraction) -> float:
    if isinstance(v, QuadExt):
        return quad_to_float(v * scale)
    if isinstance(v, float):
        return v * float(scale)
    return float(as_rational(v) * scale)


def _fmt(v: float) -> str:
    s = format(v, ".12g")
    return "0" if s in ("-0", "0") else s


def _circle_element(c: Circle, scale: Fraction, cls: str, extra: str = "") -> tuple[str, tuple]:
    r = abs(_exact_scaled(c.radius, scale))
    cx = _exact_scaled(c.center_x, scale)
    cy = -_exact_scaled(c.center_y, scale)
    elem = f'<circle class="{cls}"{extra} cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}"/>'
    return elem, (cx - r, cy - r, cx + r, cy + r)


def layout_to_svg(layout: ChainLayout, scale=1, stroke_width: float | None = None, title: str | None = None) -> str:
    """Byte-deterministic SVG text for ``layout``."""
    # a float scale is taken at its exact binary value
    scale = Fraction(scale) if isinstance(scale, float) else as_rational(scale)
    elems, boxes = [], []
    for c in layout.lens:
        e, box = _circle_element(c, scale, "lens")
        elems.append(e)
        boxes.append(box)
    for i, c in enumerate(layout.chain):
        n = layout.origin_index + i
        extra = f' data-index="{n}" data-curvature={quoteattr(str(as_rational(c.curvature)))}'
        e, box = _circle_element(c, scale, "chain", extra)
        elems.append(e)
        boxes.append(box)
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    pad = 0.02 * max(x1 - x0, y1 - y0)
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    if stroke_width is None:
        stroke_width = 0.004 * max(x1 - x0, y1 - y0)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">',
    ]
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    lines.append(f'<g fill="none" stroke="black" stroke-width="{_fmt(stroke_width)}">')
    lines.extend(elems)
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
