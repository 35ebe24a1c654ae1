from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from lensseq.core import Seed, extend
from lensseq.geometry import chain_layout
from lensseq.render import layout_to_svg

NS = "{http://www.w3.org/2000/svg}"


def _circles(svg):
    root = ET.fromstring(svg.encode())
    return root, root.findall(f".//{NS}circle")


def test_vesica_svg_structure():
    lay = chain_layout(extend(Seed(3, 1, 3), 3, 3))
    root, circles = _circles(layout_to_svg(lay))
    assert [c.get("class") for c in circles] == ["lens", "lens"] + ["chain"] * 9
    # lens circles of radius R = 2, centred on the y-axis
    assert [float(c.get("r")) for c in circles[:2]] == [2.0, 2.0]
    assert {float(c.get("cx")) for c in circles[:2]} == {0.0}
    idx = [int(c.get("data-index")) for c in circles[2:]]
    assert idx == sorted(idx) == list(range(-4, 5))
    assert circles[2 + 4].get("data-curvature") == "1"
    assert root.find(f"{NS}g").get("fill") == "none"


def test_scale_is_exact():
    lay = chain_layout(extend(Seed(3, 1, 3), 2, 2))
    _, a = _circles(layout_to_svg(lay))
    _, b = _circles(layout_to_svg(lay, scale=100))
    for x, y in zip(a, b):
        for attr in ("cx", "cy", "r"):
            assert float(y.get(attr)) == pytest.approx(100 * float(x.get(attr)), rel=1e-12)
    _, c = _circles(layout_to_svg(lay, scale=F(1, 2)))
    assert float(c[0].get("r")) == 1.0


def test_deterministic_and_escaped():
    lay = chain_layout(extend(Seed(2, 1, 2), 2, 2))
    one = layout_to_svg(lay, title="a < b & c")
    assert one == layout_to_svg(lay, title="a < b & c")
    assert "a &lt; b &amp; c" in one
    assert one.endswith("</svg>\n")


def test_outer_chain_renders():
    lay = chain_layout(extend(Seed(4, -1, 4), 2, 2))
    _, circles = _circles(layout_to_svg(lay))
    assert all(float(c.get("r")) > 0 for c in circles)
