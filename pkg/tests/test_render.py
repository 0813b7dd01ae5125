import re
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from apollonian.ford import farey_sequence, ford_circle
from apollonian.gasket import enumerate_gasket
from apollonian.geometry import Circle, X_AXIS
from apollonian.numerics import GaussianRational as G
from apollonian.render import RenderSpec, count_elements, render_svg

NS = "{http://www.w3.org/2000/svg}"


def test_one_element_per_circle_and_valid_xml():
    g = enumerate_gasket((-1, 2, 2, 3), 60)
    svg = render_svg(g.records)
    root = ET.fromstring(svg)
    assert len(root.findall(f"{NS}circle")) == len(g) == count_elements(svg)


def test_output_is_byte_stable():
    g = enumerate_gasket((-2, 3, 6, 7), 80)
    spec = RenderSpec(size=400, color="residue")
    assert render_svg(g.records, spec) == render_svg(g.records, spec)
    assert render_svg(g.records, spec) == render_svg(enumerate_gasket((-2, 3, 6, 7), 80, order="dfs").records, spec)


def test_enclosing_circle_fills_canvas():
    g = enumerate_gasket((-1, 2, 2, 3), 10)
    root = ET.fromstring(render_svg(g.records, RenderSpec(size=500)))
    radii = sorted(float(c.get("r")) for c in root.findall(f"{NS}circle"))
    # the outer circle is the largest and fits inside the canvas
    assert radii[-1] <= 250 and radii[-1] > 200


def test_min_radius_cutoff():
    g = enumerate_gasket((-1, 2, 2, 3), 60)
    svg = render_svg(g.records, RenderSpec(min_radius=0.1))
    expected = sum(1 for r in g.records if 1 / abs(r.curvature) >= 0.1)
    assert count_elements(svg) == expected < len(g)


def test_lines_are_drawn():
    circles = [ford_circle(f).circle for f in farey_sequence(5)] + [X_AXIS]
    svg = render_svg(circles, RenderSpec(center=(0.5, 0.25), half_width=0.55))
    assert svg.count("<line ") == 1
    assert count_elements(svg) == len(circles)


def test_y_axis_is_flipped():
    svg = render_svg([Circle(G(0, 1), 1), Circle(G(0, -1), 1)], RenderSpec(size=100, center=(0, 0), half_width=2))
    ys = [float(y) for y in re.findall(r'cy="([-\d.]+)"', svg)]
    assert ys[0] < ys[1]


def test_bad_spec():
    with pytest.raises(ValueError):
        RenderSpec(color="rainbow")
    with pytest.raises(ValueError):
        RenderSpec(size=0)


def test_title_is_escaped():
    svg = render_svg([Circle(G(0), Fraction(1))], RenderSpec(title="a<b"))
    assert "<title>a&lt;b</title>" in svg


def test_empty_input_and_total_cutoff():
    empty = ET.fromstring(render_svg([]))
    assert empty.findall(f"{NS}circle") == []
    g = enumerate_gasket((-1, 2, 2, 3), 20)
    svg = render_svg(g.records, RenderSpec(min_radius=5))
    assert count_elements(svg) == 0
    ET.fromstring(svg)
