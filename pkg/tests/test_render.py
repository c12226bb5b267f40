import math
import xml.etree.ElementTree as ET

import pytest

from conftest import cached_kdw, form
from realknot.cli.render import RADIUS, SIZE, RenderError, render_svg
from realknot.construct import catalog
from realknot.curve import Kind, RatCurve
from realknot.writhe import encomplexed_writhe

NS = {"s": "http://www.w3.org/2000/svg"}
C0 = SIZE / 2
TWISTED = RatCurve(tuple(form(x) for x in ("t^3", "s*t^2", "s^2*t", "s^3")))


def parse(text):
    root = ET.fromstring(text.split("\n", 1)[1])
    by_class = {}
    for el in root.iter():
        by_class.setdefault(el.get("class"), []).append(el)
    return by_class


def points(poly):
    return [tuple(map(float, p.split(","))) for p in poly.get("points").split()]


@pytest.fixture(scope="module")
def k56():
    C = cached_kdw(5, 6)
    text, stats = render_svg(C, seed=0)
    return C, parse(text), stats


def test_arcs_stay_in_the_disk(k56):
    _, els, _ = k56
    for poly in els["arc"]:
        for x, y in points(poly):
            assert math.hypot(x - C0, y - C0) <= RADIUS + 0.01


def test_boundary_marks_are_antipodal(k56):
    _, els, stats = k56
    pairs = {}
    for m in els.get("boundary-mark", []):
        pairs.setdefault(m.get("data-pair"), []).append((float(m.get("cx")), float(m.get("cy"))))
    assert len(pairs) == stats.boundary_pairs
    for (ax, ay), (bx, by) in pairs.values():
        assert abs(ax + bx - 2 * C0) < 0.05 and abs(ay + by - 2 * C0) < 0.05
        assert math.hypot(ax - C0, ay - C0) == pytest.approx(RADIUS, abs=0.05)


def test_one_gap_per_real_crossing(k56):
    _, els, stats = k56
    assert len(els.get("gap", [])) == stats.gapped_crossings == stats.real_crossings


def test_scene_matches_writhe_report(k56):
    C, els, stats = k56
    r = encomplexed_writhe(C, 0)
    assert stats.writhe == r.writhe == 6
    assert (stats.real_crossings, stats.solitary_dots) == (r.count(Kind.REAL_REAL), r.count(Kind.SOLITARY))
    assert stats.imaginary_pairs == r.count(Kind.IMAGINARY_PAIR)
    signs = [int(e.get("data-sign")) for e in els.get("gap", []) + els.get("solitary", [])]
    assert sum(signs) == 6


def test_circle_has_no_crossings():
    _, stats = render_svg(catalog("circle").curve)
    assert stats.real_crossings == stats.solitary_dots == stats.gapped_crossings == 0
    assert stats.arcs >= 1


def test_twisted_cubic_has_one_mark():
    text, stats = render_svg(TWISTED)
    els = parse(text)
    assert stats.real_crossings + stats.solitary_dots == 1
    assert len(els.get("gap", [])) + len(els.get("solitary", [])) == 1


def test_search_never_adds_real_crossings():
    C = cached_kdw(4, 1)
    _, plain = render_svg(C, seed=0)
    _, searched = render_svg(C, seed=0, search=4)
    assert searched.real_crossings <= plain.real_crossings
    assert searched.writhe == plain.writhe == 1


def test_wall_needs_allow_singular(tmp_path):
    C = catalog("deg4-wall-P2").curve
    with pytest.raises(RenderError):
        render_svg(C)
    out = tmp_path / "wall.svg"
    text, stats = render_svg(C, output=str(out), allow_singular=True)
    assert out.read_text() == text
    assert stats.singular_nodes == 1 and stats.writhe is None
    assert len(parse(text)["node"]) == 1
