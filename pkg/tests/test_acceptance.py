"""The twelve acceptance checks, each recording one pass/fail line.

Run with ``pytest tests/test_acceptance.py`` (add ``-s`` to see the lines as
they happen; they are repeated in the terminal summary either way).
"""

import itertools
import random
import time
import xml.etree.ElementTree as ET

from conftest import cached_kdw
from realknot.algebra.pgl import pgl_apply, random_pgl
from realknot.algebra.poly import HomPoly
from realknot.classify import ClassificationError, class_counts, classify
from realknot.cli.parser import parse_curve
from realknot.cli.render import render_svg
from realknot.construct import catalog, perturb
from realknot.construct.glue import GlueSpec, glue, meeting_point
from realknot.construct.kdw import admissible_pairs, kdw
from realknot.curve import Kind, double_points, evaluate_quadric, is_knot, is_planar, quadric_containment
from realknot.oracle import oracle_double_points
from realknot.writhe import crossing_bound, encomplexed_writhe, project

import pytest

pytestmark = pytest.mark.acceptance


def _random_knots(count: int, seed: int):
    """kdw outputs of degree 3..6 under random orientation-preserving transforms."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        d = 3 + i % 4
        w = rng.choice([w for dd, w in admissible_pairs(6) if dd == d])
        out.append((d, w, pgl_apply(random_pgl(4, seed * 1000 + i, orientation=1), cached_kdw(d, w))))
    return out


def test_realization(record):
    pairs = admissible_pairs(6)
    bad, slowest = [], 0.0
    for d, w in pairs:
        t = time.perf_counter()
        C = kdw(d, w)
        elapsed = time.perf_counter() - t
        slowest = max(slowest, elapsed)
        if not (is_knot(C) and C.degree == d and encomplexed_writhe(C).writhe == w and elapsed < 5):
            bad.append((d, w, round(elapsed, 2)))
    # bound + 1 writhes per degree: 1+1+2+4+7+11
    expected = sum(crossing_bound(d) + 1 for d in range(1, 7))
    ok = len(pairs) == expected == 26 and not bad
    record(5, ok, f"{len(pairs)} admissible pairs, slowest build {slowest:.2f} s; failures {bad}")
    assert ok


def test_census(record):
    bad = []
    for d, w, C in _random_knots(20, 1):
        pr = project(C, 0)
        if len(pr.nodes) != crossing_bound(d):
            bad.append((d, w, len(pr.nodes)))
    record(1, not bad, f"20 transformed kdw knots, census == (d-1)(d-2)/2; mismatches {bad}")
    assert not bad


def test_bound_and_parity(record):
    bad = []
    for d, w in admissible_pairs(6):
        r = encomplexed_writhe(cached_kdw(d, w), 0)
        b = crossing_bound(d)
        if not (abs(r.writhe) <= b and (r.writhe - b) % 2 == 0 and r.parity_ok):
            bad.append((d, w, r.writhe))
    record(2, not bad, f"{len(admissible_pairs(6))} kdw writhes within bound with matching parity; violations {bad}")
    assert not bad


def test_projection_invariance(record):
    C = cached_kdw(5, 4)
    ws = [encomplexed_writhe(C, seed).writhe for seed in range(10)]
    ok = len(set(ws)) == 1
    record(3, ok, f"kdw(5,4) over seeds 0..9 -> {ws}")
    assert ok


def test_calibration(record):
    plus = parse_curve("x0: t^3\nx1: s*t^2\nx2: s^2*t\nx3: s^3\n")
    minus = parse_curve("x0: t^3\nx1: s*t^2\nx2: s^2*t\nx3: -s^3\n")
    got = (encomplexed_writhe(plus).writhe, encomplexed_writhe(minus).writhe)
    record(4, got == (1, -1), f"twisted cubic and its mirror -> {got}")
    assert got == (1, -1)


def test_gluing(record):
    l1 = parse_curve("x0: s\nx1: t\nx2: 0\nx3: 0\n")
    l2 = parse_curve("x0: s\nx1: 0\nx2: t\nx3: 0\n")
    conic = glue(GlueSpec(l1, l2, meeting_point(l1, l2)))
    conic_ok = conic.degree == 2 and bool(is_knot(conic)) and is_planar(conic)[0] and encomplexed_writhe(conic).writhe == 0
    # a line leaving the conic's plane from one of its points
    p = [c(1, 1) for c in conic.coords]
    l3 = parse_curve("".join(f"x{k}: {p[k]}*s\n" for k in range(3)) + "x3: t\n")
    cubic = glue(GlueSpec(conic, l3, meeting_point(conic, l3)))
    w3 = encomplexed_writhe(cubic).writhe
    cubic_ok = cubic.degree == 3 and bool(is_knot(cubic)) and w3 in (-1, 1)
    ok = conic_ok and cubic_ok
    record(6, ok, f"line+line -> degree {conic.degree} planar w=0: {conic_ok}; conic+line -> degree {cubic.degree}, w={w3}")
    assert ok


def test_quadric_lemma(record):
    knots = [cached_kdw(d, w) for d, w in admissible_pairs(4)]
    knots += [C for d, _, C in _random_knots(8, 7) if d <= 4]
    knots += [catalog(n).curve for n in ("line", "circle", "deg3-plus", "deg3-minus")]
    bad = 0
    for C in knots:
        q = quadric_containment(C)
        if q is None or not any(q) or not evaluate_quadric(q, C.coords).is_zero():
            bad += 1
    record(7, bad == 0, f"{len(knots)} knots of degree <= 4 lie on an exact quadric; failures {bad}")
    assert bad == 0


def _resolutions(name: str) -> list[int]:
    entry = catalog(name)
    n = len(entry.nodes)
    return sorted(
        encomplexed_writhe(perturb(entry, list(range(n)), list(dirs))).writhe
        for dirs in itertools.product((1, -1), repeat=n)
    )


def test_wall_resolution(record):
    got = {name: _resolutions(name) for name in ("deg4-wall-P2", "deg4-solitary-wall", "deg5-edge-F")}
    want = {"deg4-wall-P2": [1, 3], "deg4-solitary-wall": [-1, 1], "deg5-edge-F": [-2, 0, 0, 2]}
    record(8, got == want, f"{got}")
    assert got == want


def test_mirror(record):
    bad = []
    for d, w, C in _random_knots(20, 3):
        a, b = encomplexed_writhe(C).writhe, encomplexed_writhe(C.mirror()).writhe
        if a != -b:
            bad.append((d, w, a, b))
    record(9, not bad, f"20 knots, w(mirror) == -w; failures {bad}")
    assert not bad


def test_classifier(record):
    counts = class_counts()
    round_trip = all(
        (k.degree, k.writhe) == (d, w) for d, w in admissible_pairs(5) for k in [classify(cached_kdw(d, w))]
    )
    try:
        classify(cached_kdw(6, 2))
        refused = False
    except ClassificationError:
        refused = True
    ok = [counts[d] for d in range(1, 6)] == [1, 1, 2, 4, 7] and round_trip and refused
    record(10, ok, f"counts {counts}, round trip {round_trip}, degree 6 refused {refused}")
    assert ok


def _oracle_curves(seed: int):
    """Five random space curves (knots) and five random planar curves placed in RP^3 (nodal)."""
    rng = random.Random(seed)
    out = []
    for i in range(10):
        d = rng.randint(3, 5)
        forms = [HomPoly.from_coeffs([rng.randint(-9, 9) for _ in range(d + 1)]) for _ in range(4)]
        if i % 2:
            forms = list(pgl_apply(random_pgl(4, i, orientation=1), forms[:3] + [HomPoly.zero(d)]))
        out.append(forms)
    return out


def _same_nodes(fast, slow, tol=1e-6) -> bool:
    if len(fast) != len(slow):
        return False
    for x in fast:
        a, b = x.params
        hits = [
            y for y in slow
            if y.kind == x.kind
            and ((a.distance(y.params[0]) < tol and b.distance(y.params[1]) < tol)
                 or (a.distance(y.params[1]) < tol and b.distance(y.params[0]) < tol))
        ]
        if len(hits) != 1:
            return False
    return True


def test_oracle_equivalence(record):
    results = []
    for forms in _oracle_curves(11):
        fast, slow = double_points(forms), oracle_double_points(forms)
        results.append((len(fast), len(slow), _same_nodes(fast, slow)))
    ok = all(r[2] for r in results)
    record(11, ok, f"(elimination, oracle, agree) per curve: {results}")
    assert ok


def test_renderer(record, tmp_path):
    C = cached_kdw(4, 3)
    out = tmp_path / "k43.svg"
    text, stats = render_svg(C, seed=0, output=str(out), search=4)
    root = ET.fromstring(out.read_bytes())
    report = encomplexed_writhe(C, stats.seed, family=stats.family)
    gaps = [e for e in root.iter("{http://www.w3.org/2000/svg}circle") if e.get("class") == "gap"]
    ok = (
        stats.gapped_crossings == 2
        and len(gaps) == 2
        and stats.real_crossings == report.count(Kind.REAL_REAL)
        and stats.solitary_dots == report.count(Kind.SOLITARY)
        and stats.writhe == report.writhe
        and root.tag == "{http://www.w3.org/2000/svg}svg"
        and out.read_text() == text
    )
    record(12, ok, f"{stats.gapped_crossings} gapped, {stats.real_crossings} real, {stats.solitary_dots} solitary "
                   f"({stats.family} seed {stats.seed}); report real {report.count(Kind.REAL_REAL)} solitary {report.count(Kind.SOLITARY)}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
