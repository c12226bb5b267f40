"""SVG knot diagrams in the disk model of RP^2.

A projected point ``(y0 : y1 : y2)`` is scaled to the unit sphere, moved to
the hemisphere ``y0 >= 0`` and dropped to ``(y1, y2)``. The boundary circle
is the line at infinity; a strand leaving the disk re-enters at the
antipodal point, and both ends carry matching boundary markers.

The real locus is sampled in two charts, ``(x : 1)`` and ``(1 : x)`` with
``|x| <= 1``, so that the tiny parameter regions produced by gluing are
still resolved. Under-strands are cut around every real crossing.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

import mpmath
import numpy as np

from ..algebra.pgl import random_pgl
from ..algebra.roots import ComplexParam, complex_roots
from ..config import DEFAULT, Tolerances
from ..curve import Kind, RatCurve, is_knot, working_dps
from ..writhe import FAMILIES, Crossing, GenericityError, WritheReport, encomplexed_writhe, projection_with, secant_transform, wall_writhe
from .io import write_atomic

CHORD_ERROR = 1 / 500  # of the disk radius
MAX_STEP = 0.01
MAX_DEPTH = 48
GAP = 0.03
SEARCH = 4  # seeds per projection family tried by the minimal-crossing search
SIZE = 520
RADIUS = 240


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class SceneStats:
    real_crossings: int
    solitary_dots: int
    imaginary_pairs: int
    gapped_crossings: int
    singular_nodes: int
    arcs: int
    boundary_pairs: int
    seed: int
    writhe: int | None
    family: str = "ambient"

    def as_dict(self) -> dict:
        return dict(self.__dict__)


# -- parameters: (chart, x) with chart 0 = (x : 1), chart 1 = (1 : x) -------

def _to_chart(u: ComplexParam) -> tuple[int, float]:
    if u.infinite:
        return (1, 0.0)
    x = u.value.real
    return (0, x) if abs(x) <= 1 else (1, 1 / x)


def _loop_key(p: tuple[int, float]) -> float:
    """Position along the loop in the direction of increasing ``t/s``."""
    chart, x = p
    return x if chart == 0 else 2 - x  # chart 1 runs from x=1 down to x=-1


def _seeds() -> list[tuple[int, float]]:
    mags = 10.0 ** -np.arange(0, 30.01, 0.25)
    grid = sorted({0.0, *mags, *(-mags)})
    return [(0, x) for x in grid] + [(1, x) for x in grid]


class _Planar:
    """Projected forms evaluated in high precision; glued curves cancel badly in floats."""

    def __init__(self, forms):
        self.dps = working_dps(forms)
        with mpmath.workdps(self.dps):
            self.cs = [[mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)] for f in forms]

    def vec(self, p: tuple[int, float]) -> np.ndarray:
        chart, x = p
        with mpmath.workdps(self.dps):
            x = mpmath.mpf(x)
            if chart == 0:
                v = [mpmath.polyval(c, x) for c in self.cs]
            else:
                v = [mpmath.polyval(c[::-1], x) for c in self.cs]
            n = mpmath.sqrt(sum(c * c for c in v))
            if n == 0:
                return np.zeros(3)
            return np.array([float(c / n) for c in v])


def _mid(a: float, b: float) -> float:
    if a * b > 0 and max(abs(a), abs(b)) > 4 * min(abs(a), abs(b)):
        return math.copysign(math.sqrt(abs(a) * abs(b)), a)
    return (a + b) / 2


def _refine(P: _Planar, a, b, va, vb, out: list, depth: int = 0) -> None:
    """Append samples strictly after ``a`` up to and including ``b``.

    Steps are measured on the sphere, where the lift is continuous; the disk
    image jumps to the antipode at the boundary.
    """
    if depth < MAX_DEPTH and a[0] == b[0]:
        m = (a[0], _mid(a[1], b[1]))
        if m[1] not in (a[1], b[1]):
            vm = _lift(P.vec(m), va)
            if np.linalg.norm(vb - va) > MAX_STEP or _chord_error(va, vb, vm) > CHORD_ERROR:
                _refine(P, a, m, va, vm, out, depth + 1)
                vb = _lift(vb, out[-1][1])
                _refine(P, m, b, out[-1][1], vb, out, depth + 1)
                return
    out.append((b, vb))


def _lift(v: np.ndarray, prev: np.ndarray) -> np.ndarray:
    """Choose the sign of ``v`` continuing ``prev`` on the sphere."""
    return v if np.dot(v, prev) >= 0 else -v


def _disk(v: np.ndarray) -> np.ndarray:
    return v[1:] if v[0] >= 0 else -v[1:]


def _chord_error(a, b, m) -> float:
    """Distance from ``m`` to the segment ``ab`` (any dimension)."""
    ab = b - a
    n = float(np.dot(ab, ab))
    if n == 0:
        return float(np.linalg.norm(m - a))
    lam = min(max(float(np.dot(m - a, ab)) / n, 0.0), 1.0)
    return float(np.linalg.norm(m - a - lam * ab))


@dataclass
class _Sample:
    key: float
    param: tuple[int, float]
    point: np.ndarray  # disk coordinates
    sphere: np.ndarray  # lifted unit vector, continuous along the loop
    hidden: bool = False
    on_boundary: bool = False  # a real root of x0: the side is undecided here


def _sample_loop(P: _Planar, breaks: list[tuple[int, float]], boundary=()) -> list[_Sample]:
    seeds = sorted(set(_seeds() + breaks), key=_loop_key)
    # drop chart-duplicate endpoints (x = +-1 in both charts)
    uniq = []
    for p in seeds:
        if uniq and abs(_loop_key(p) - _loop_key(uniq[-1])) < 1e-300:
            continue
        uniq.append(p)
    seeds = uniq
    v0 = P.vec(seeds[0])
    if v0[0] < 0:
        v0 = -v0
    raw = [(seeds[0], v0)]
    for a, b in zip(seeds, seeds[1:] + seeds[:1]):
        va = raw[-1][1]
        vb = _lift(P.vec(b), va)
        _refine(P, a, b, va, vb, raw)
    raw.pop()  # loop closed back onto the first seed
    boundary = set(boundary)
    return [_Sample(_loop_key(p), p, _disk(v), v, on_boundary=p in boundary) for p, v in raw]


def _polylines(samples: list[_Sample]) -> tuple[list[list[np.ndarray]], list[tuple[np.ndarray, np.ndarray]]]:
    """Split the loop at hidden samples and at passages through the line at infinity."""
    lines: list[list[np.ndarray]] = []
    pairs = []
    cur: list[np.ndarray] = []
    n = len(samples)
    start = next((i for i, s in enumerate(samples) if s.hidden), 0)
    open_start = not samples[start].hidden
    side = _side(samples[start].sphere, 1.0)
    last = samples[start].sphere
    for k in range(1, n + 1):
        s = samples[(start + k) % n]
        if s.hidden:
            if len(cur) > 1:
                lines.append(cur)
            cur = []
            v = _lift(s.sphere, last)
            new = side if s.on_boundary else _side(v, side)
            if new != side:
                w = _boundary_point(last, v)
                pairs.append((w, -w))
            side, last = new, v
            continue
        v = _lift(s.sphere, last)
        new = side if s.on_boundary else _side(v, side)
        if new != side:
            # passage through the line at infinity between last and s
            w = _boundary_point(last, v)
            exit_pt = w if not cur or np.dot(w, cur[-1]) >= 0 else -w
            if cur:
                cur.append(exit_pt)
                lines.append(cur)
            pairs.append((exit_pt, -exit_pt))
            cur = [-exit_pt]
            if not lines:
                open_start = False
        side, last = new, v
        cur.append(s.point)
    if open_start and lines:
        lines[0] = cur + lines[0]
    elif open_start:
        lines = [cur + cur[:1]]
    elif len(cur) > 1:
        lines.append(cur)
    return lines, pairs


def _boundary_point(pv: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Where the chord from ``pv`` to ``v`` meets ``y0 = 0``, as a unit disk vector."""
    lam = pv[0] / (pv[0] - v[0]) if pv[0] != v[0] else 0.5
    w = (pv + lam * (v - pv))[1:]
    return w / np.linalg.norm(w)


def _side(v: np.ndarray, previous: float) -> float:
    """Hemisphere of ``v``; on the boundary itself the previous side is kept."""
    return previous if abs(v[0]) < 1e-14 else float(np.sign(v[0]))


def _disk_side(b: np.ndarray, near: np.ndarray) -> np.ndarray:
    b = b / np.linalg.norm(b)
    return b if np.dot(b, near) >= 0 else -b


def _hide_under(samples: list[_Sample], P: _Planar, under: tuple[int, float], at: np.ndarray) -> bool:
    key = _loop_key(under)
    i = min(range(len(samples)), key=lambda j: abs(samples[j].key - key))
    n = len(samples)
    hit = False
    for step in (1, -1):
        j = i if step == 1 else (i - 1) % n
        for _ in range(n):
            if np.linalg.norm(samples[j].point - at) > GAP and np.linalg.norm(-samples[j].point - at) > GAP:
                break
            samples[j].hidden = True
            hit = True
            j = (j + step) % n
    return hit


# -- scene -------------------------------------------------------------------

def _xy(p: np.ndarray) -> tuple[float, float]:
    return SIZE / 2 + RADIUS * float(p[0]), SIZE / 2 - RADIUS * float(p[1])


def _real_breaks(forms) -> list[tuple[int, float]]:
    out = []
    if not forms[0].is_zero():
        for r in complex_roots(forms[0]):
            if r.is_real():
                out.append(_to_chart(r))
    return out


def minimal_crossing_report(C: RatCurve, seed: int = 0, tries: int = SEARCH, tol: Tolerances = DEFAULT) -> WritheReport:
    """Writhe report of the projection with the fewest real crossings among ``tries`` seeds per family.

    Ties go to the ambient family and then to the lower seed. Centres on a
    secant through a conjugate pair trade a real crossing for a solitary
    node, which random centres almost never do for glued curves.
    """
    best = None
    for family in FAMILIES:
        for k in range(tries):
            try:
                report = encomplexed_writhe(C, seed + k, tol, family)
            except GenericityError:
                # secant centres of a planar curve lie in its plane
                break
            if best is None or report.count(Kind.REAL_REAL) < best.count(Kind.REAL_REAL):
                best = report
    if best is None:
        raise GenericityError("no generic projection in any family")
    return best


def render_svg(
    C: RatCurve,
    seed: int = 0,
    output: str | None = None,
    tol: Tolerances = DEFAULT,
    allow_singular: bool = False,
    family: str = "ambient",
    search: int = 0,
) -> tuple[str, SceneStats]:
    """Draw the knot diagram of the projection that the writhe computation uses.

    With ``search > 0`` the projection comes from :func:`minimal_crossing_report`
    and ``family`` is ignored; the chosen seed and family are in the stats.
    Singular curves always use the ambient family.
    """
    verdict = is_knot(C, tol)
    singular = ()
    if verdict:
        report = minimal_crossing_report(C, seed, search, tol) if search > 0 else encomplexed_writhe(C, seed, tol, family)
        crossings = report.crossings
        used_seed, writhe, family = report.projection_seed, report.writhe, report.family
    elif allow_singular:
        wall = wall_writhe(C, seed, tol)
        crossings, singular = wall.crossings, wall.singular
        used_seed, writhe, family = wall.projection_seed, None, "ambient"
    else:
        raise RenderError("not a knot; pass allow_singular to draw curves on the discriminant")
    T = random_pgl(4, used_seed, orientation=1) if family == "ambient" else secant_transform(C, used_seed)
    pr = projection_with(C, T, used_seed)
    planar = list(pr.planar)
    P = _Planar(planar)

    real = [c for c in crossings if c.kind == Kind.REAL_REAL]
    solitary = [c for c in crossings if c.kind == Kind.SOLITARY]
    roots = _real_breaks(planar)
    breaks = list(roots)
    for c in real:
        breaks += [_to_chart(u) for u in c.base.params]
    for n in singular:
        if n.kind == Kind.REAL_REAL:
            breaks += [_to_chart(u) for u in n.params]
    samples = _sample_loop(P, breaks, roots)

    gaps = []
    for c in real:
        u, v = c.base.params
        under = v if c.over_param == u else u
        at = _disk(_sphere_point(P, _to_chart(under)))
        if _hide_under(samples, P, _to_chart(under), at):
            gaps.append((c, at))
    lines, pairs = _polylines(samples)

    svg = _build_svg(lines, pairs, gaps, solitary, singular, P, used_seed, writhe)
    stats = SceneStats(
        real_crossings=len(real),
        solitary_dots=len(solitary),
        imaginary_pairs=sum(1 for c in crossings if c.kind == Kind.IMAGINARY_PAIR),
        gapped_crossings=len(gaps),
        singular_nodes=len(singular),
        arcs=len(lines),
        boundary_pairs=len(pairs),
        seed=used_seed,
        writhe=writhe,
        family=family,
    )
    text = ET.tostring(svg, encoding="unicode", xml_declaration=False)
    text = '<?xml version="1.0" encoding="UTF-8"?>\n' + text + "\n"
    if output is not None:
        write_atomic(output, text)
    return text, stats


def _sphere_point(P: _Planar, p) -> np.ndarray:
    v = P.vec(p)
    return v if v[0] >= 0 else -v


def _build_svg(lines, pairs, gaps, solitary: list[Crossing], singular, P: _Planar, seed: int, writhe) -> ET.Element:
    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(SIZE),
            "height": str(SIZE),
            "viewBox": f"0 0 {SIZE} {SIZE}",
        },
    )
    title = ET.SubElement(svg, "title")
    title.text = f"knot diagram, projection seed {seed}" + (f", writhe {writhe}" if writhe is not None else "")
    ET.SubElement(
        svg,
        "circle",
        {"class": "disk", "cx": str(SIZE / 2), "cy": str(SIZE / 2), "r": str(RADIUS), "fill": "none", "stroke": "#999"},
    )
    g = ET.SubElement(svg, "g", {"class": "knot", "fill": "none", "stroke": "#000", "stroke-width": "2"})
    for line in lines:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(_xy, line))
        ET.SubElement(g, "polyline", {"class": "arc", "points": pts})
    marks = ET.SubElement(svg, "g", {"class": "boundary-marks", "fill": "#c00"})
    for k, (a, b) in enumerate(pairs):
        for p in (a, b):
            x, y = _xy(p)
            ET.SubElement(marks, "circle", {"class": "boundary-mark", "data-pair": str(k), "cx": f"{x:.2f}", "cy": f"{y:.2f}", "r": "3"})
    cg = ET.SubElement(svg, "g", {"class": "crossings"})
    for c, at in gaps:
        x, y = _xy(at)
        ET.SubElement(
            cg,
            "circle",
            {"class": "gap", "data-sign": f"{c.sign:+d}", "cx": f"{x:.2f}", "cy": f"{y:.2f}", "r": f"{GAP * RADIUS:.2f}",
             "fill": "none", "stroke": "none"},
        )
    for c in solitary:
        at = _image_disk(c.base.image)
        x, y = _xy(at)
        colour = "#06c" if c.sign > 0 else "#c60"
        ET.SubElement(
            cg, "circle", {"class": "solitary", "data-sign": f"{c.sign:+d}", "cx": f"{x:.2f}", "cy": f"{y:.2f}", "r": "4", "fill": colour}
        )
    for n in singular:
        at = _image_disk(n.image)
        x, y = _xy(at)
        ET.SubElement(cg, "circle", {"class": "node", "cx": f"{x:.2f}", "cy": f"{y:.2f}", "r": "5", "fill": "none", "stroke": "#c00"})
    return svg


def _image_disk(image) -> np.ndarray:
    v = np.array([complex(x).real for x in image[:3]])
    v = v / np.linalg.norm(v)
    return _disk(v)
