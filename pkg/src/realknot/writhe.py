"""Generic plane projections and the encomplexed writhe.

A projection applies an orientation-preserving transform of RP^3 and then
forgets the last coordinate, i.e. projects from the centre (0:0:0:1). In the
affine chart ``y0 = 1`` the centre is the vertical point at infinity, the
planar map is ``a = (y1/y0, y2/y0)`` and the height is ``h = y3/y0``.

Real crossing sign: ``det[a'(over), a'(under)]`` with tangents taken in the
direction of the parametrization. Solitary crossing sign:
``sign det[Re a'(t0), Im a'(t0)] * sign Im h(t0)`` for either preimage
``t0``; this is independent of the conjugate chosen, of reparametrization
and of the affine chart, and flips under mirroring. The two global signs
below were fixed once so that ``(t^3 : s t^2 : s^2 t : s^3)`` has writhe +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fractions import Fraction

import mpmath
import numpy as np

from .algebra.linalg import det
from .algebra.pgl import ProjTransform, apply_to_coords, random_pgl
from .algebra.poly import HomPoly, forms_gcd
from .config import DEFAULT, Tolerances
from .curve import DoublePoint, Kind, RatCurve, complex_value, double_points, immersion_defect
from .algebra.roots import ComplexParam

FAMILIES = ("ambient", "secant")

REAL_ORIENTATION = 1
SOLITARY_ORIENTATION = 1

GENERICITY_BUDGET = 64


class GenericityError(RuntimeError):
    """No generic projection found within the seed budget."""


def crossing_bound(d: int) -> int:
    return (d - 1) * (d - 2) // 2


@dataclass(frozen=True)
class Projection:
    source: RatCurve
    transform: ProjTransform
    planar: tuple[HomPoly, HomPoly, HomPoly]
    height: HomPoly
    seed: int
    nodes: tuple[DoublePoint, ...] | None = field(default=None, compare=False)
    family: str = "ambient"

    @property
    def coords(self) -> tuple[HomPoly, ...]:
        return (*self.planar, self.height)


@dataclass(frozen=True)
class Crossing:
    base: DoublePoint
    sign: int
    over_param: ComplexParam | None = None

    @property
    def kind(self) -> Kind:
        return self.base.kind


@dataclass(frozen=True)
class WritheReport:
    writhe: int
    crossings: tuple[Crossing, ...]
    projection_seed: int
    bound: int
    parity_ok: bool
    degree: int = 0
    family: str = "ambient"

    def count(self, kind: Kind) -> int:
        return sum(1 for c in self.crossings if c.kind == kind)

    @property
    def census(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class Genericity:
    ok: bool
    diagnosis: str = "generic"
    nodes: tuple[DoublePoint, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def projection_with(C: RatCurve, T: ProjTransform, seed: int = -1) -> Projection:
    Y = apply_to_coords(T, C.coords)
    return Projection(C, T, (Y[0], Y[1], Y[2]), Y[3], seed)


# -- local geometry at a parameter ------------------------------------------

def _local(coords, t, s, direction=None):
    """Planar point, planar derivative and height at a parameter (mpmath values)."""
    if direction is None:
        direction = (0, 1) if abs(t) > abs(s) else (1, 0)
    dt, ds = direction
    vals = [p(t, s) for p in coords]
    ders = [p.diff_t()(t, s) * dt + p.diff_s()(t, s) * ds for p in coords]
    y0, y1, y2, y3 = vals
    d0, d1, d2, _ = ders
    a = (y1 / y0, y2 / y0)
    da = ((d1 * y0 - y1 * d0) / y0**2, (d2 * y0 - y2 * d0) / y0**2)
    return a, da, y3 / y0, y0


def _real_hom(u: ComplexParam):
    if u.infinite:
        return mpmath.mpf(1), mpmath.mpf(0)
    return mpmath.mpf(u.value.real), mpmath.mpf(1)


def _height(pr: Projection, u: ComplexParam):
    t, s = _real_hom(u)
    return pr.height(t, s) / pr.planar[0](t, s)


def check_genericity(pr: Projection, tol: Tolerances = DEFAULT) -> Genericity:
    """Is the projection an immersion with only transversal, signable double points?"""
    d = pr.source.degree
    planar = list(pr.planar)
    if all(p.is_zero() for p in planar) or forms_gcd(planar).degree > 0:
        return Genericity(False, "centre on curve")
    if immersion_defect(planar).degree > 0:
        return Genericity(False, "cusp")
    nodes = tuple(double_points(planar, tol))
    for dp in nodes:
        if dp.tangential:
            return Genericity(False, "tangential double point")
    images = [dp.image for dp in nodes]
    for i in range(len(images)):
        for j in range(i):
            if max(abs(x - y) for x, y in zip(images[i], images[j])) < 1e-7:
                return Genericity(False, "triple point")
    with mpmath.workdps(30):
        for dp in nodes:
            if dp.kind == Kind.IMAGINARY_PAIR:
                continue
            if abs(dp.image[0]) < 1e-9:
                return Genericity(False, "crossing at infinity")
            if dp.kind == Kind.REAL_REAL:
                h1, h2 = (_height(pr, u) for u in dp.params)
                if abs(h1 - h2) <= tol.residual * max(1, abs(h1), abs(h2)):
                    return Genericity(False, "space double point")
            else:
                t, s = _complex_hom(dp.params[0])
                h = pr.height(t, s) / pr.planar[0](t, s)
                if abs(mpmath.im(h)) <= tol.residual * max(1, abs(h)):
                    return Genericity(False, "space double point")
    if len(nodes) != crossing_bound(d):
        return Genericity(False, "node count")
    return Genericity(True, "generic", nodes)


def _complex_hom(u: ComplexParam):
    if u.infinite:
        return mpmath.mpc(1), mpmath.mpc(0)
    return mpmath.mpc(u.value), mpmath.mpc(1)


def project(
    C: RatCurve,
    seed: int = 0,
    tol: Tolerances = DEFAULT,
    budget: int = GENERICITY_BUDGET,
    family: str = "ambient",
) -> Projection:
    """First generic projection of ``family`` found from ``seed`` onwards."""
    if family not in FAMILIES:
        raise ValueError(f"unknown projection family {family!r}")
    last = None
    for k in range(budget):
        T = random_pgl(4, seed + k, orientation=1) if family == "ambient" else secant_transform(C, seed + k)
        pr = projection_with(C, T, seed + k)
        g = check_genericity(pr, tol)
        if g:
            return Projection(pr.source, T, pr.planar, pr.height, seed + k, g.nodes, family)
        last = g.diagnosis
    raise GenericityError(f"no generic projection within {budget} seeds (last failure: {last})")


def secant_transform(C: RatCurve, seed: int) -> ProjTransform:
    """Transform whose centre is a real point on the line through ``C(z)`` and ``C(conj z)``.

    ``z`` is a random non-real parameter, so the projection has a solitary
    node at ``(z, conj z)`` whenever it is generic. The parameter scale is
    log-uniform because glued curves keep their geometry at tiny parameters.
    """
    rng = np.random.default_rng([seed, 7])
    while True:
        r = Fraction(10) ** int(rng.integers(-8, 3)) * Fraction(int(rng.integers(1, 10)))
        x, y = r * Fraction(int(rng.integers(-9, 10)), 9), r * Fraction(int(rng.integers(1, 10)), 9)
        vals = [complex_value(p, x, y) for p in C.coords]
        mu = Fraction(int(rng.integers(-20, 21)), 10)
        centre = [re + mu * im for re, im in vals]
        scale = max(abs(c) for c in centre)
        if scale == 0:
            continue
        # an exact point of the secant is not needed: a solitary node is stable
        centre = [Fraction(round(c / scale * 10**15), 10**15) for c in centre]
        j = max(range(4), key=lambda i: abs(centre[i]))
        rows = [[centre[j] if k == i else -centre[i] if k == j else 0 for k in range(4)] for i in range(4) if i != j]
        rows.append([1 if k == j else 0 for k in range(4)])
        # mix the image plane only, keeping the centre
        mix = [r[:3] for r in random_pgl(4, seed).matrix[:3]]
        if det(mix) == 0:
            mix = [[int(a == b) for b in range(3)] for a in range(3)]
        mixed = [[sum(mix[a][b] * rows[b][k] for b in range(3)) for k in range(4)] for a in range(3)] + [rows[3]]
        if det(mixed) < 0:
            mixed[0] = [-v for v in mixed[0]]
        return ProjTransform.from_rows(mixed)


# -- crossing signs ---------------------------------------------------------

def real_crossing_sign(pr: Projection, x: DoublePoint) -> tuple[int, ComplexParam]:
    if x.kind != Kind.REAL_REAL:
        raise ValueError("real_crossing_sign needs a real-real double point")
    with mpmath.workdps(30):
        data = []
        for u in x.params:
            t, s = _real_hom(u)
            # direction of increasing t/s
            _, da, h, _ = _local(pr.coords, t, s, (s, -t))
            data.append((h, da, u))
        (h1, d1, u1), (h2, d2, u2) = data
        if abs(h1 - h2) <= 1e-12 * max(1, abs(h1), abs(h2)):
            raise GenericityError("equal heights at a real crossing")
        if h1 < h2:
            (h1, d1, u1), (h2, d2, u2) = (h2, d2, u2), (h1, d1, u1)
        det = d1[0] * d2[1] - d1[1] * d2[0]
    return REAL_ORIENTATION * (1 if det > 0 else -1), u1


def solitary_raw(pr: Projection, x: DoublePoint) -> int:
    """``sign det[Re v, Im v] * sign Im h`` at the first preimage, before the global sign."""
    with mpmath.workdps(30):
        t, s = _complex_hom(x.params[0])
        _, (v1, v2), h, _ = _local(pr.coords, t, s)
        det = mpmath.re(v1) * mpmath.im(v2) - mpmath.re(v2) * mpmath.im(v1)
        ih = mpmath.im(h)
        if ih == 0 or det == 0:
            raise GenericityError("degenerate solitary crossing")
        return (1 if det > 0 else -1) * (1 if ih > 0 else -1)


def solitary_sign(pr: Projection, x: DoublePoint) -> int:
    if x.kind != Kind.SOLITARY:
        raise ValueError("solitary_sign needs a solitary double point")
    return SOLITARY_ORIENTATION * REAL_ORIENTATION * solitary_raw(pr, x)


def crossings_of(pr: Projection, nodes=None) -> list[Crossing]:
    nodes = pr.nodes if nodes is None else nodes
    out = []
    for dp in nodes:
        if dp.kind == Kind.REAL_REAL:
            sgn, over = real_crossing_sign(pr, dp)
            out.append(Crossing(dp, sgn, over))
        elif dp.kind == Kind.SOLITARY:
            out.append(Crossing(dp, solitary_sign(pr, dp)))
        else:
            out.append(Crossing(dp, 0))
    return out


def report_for(pr: Projection) -> WritheReport:
    crossings = crossings_of(pr)
    w = sum(c.sign for c in crossings)
    d = pr.source.degree
    bound = crossing_bound(d)
    ok = abs(w) <= bound and (w - bound) % 2 == 0
    return WritheReport(w, tuple(crossings), pr.seed, bound, ok, d, pr.family)


def encomplexed_writhe(C: RatCurve, seed: int = 0, tol: Tolerances = DEFAULT, family: str = "ambient") -> WritheReport:
    """Sum of real and solitary crossing signs of a generic projection."""
    pr = project(C, seed, tol, family=family)
    if C.degree <= 2:
        # lines and conics project without crossings
        return WritheReport(0, (), pr.seed, 0, True, C.degree, family)
    return report_for(pr)


@dataclass(frozen=True)
class WallReport:
    """Partial writhe of a curve on the discriminant: signs of the regular crossings only."""

    partial_writhe: int
    crossings: tuple[Crossing, ...]
    singular: tuple[DoublePoint, ...]
    projection_seed: int


def wall_writhe(C: RatCurve, seed: int = 0, tol: Tolerances = DEFAULT, budget: int = GENERICITY_BUDGET) -> WallReport:
    """Sign the crossings of a projection of a singular curve, skipping its own nodes."""
    space_nodes = double_points(C.coords, tol)
    for k in range(budget):
        T = random_pgl(4, seed + k, orientation=1)
        pr = projection_with(C, T, seed + k)
        planar = list(pr.planar)
        if forms_gcd(planar).degree > 0 or immersion_defect(planar).degree > 0:
            continue
        nodes = double_points(planar, tol)
        if any(n.tangential for n in nodes):
            continue
        regular, singular = [], []
        for n in nodes:
            if _is_space_node(n, space_nodes, tol):
                singular.append(n)
            else:
                regular.append(n)
        try:
            crossings = crossings_of(pr, regular)
        except GenericityError:
            continue
        return WallReport(sum(c.sign for c in crossings), tuple(crossings), tuple(singular), seed + k)
    raise GenericityError("no usable projection of the singular curve")


def _is_space_node(n: DoublePoint, space_nodes, tol: Tolerances) -> bool:
    for sn in space_nodes:
        a, b = sn.params
        u, v = n.params
        if (a.distance(u) < 1e-6 and b.distance(v) < 1e-6) or (a.distance(v) < 1e-6 and b.distance(u) < 1e-6):
            return True
    return False
