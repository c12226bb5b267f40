"""Analysis of rational parametrizations CP^1 -> CP^3.

Self-intersections are found by exact elimination in the symmetric
coordinates ``a = u + v``, ``b = u v`` (see :mod:`realknot.algebra.bivariate`):
two random combinations of the reduced minors are eliminated against a third,
the gcd of the two resultants carries exactly the ``a``-values of genuine
solutions, and only the final root extraction is numeric.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .algebra import bivariate as bv
from .algebra.linalg import nullspace, rank
from .algebra.pgl import ProjTransform, reparametrize
from .algebra.poly import HomPoly, forms_gcd, squarefree_decomposition, udivmod, uderiv, ugcd
from .algebra.roots import WORK_DPS, ComplexParam, RootFindingError, complex_roots, real_root_count, roots_squarefree
from .config import DEFAULT, Tolerances


class DegenerateCurveError(ValueError):
    """The pair locus is positive dimensional (multiply covered or collapsed image)."""


class Kind(str, enum.Enum):
    REAL_REAL = "real"
    SOLITARY = "solitary"
    IMAGINARY_PAIR = "imaginary"


@dataclass(frozen=True)
class RatCurve:
    """Four forms of a common degree without a common factor."""

    coords: tuple[HomPoly, ...]

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("a space curve has exactly four coordinates")
        check_coords(self.coords)

    @property
    def degree(self) -> int:
        return self.coords[0].degree

    def __call__(self, t, s=1):
        return [p(t, s) for p in self.coords]

    def mirror(self) -> "RatCurve":
        x0, x1, x2, x3 = self.coords
        return RatCurve((x0, x1, x2, -x3))

    def __str__(self) -> str:
        return "(" + " : ".join(str(p) for p in self.coords) + ")"


def check_coords(coords: Sequence[HomPoly]) -> None:
    degs = {p.degree for p in coords}
    if len(degs) != 1:
        raise ValueError(f"coordinates have different degrees {sorted(degs)}")
    if all(p.is_zero() for p in coords):
        raise ValueError("all coordinates are zero")
    g = forms_gcd(coords)
    if g.degree > 0:
        raise ValueError(f"coordinates share the factor {g}; use primitivize()")


def primitivize(raw: Sequence[HomPoly]) -> RatCurve:
    """Divide out the common factor of four forms."""
    raw = list(raw)
    if len(raw) != 4:
        raise ValueError("expected four coordinates")
    if all(p.is_zero() for p in raw):
        raise ValueError("all coordinates are zero")
    g = forms_gcd(raw)
    if g.degree == 0:
        return RatCurve(tuple(raw))
    return RatCurve(tuple(p.exact_div(g) for p in raw))


@dataclass(frozen=True)
class DoublePoint:
    params: tuple[ComplexParam, ComplexParam]
    kind: Kind
    image: tuple[complex, ...]
    tangential: bool = False

    @property
    def real_image(self) -> tuple[float, ...]:
        return tuple(complex(x).real for x in self.image)

    def conjugate(self) -> "DoublePoint":
        u, v = self.params
        return DoublePoint((u.conjugate(), v.conjugate()), self.kind, tuple(complex(x).conjugate() for x in self.image), self.tangential)


@dataclass(frozen=True)
class KnotVerdict:
    is_knot: bool
    double_point: DoublePoint | None = None
    cusp: ComplexParam | None = None

    @property
    def failure_witness(self):
        return self.double_point if self.double_point is not None else self.cusp

    def __bool__(self) -> bool:
        return self.is_knot


# -- evaluation helpers -------------------------------------------------

def _mp_hom(u: ComplexParam):
    if u.infinite:
        return mpmath.mpc(1), mpmath.mpc(0)
    return mpmath.mpc(u.value), mpmath.mpc(1)


def normalize_point(vec) -> tuple[complex, ...]:
    """Scale a homogeneous vector so its largest entry is 1."""
    vec = [complex(x) for x in vec]
    k = max(range(len(vec)), key=lambda i: abs(vec[i]))
    return tuple(_clean(x / vec[k]) for x in vec)


def tangent_vector(coords: Sequence[HomPoly], t, s, direction=None):
    """Derivative of the homogeneous map along ``direction`` in parameter space.

    Defaults to a direction transverse to ``(t, s)``.
    """
    if direction is None:
        direction = (0, 1) if abs(t) > abs(s) else (1, 0)
    dt, ds = direction
    return [p.diff_t()(t, s) * dt + p.diff_s()(t, s) * ds for p in coords]


def _tangential(coords, u: ComplexParam, v: ComplexParam, tol: float) -> bool:
    tu, su = u.homogeneous()
    tv, sv = v.homogeneous()
    pu = np.array([complex(x) for x in (p(tu, su) for p in coords)])
    du = np.array([complex(x) for x in tangent_vector(coords, tu, su)])
    dv = np.array([complex(x) for x in tangent_vector(coords, tv, sv)])
    rows = [r / np.linalg.norm(r) for r in (pu, du, dv) if np.linalg.norm(r) > 0]
    if len(rows) < 3:
        return True
    sv_ = np.linalg.svd(np.array(rows), compute_uv=False)
    return bool(sv_[-1] / sv_[0] < tol)


# -- double points ------------------------------------------------------

def _random_moebius(rng) -> tuple[int, int, int, int]:
    while True:
        a, b, c, d = (int(x) for x in rng.integers(-9, 10, size=4))
        if a * d - b * c != 0 and c != 0:
            return a, b, c, d


def preimage_count(coords: Sequence[HomPoly], point: Sequence) -> int:
    """Number of parameters (with multiplicity) mapped to an exact point."""
    point = [Fraction(x) for x in point]
    k = next((i for i, x in enumerate(point) if x), None)
    if k is None:
        raise ValueError("zero vector is not a point")
    forms = [p * point[k] - coords[k] * point[i] for i, p in enumerate(coords) if i != k]
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return coords[k].degree
    return forms_gcd(forms).degree


def chart_infinity_simple(coords: Sequence[HomPoly], M) -> bool:
    """The parameter sent to infinity by ``M`` is not on a double point or cusp."""
    a, _, c, _ = M
    point = [p(Fraction(a), Fraction(c)) for p in coords]
    return preimage_count(coords, point) == 1


def double_points(coords, tol: Tolerances = DEFAULT, seed: int = 0) -> list[DoublePoint]:
    """All unordered parameter pairs with proportional images.

    ``coords`` may be a :class:`RatCurve` or any list of at least three
    primitive forms (e.g. a projected plane curve).
    """
    if isinstance(coords, RatCurve):
        coords = coords.coords
    coords = list(coords)
    if len(coords) < 3:
        raise ValueError("need at least three coordinates")
    check_coords(coords)
    if coords[0].degree <= 1:
        return []
    rng = np.random.default_rng([seed, 104729])
    last: Exception | None = None
    for _ in range(8):
        M = _chart(coords, rng)
        try:
            return _double_points_chart(coords, M, tol, rng)
        except RootFindingError as exc:
            last = exc
    raise RootFindingError("double point extraction failed after re-randomization") from last


CHART_TRIES = 64


def _chart(coords, rng):
    """A Moebius chart whose point at infinity has a single preimage."""
    for _ in range(CHART_TRIES):
        M = _random_moebius(rng)
        if chart_infinity_simple(coords, M):
            return M
    # every image point tried has several preimages
    raise DegenerateCurveError("parametrization is multiply covered")


def _weights(rng, n: int) -> list[int]:
    while True:
        w = [int(x) for x in rng.integers(-999, 1000, size=n)]
        if any(w):
            return w


def _double_points_chart(coords, M, tol: Tolerances, rng) -> list[DoublePoint]:
    a_, b_, c_, d_ = M
    Q = reparametrize(coords, *M)
    d = Q[0].degree
    hs = bv.complete_symmetric(d + 1)
    minors = []
    for i in range(len(Q)):
        for j in range(i + 1, len(Q)):
            m = bv.reduced_minor(Q[i].coeffs, Q[j].coeffs, hs)
            if m:
                minors.append(m)
    if len(minors) < 2:
        raise DegenerateCurveError("coordinates are proportional; image is a point or a multiply covered line")

    R1 = R2 = None
    A = B = C = None
    for _ in range(2):
        A = bv.combine(minors, _weights(rng, len(minors)))
        B = bv.combine(minors, _weights(rng, len(minors)))
        C = bv.combine(minors, _weights(rng, len(minors)))
        R1 = bv.resultant_b(A, B)
        R2 = bv.resultant_b(A, C)
        if R1 and R2:
            break
    if not R1 or not R2:
        raise DegenerateCurveError("positive dimensional self-intersection locus")
    G = ugcd(R1, R2)
    if len(G) <= 1:
        return []
    g2 = ugcd(G, uderiv(G))
    Gsf, _ = udivmod(G, g2) if len(g2) > 1 else (G, [])

    results: list[tuple] = []
    dps = working_dps(Q)
    with mpmath.workdps(dps):
        a_roots = roots_squarefree(Gsf, dps=dps)
        for a in a_roots:
            for b in _b_candidates(A, B, C, a):
                if _pair_gap(Q, a, b) > PRESCREEN:
                    continue
                b = _polish_ab(minors, A, B, a, b)
                if b is None:
                    continue
                a_val, b_val = b
                if _residual(minors, a_val, b_val) > tol.residual:
                    continue
                if _pair_gap(Q, a_val, b_val) > tol.residual:
                    continue  # the chart residual can hide a genuine mismatch
                if any(abs(a_val - x) + abs(b_val - y) < tol.distinct for x, y in results):
                    continue
                results.append((a_val, b_val))

        out: list[DoublePoint] = []
        for a, b in results:
            disc = a * a - 4 * b
            sq = mpmath.sqrt(disc)
            u = (a + sq) / 2
            v = (a - sq) / 2
            is_real = mpmath.im(a) == 0 and mpmath.im(b) == 0
            if is_real:
                kind = Kind.REAL_REAL if mpmath.re(disc) > 0 else Kind.SOLITARY
            else:
                kind = Kind.IMAGINARY_PAIR
            pu = _map_param(M, u, kind == Kind.REAL_REAL)
            pv = _map_param(M, v, kind == Kind.REAL_REAL)
            if kind == Kind.SOLITARY:
                pv = pu.conjugate()
            if pu.distance(pv) < tol.distinct:
                continue  # diagonal solution: a cusp, not a double point
            image = _image(coords, pu)
            if kind != Kind.IMAGINARY_PAIR:
                image = tuple(complex(x.real, 0) for x in image)
            tang = _tangential(coords, pu, pv, tol.tangency)
            out.append(DoublePoint(_order(pu, pv), kind, image, tang))
    return sorted(out, key=_dp_key)


PRESCREEN = 1e-6  # image gap a root candidate must reach before polishing


def working_dps(forms) -> int:
    """Decimal precision for numeric work on ``forms``: a base plus their coefficient size."""
    digits = max((len(str(abs(c.numerator))) + len(str(c.denominator)) for f in forms for c in f.coeffs if c), default=1)
    return WORK_DPS + digits


def _pair_gap(Q, a, b):
    sq = mpmath.sqrt(a * a - 4 * b)
    return _image_gap(Q, (a + sq) / 2, (a - sq) / 2)


def _image_gap(Q, u, v):
    """Largest 2x2 minor of the unit-normalized images of ``u`` and ``v``."""
    x = [q(u, 1) for q in Q]
    y = [q(v, 1) for q in Q]
    nx, ny = max(abs(c) for c in x), max(abs(c) for c in y)
    if nx == 0 or ny == 0:
        return mpmath.inf
    x = [c / nx for c in x]
    y = [c / ny for c in y]
    return max(abs(x[i] * y[j] - x[j] * y[i]) for i in range(len(x)) for j in range(i + 1, len(x)))


def _order(u: ComplexParam, v: ComplexParam) -> tuple[ComplexParam, ComplexParam]:
    def key(p):
        return (p.infinite, p.value.real, p.value.imag)

    return (u, v) if key(u) <= key(v) else (v, u)


def _dp_key(dp: DoublePoint):
    u = dp.params[0]
    return (list(Kind).index(dp.kind), u.infinite, round(u.value.real, 9), round(u.value.imag, 9))


def _map_param(M, u, real: bool) -> ComplexParam:
    a, b, c, d = M
    t = a * u + b
    s = c * u + d
    if real:
        t, s = mpmath.re(t), mpmath.re(s)
    if abs(s) <= mpmath.mpf(10) ** (-30) * max(1, abs(t)):
        return ComplexParam.at_infinity()
    z = complex(t / s)
    if real:
        z = complex(z.real, 0.0)
    return ComplexParam(_clean(z))


def _clean(z: complex) -> complex:
    scale = max(1.0, abs(z))
    re_, im_ = z.real, z.imag
    if abs(re_) < 1e-30 * scale:
        re_ = 0.0
    if abs(im_) < 1e-30 * scale:
        im_ = 0.0
    return complex(re_, im_)


def _image(coords, u: ComplexParam) -> tuple[complex, ...]:
    t, s = _mp_hom(u)
    if not u.infinite:
        t = mpmath.mpc(u.value)
    return normalize_point([p(t, s) for p in coords])


def _b_candidates(A, B, C, a) -> list:
    best = max((A, B, C), key=bv.degree_b)
    cs = bv.coeffs_in_b(best, a)
    while len(cs) > 1 and abs(cs[-1]) <= mpmath.mpf(10) ** (-mpmath.mp.dps + 10) * max(abs(c) for c in cs):
        cs.pop()
    if len(cs) <= 1:
        return []
    try:
        roots = mpmath.polyroots(list(reversed(cs)), maxsteps=300, extraprec=200)
    except mpmath.libmp.NoConvergence:
        roots = mpmath.polyroots(list(reversed(cs)), maxsteps=2000, extraprec=600, error=False)
    if not isinstance(roots, list):
        roots = list(roots)
    return roots


def _polish_ab(minors, A, B, a, b, steps: int = 40):
    """Gauss-Newton on all minors; returns ``(a, b)`` or None when the start is too far off."""
    if mpmath.im(a) == 0 and abs(mpmath.im(b)) <= mpmath.mpf(10) ** -15 * max(1, abs(b)):
        b = mpmath.mpc(mpmath.re(b))
    if _residual(minors, a, b) > 1e-4:
        return None
    terms = [list(m.items()) for m in minors]
    da = max((i for m in minors for i, _ in m), default=0)
    db = max((j for m in minors for _, j in m), default=0)
    floor = mpmath.mpf(10) ** (-mpmath.mp.dps + 8)
    prev = None
    for _ in range(steps):
        pa = [mpmath.mpf(1)] + [a] * da
        for k in range(2, da + 1):
            pa[k] = pa[k - 1] * a
        pb = [mpmath.mpf(1)] + [b] * db
        for k in range(2, db + 1):
            pb[k] = pb[k - 1] * b
        F, J = [], []
        for tm in terms:
            f = ga = gb = 0
            for (i, j), c in tm:
                f += c * pa[i] * pb[j]
                if i:
                    ga += i * c * pa[i - 1] * pb[j]
                if j:
                    gb += j * c * pa[i] * pb[j - 1]
            F.append(f)
            J.append([ga, gb])
        F, J = mpmath.matrix(F), mpmath.matrix(J)
        JH = J.H
        try:
            step = mpmath.lu_solve(JH * J, JH * F)
        except ZeroDivisionError:
            break
        a, b = a - step[0], b - step[1]
        size = abs(step[0]) + abs(step[1])
        if size <= floor * (1 + abs(a) + abs(b)):
            break
        if prev is not None and size > prev / 4:
            break  # no longer contracting: at the noise floor
        prev = size
    return a, b


def _residual(minors, a, b) -> float:
    worst = 0.0
    for m in minors:
        mag = bv.magnitude(m, a, b)
        if mag == 0:
            continue
        worst = max(worst, float(abs(bv.evaluate(m, a, b)) / mag))
    return worst


# -- embedding tests ----------------------------------------------------

def immersion_defect(coords: Sequence[HomPoly]) -> HomPoly:
    """gcd of the 2x2 minors of ``[P_t; P_s]``; its roots are the cusps."""
    pt = [p.diff_t() for p in coords]
    ps = [p.diff_s() for p in coords]
    minors = []
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            minors.append(pt[i] * ps[j] - pt[j] * ps[i])
    if all(m.is_zero() for m in minors):
        raise DegenerateCurveError("parametrization is constant")
    return forms_gcd(minors)


def is_knot(C: RatCurve, tol: Tolerances = DEFAULT, seed: int = 0) -> KnotVerdict:
    defect = immersion_defect(C.coords)
    if defect.degree > 0:
        cusp = complex_roots(defect, tol.root)[0]
        return KnotVerdict(False, cusp=cusp)
    dps = double_points(C.coords, tol, seed)
    if dps:
        return KnotVerdict(False, double_point=dps[0])
    return KnotVerdict(True)


def coefficient_matrix(C: RatCurve) -> list[list[Fraction]]:
    return [list(p.coeffs) for p in C.coords]


def is_planar(C: RatCurve) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Linear dependence of the coordinates; returns the plane covector when planar."""
    rows = coefficient_matrix(C)
    transposed = [list(col) for col in zip(*rows)]
    ker = nullspace(transposed)
    if not ker:
        return False, None
    return True, tuple(ker[0])


QUADRIC_MONOMIALS = [(i, j) for i in range(4) for j in range(i, 4)]


def quadric_space(C: RatCurve) -> list[tuple[Fraction, ...]]:
    """Basis of quadrics (coefficients on ``QUADRIC_MONOMIALS``) vanishing on the curve."""
    prods = [C.coords[i] * C.coords[j] for i, j in QUADRIC_MONOMIALS]
    matrix = [[p.coeffs[k] for p in prods] for k in range(2 * C.degree + 1)]
    return [tuple(v) for v in nullspace(matrix)]


def quadric_containment(C: RatCurve) -> tuple[Fraction, ...] | None:
    basis = quadric_space(C)
    return basis[0] if basis else None


def evaluate_quadric(q: Sequence[Fraction], coords: Sequence[HomPoly]) -> HomPoly:
    """Symbolic substitution ``Q(P(t, s))``."""
    d = coords[0].degree
    acc = HomPoly.zero(2 * d)
    for c, (i, j) in zip(q, QUADRIC_MONOMIALS):
        if c:
            acc = acc + (coords[i] * coords[j]).scale(c)
    return acc


@dataclass(frozen=True)
class InfinityReport:
    points: tuple[ComplexParam, ...]
    real_count: int
    transversal: tuple[bool, ...] = field(default=())


def infinity_points(C: RatCurve, tol: Tolerances = DEFAULT) -> InfinityReport:
    """Intersections with the plane ``x0 = 0``."""
    x0 = C.coords[0]
    if x0.is_zero():
        raise ValueError("the curve lies in the plane at infinity")
    roots = complex_roots(x0, tol.root)
    defect = immersion_defect(C.coords)
    cusps = complex_roots(defect, tol.root) if defect.degree > 0 else []
    real = 0
    trans = []
    for r in roots:
        if r.is_real(tol.pairing) and (r.infinite or r.value.imag == 0):
            real += r.multiplicity
        smooth = all(r.distance(c) > tol.distinct for c in cusps)
        trans.append(r.multiplicity == 1 and smooth)
    return InfinityReport(tuple(roots), real, tuple(trans))


def _plane_ok(form: HomPoly, bound: int) -> bool:
    """Simple roots only, with at most ``bound`` real ones (exact)."""
    if form.is_zero():
        return False
    m = form.infinity_multiplicity()
    if m > 1:
        return False
    f = form.dehomogenize()
    if any(mult > 1 for _, mult in squarefree_decomposition(f)):
        return False
    return real_root_count(f) + m <= bound


def normalize_infinity(C: RatCurve, seed: int = 0, budget: int = 256) -> RatCurve:
    """Move a plane meeting the curve transversally in at most ``d - 2`` real points to infinity."""
    from .algebra.pgl import pgl_apply

    d = C.degree
    if d <= 2:
        raise ValueError("degree must exceed 2")
    if is_planar(C)[0]:
        raise ValueError("curve is planar")
    if _plane_ok(C.coords[0], d - 2):
        return C
    rng = np.random.default_rng([seed, 31337])
    for _ in range(budget):
        # a real plane through C(z) and C(conj z) has at most d - 2 further real points
        scale = 10 ** rng.uniform(-6, 2)
        x = Fraction(round(rng.normal() * scale * 10**6), 10**6)
        y = Fraction(max(1, round(abs(rng.normal()) * scale * 10**6)), 10**6)
        vals = [complex_value(p, x, y) for p in C.coords]
        pencil = nullspace([[re for re, _ in vals], [im for _, im in vals]])
        if len(pencil) != 2:
            continue
        lam = int(rng.integers(-5, 6))
        h = [a + lam * b for a, b in zip(*pencil)]
        if not any(h):
            continue
        form = HomPoly.zero(d)
        for c, p in zip(h, C.coords):
            if c:
                form = form + p.scale(c)
        if not _plane_ok(form, d - 2):
            continue
        return pgl_apply(_complete_basis(h), C)
    raise RuntimeError("no admissible plane found within the candidate budget; re-seed")


def complex_value(p: HomPoly, x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    """Exact real and imaginary parts of ``p(x + iy, 1)``."""
    re, im = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        re, im = re * x - im * y + c, re * y + im * x
    return re, im


def _complete_basis(h: list[Fraction]) -> ProjTransform:
    from .algebra.linalg import det

    for drop in range(4):
        rows = [h] + [[Fraction(int(i == j)) for j in range(4)] for i in range(4) if i != drop]
        dt = det(rows)
        if dt != 0:
            if dt < 0:
                rows[1] = [-x for x in rows[1]]
            return ProjTransform.from_rows(rows)
    raise ValueError("zero covector")
