"""Degree-additive gluing of two knots meeting transversally in one point.

With the meeting point moved to ``(1:0:0:0)``, the left knot reparametrized so
that it passes there at ``(1:0)`` and the right one at ``(0:1)``, rescaling the
parameters pushes each knot's shape into a small parameter region while the
rest of CP^1 maps close to the meeting point. Adding the two affine maps and
clearing denominators gives ``(a0 b0 : ai b0 + bi a0)``, of degree ``m + n``,
traversing the left knot and then the right one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ..algebra import bivariate as bv
from ..algebra.linalg import det, inverse
from ..algebra.pgl import ProjTransform, apply_to_coords, reparametrize
from ..algebra.poly import HomPoly, forms_gcd, udivmod, uderiv, ugcd
from ..algebra.roots import WORK_DPS, ComplexParam, complex_roots, roots_squarefree
from ..config import DEFAULT, Tolerances
from ..curve import (
    DegenerateCurveError,
    RatCurve,
    _polish_ab,
    _random_moebius,
    _residual,
    is_knot,
    preimage_count,
    primitivize,
    tangent_vector,
)
from ..writhe import GenericityError, project

R_START = 2
R_DOUBLINGS = 30


class GlueError(ValueError):
    pass


@dataclass(frozen=True)
class GlueSpec:
    left: RatCurve
    right: RatCurve
    meeting_point: tuple[Fraction, Fraction, Fraction, Fraction]
    scale: Fraction | None = None  # None: doubling search


@dataclass(frozen=True)
class Intersection:
    left_param: ComplexParam
    right_param: ComplexParam

    @property
    def is_real(self) -> bool:
        return self.left_param.is_real() and self.right_param.is_real()


# -- intersections of two parametrized curves ------------------------------

def _cross_minor(p: Sequence[Fraction], q: Sequence[Fraction], p2: Sequence[Fraction], q2: Sequence[Fraction]):
    """``p(u) q(v) - p2(u) q2(v)`` as a bivariate dict in (u, v)."""
    out: dict = {}
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            if a and b:
                out[(i, j)] = out.get((i, j), 0) + a * b
    for i, a in enumerate(p2):
        for j, b in enumerate(q2):
            if a and b:
                out[(i, j)] = out.get((i, j), 0) - a * b
    return {k: v for k, v in out.items() if v}


def intersections(A: RatCurve, B: RatCurve, tol: Tolerances = DEFAULT, seed: int = 0) -> list[Intersection]:
    """All parameter pairs ``(u, v)`` with ``A(u)`` proportional to ``B(v)``."""
    rng = np.random.default_rng([seed, 7919])
    for _ in range(8):
        M1, M2 = _random_moebius(rng), _random_moebius(rng)
        while preimage_count(B.coords, [f(Fraction(M1[0]), Fraction(M1[2])) for f in A.coords]):
            M1 = _random_moebius(rng)
        while preimage_count(A.coords, [f(Fraction(M2[0]), Fraction(M2[2])) for f in B.coords]):
            M2 = _random_moebius(rng)
        QA = reparametrize(A.coords, *M1)
        QB = reparametrize(B.coords, *M2)
        minors = []
        for i in range(4):
            for j in range(i + 1, 4):
                m = _cross_minor(QA[i].coeffs, QB[j].coeffs, QA[j].coeffs, QB[i].coeffs)
                if m:
                    minors.append(m)
        X, Y, Z = (bv.combine(minors, [int(w) for w in rng.integers(-999, 1000, len(minors))]) for _ in range(3))
        R1, R2 = bv.resultant_b(X, Y), bv.resultant_b(X, Z)
        if not R1 or not R2:
            continue
        G = ugcd(R1, R2)
        if len(G) <= 1:
            return []
        g2 = ugcd(G, uderiv(G))
        Gsf = udivmod(G, g2)[0] if len(g2) > 1 else G
        found: list[tuple] = []
        with mpmath.workdps(WORK_DPS):
            for u in roots_squarefree(Gsf):
                cs = bv.coeffs_in_b(max((X, Y, Z), key=bv.degree_b), u)
                while len(cs) > 1 and abs(cs[-1]) < mpmath.mpf(10) ** (-WORK_DPS + 10):
                    cs.pop()
                if len(cs) <= 1:
                    continue
                for v in mpmath.polyroots(cs[::-1], maxsteps=500, extraprec=300, error=False):
                    pol = _polish_ab(minors, X, Y, u, v)
                    if pol is None or _residual(minors, *pol) > tol.residual:
                        continue
                    if any(abs(pol[0] - a) + abs(pol[1] - b) < tol.distinct for a, b in found):
                        continue
                    found.append(pol)
            return [Intersection(_back(M1, u), _back(M2, v)) for u, v in found]
    raise DegenerateCurveError("the two curves share a component")


def _back(M, u) -> ComplexParam:
    a, b, c, d = M
    t, s = a * u + b, c * u + d
    if abs(s) <= mpmath.mpf(10) ** -30 * max(1, abs(t)):
        return ComplexParam.at_infinity()
    z = complex(t / s)
    if abs(z.imag) < 1e-30 * max(1.0, abs(z)):
        z = complex(z.real, 0.0)
    return ComplexParam(z)


# -- exact bookkeeping at the meeting point --------------------------------

def param_through(C: RatCurve, p: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """The unique rational parameter ``(t:s)`` with ``C(t:s) = p``."""
    p = [Fraction(x) for x in p]
    k = next(i for i, x in enumerate(p) if x)
    forms = [C.coords[i] * p[k] - C.coords[k] * p[i] for i in range(4) if i != k]
    forms = [f for f in forms if not f.is_zero()]
    g = forms_gcd(forms) if forms else C.coords[k]
    if g.degree != 1:
        raise GlueError(f"curve passes through the point {g.degree} times (need exactly once)")
    b, a = g.coeffs  # g = a t + b s vanishes at (-b : a)
    return (-b, a)


def meeting_point(A: RatCurve, B: RatCurve, tol: Tolerances = DEFAULT) -> tuple[Fraction, ...]:
    """The single intersection point of two knots, which must be rational."""
    xs = intersections(A, B, tol)
    if len(xs) != 1:
        raise GlueError(f"curves meet in {len(xs)} points (complex points included); need exactly one")
    x = xs[0]
    if not x.is_real:
        raise GlueError("the only intersection is not real")
    u = x.left_param
    if u.infinite:
        t, s = Fraction(1), Fraction(0)
    else:
        t, s = Fraction(u.value.real).limit_denominator(10**9), Fraction(1)
    p = [c(t, s) for c in A.coords]
    try:
        param_through(B, p)
    except GlueError:
        raise GlueError("intersection parameter is not rational; pass the meeting point explicitly") from None
    return _normalize(p)


def _normalize(p) -> tuple[Fraction, ...]:
    k = next(i for i, x in enumerate(p) if x)
    return tuple(Fraction(x) / p[k] for x in p)


def _independent_tangents(A: RatCurve, ua, B: RatCurve, ub, p) -> bool:
    ta = [complex(x) for x in tangent_vector(A.coords, *ua)]
    tb = [complex(x) for x in tangent_vector(B.coords, *ub)]
    m = np.array([[float(x) for x in p], np.real(ta), np.real(tb)])
    m = m / np.linalg.norm(m, axis=1, keepdims=True)
    s = np.linalg.svd(m, compute_uv=False)
    return bool(s[-1] > 1e-9 * s[0])


def _to_e0(p: Sequence[Fraction]) -> ProjTransform:
    """Orientation-preserving transform taking ``p`` to ``(1:0:0:0)``."""
    k = next(i for i, x in enumerate(p) if x)
    cols = [list(p)] + [[Fraction(int(i == j)) for i in range(4)] for j in range(4) if j != k]
    S = [[cols[j][i] for j in range(4)] for i in range(4)]  # columns: p, then three unit vectors
    if det(S) < 0:
        for i in range(4):
            S[i][3] = -S[i][3]
    return ProjTransform.from_rows(inverse(S))


def _expected_census(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def glue_with(request: GlueSpec, r: Fraction) -> RatCurve:
    """One gluing at a fixed scale; no acceptance checks."""
    A, B, p = request.left, request.right, request.meeting_point
    T = _to_e0(p)
    a = apply_to_coords(T, A.coords)
    b = apply_to_coords(T, B.coords)
    ta, sa = param_through(A, p)
    tb, sb = param_through(B, p)
    a = reparametrize(a, ta, -sa, sa, ta)  # (1:0) -> (ta:sa), det > 0
    b = reparametrize(b, sb, tb, -tb, sb)  # (0:1) -> (tb:sb), det > 0
    a = [f.substitute(r, 0, 0, 1) for f in a]
    b = [f.substitute(1, 0, 0, r) for f in b]
    raw = [a[0] * b[0]] + [a[i] * b[0] + b[i] * a[0] for i in range(1, 4)]
    C = primitivize(raw)
    return RatCurve(tuple(apply_to_coords(T.inverse(), C.coords)))


def glue(
    request: GlueSpec, tol: Tolerances = DEFAULT, seed: int = 0, min_scale: int = R_START, verify: bool = True
) -> RatCurve:
    """Glue two knots at their meeting point; the result has degree m + n.

    With ``verify=False`` the first scale giving the right degree is returned
    unchecked; callers that verify the end product use this to skip work.
    """
    A, B, p = request.left, request.right, _normalize(request.meeting_point)
    request = GlueSpec(A, B, p, request.scale)
    ua, ub = param_through(A, p), param_through(B, p)
    if not _independent_tangents(A, ua, B, ub, p):
        raise GlueError("tangent lines at the meeting point are dependent")
    if verify:
        n = len(intersections(A, B, tol, seed))
        if n != 1:
            raise GlueError(f"curves meet in {n} points (complex points included); need exactly one")
    d = A.degree + B.degree
    scales = [Fraction(request.scale)] if request.scale is not None else [Fraction(min_scale) * 2**k for k in range(R_DOUBLINGS)]
    for r in scales:
        C = glue_with(request, r)
        if C.degree != d:
            continue
        if not verify:
            return C
        if not is_knot(C, tol):
            continue
        try:
            pr = project(C, seed, tol)
        except GenericityError:
            continue
        if pr.nodes is not None and len(pr.nodes) == _expected_census(d):
            return C
    raise GlueError("no admissible scale within the doubling budget")
