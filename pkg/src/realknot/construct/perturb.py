"""Resolving double points of wall and edge curves by small coefficient changes.

Node ``k`` with preimages ``u, v`` is pushed apart by adding ``eps * dir * g * w``
where ``w`` is the candidate direction in R^4 most transverse to the node's
tangent 3-space and ``g`` is a real form of the curve's
degree. For a real node ``g`` vanishes at ``v`` but not at ``u``; for a solitary
node ``g(u)`` must have a non-real ratio to the curve's value there. In both
cases ``g`` also vanishes at the preimages of every node that stays put.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from ..algebra.poly import HomPoly
from ..curve import DoublePoint, Kind, RatCurve, double_points, is_knot, tangent_vector
from .catalog import CatalogEntry

CANDIDATE_DIRECTIONS = tuple(
    tuple(Fraction(x) for x in w)
    for w in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (3, -5, 7, 2), (1, 2, -3, 5), (2, 1, 1, -4))
)
MAX_HALVINGS = 12


class PerturbationError(ValueError):
    pass


def _vanishing_form(u) -> HomPoly:
    """Real form vanishing at the parameter ``u`` (linear if real, quadratic if not)."""
    if u.infinite:
        return HomPoly.linear_form(0, 1)
    z = complex(u.value)
    if abs(z.imag) < 1e-12:
        return HomPoly.linear_form(1, -_exact(z.real))
    re, n2 = _exact(z.real), _exact(abs(z) ** 2)
    return HomPoly.from_univariate([n2, -2 * re, 1])


def _exact(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**6)


def _node_form(C: RatCurve, node: DoublePoint, others: Sequence[DoublePoint]) -> HomPoly:
    d = C.degree
    keep = HomPoly(0, (Fraction(1),))
    for o in others:
        if o.kind == Kind.SOLITARY:
            keep = keep * _vanishing_form(o.params[0])
        else:
            keep = keep * _vanishing_form(o.params[0]) * _vanishing_form(o.params[1])
    free = d - keep.degree
    u, v = node.params
    if node.kind == Kind.REAL_REAL:
        if free < 1:
            raise PerturbationError("degree too small to move one node and fix the others")
        return keep * _vanishing_form(v) ** free
    if node.kind != Kind.SOLITARY:
        raise PerturbationError("imaginary pairs have no real resolution")
    # try simple real forms until g(u) / C(u) is far from real
    with mpmath.workdps(30):
        zu = mpmath.mpc(u.value)
        ref = max((p(zu) for p in C.coords), key=abs)
        for a, b in ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)):
            g = keep * HomPoly.linear_form(a, b) ** free
            r = g(zu) / ref
            if abs(mpmath.im(r)) > 1e-3 * abs(r):
                return g
    raise PerturbationError("no resolving form found for the solitary node")


def _direction(C: RatCurve, node: DoublePoint) -> tuple[Fraction, ...]:
    """Candidate direction with the largest normalized volume against point and tangents."""
    u, v = node.params
    p = np.array([complex(x) for x in node.image])
    tu = np.array([complex(x) for x in tangent_vector(C.coords, *_hom(u))], dtype=complex)
    if node.kind == Kind.REAL_REAL:
        tv = np.array([complex(x) for x in tangent_vector(C.coords, *_hom(v))], dtype=complex)
        frame = [p.real, tu.real, tv.real]
    else:
        val = np.array([complex(x) for x in C(*_hom(u))], dtype=complex)
        k = int(np.argmax(abs(p)))
        tu = tu * (p[k] / val[k])
        frame = [p.real, tu.real, tu.imag]
    frame = [f / np.linalg.norm(f) for f in frame]

    def volume(w):
        w = np.array([float(x) for x in w])
        return abs(np.linalg.det(np.array(frame + [w / np.linalg.norm(w)])))

    return max(CANDIDATE_DIRECTIONS, key=volume)


def _hom(u):
    return (1, 0) if u.infinite else (complex(u.value), 1)


def default_epsilon(C: RatCurve) -> Fraction:
    smallest = min(abs(c) for p in C.coords for c in p.coeffs if c)
    return smallest / 1000


def perturb(
    entry: CatalogEntry | RatCurve,
    node_index: int | Sequence[int],
    direction: int | Sequence[int],
    eps: Fraction | None = None,
) -> RatCurve:
    """Resolve the selected nodes; the rest are kept. Directions are +1 or -1."""
    C = entry.curve if isinstance(entry, CatalogEntry) else entry
    nodes = double_points(C)
    idx = [node_index] if isinstance(node_index, int) else list(node_index)
    dirs = [direction] * len(idx) if isinstance(direction, int) else list(direction)
    if len(dirs) != len(idx):
        raise ValueError("one direction per node")
    if any(x not in (1, -1) for x in dirs):
        raise ValueError("direction must be +1 or -1")
    for i in idx:
        if not 0 <= i < len(nodes):
            raise IndexError(f"node index {i} out of range (curve has {len(nodes)} nodes)")
        if nodes[i].tangential:
            raise PerturbationError("tangential node cannot be resolved by this scheme")
    forms = [_node_form(C, nodes[i], [n for j, n in enumerate(nodes) if j != i]) for i in idx]
    dvecs = [_direction(C, nodes[i]) for i in idx]
    eps = default_epsilon(C) if eps is None else Fraction(eps)
    keep = len(nodes) - len(idx)
    for _ in range(MAX_HALVINGS):
        coords = list(C.coords)
        for g, sgn, dv in zip(forms, dirs, dvecs):
            coords = [p + g.scale(eps * sgn * w) for p, w in zip(coords, dv)]
        try:
            out = RatCurve(tuple(coords))
        except ValueError:
            eps /= 2
            continue
        left = double_points(out)
        if len(left) == keep and not any(n.tangential for n in left):
            if keep or is_knot(out):
                return out
        eps /= 2
    raise PerturbationError("perturbation disturbs other nodes at every tried epsilon")
