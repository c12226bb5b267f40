"""Projective linear transformations of CP^1 and CP^3 with rational entries.

Convention: a transform acts on *points*. For a dimension-2 transform ``T``
acting on a curve, the new curve is ``P o T^-1`` so that a point reached at
parameter ``u`` before is reached at ``T u`` after; this keeps
``pgl_apply(T2 @ T1, x) == pgl_apply(T2, pgl_apply(T1, x))`` for every kind
of target. Use :func:`reparametrize` for a plain substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import det, inverse, matmul
from .poly import HomPoly
from .roots import ComplexParam


@dataclass(frozen=True)
class ProjTransform:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if n not in (2, 4) or any(len(r) != n for r in self.matrix):
            raise ValueError("transform must be a 2x2 or 4x4 matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ProjTransform":
        m = [[Fraction(x) for x in r] for r in rows]
        if det(m) == 0:
            raise ValueError("singular matrix")
        first = next(x for r in m for x in r if x != 0)
        return cls(tuple(tuple(x / first for x in r) for r in m))

    @classmethod
    def identity(cls, dimension: int) -> "ProjTransform":
        return cls.from_rows([[int(i == j) for j in range(dimension)] for i in range(dimension)])

    @classmethod
    def diagonal(cls, *entries) -> "ProjTransform":
        n = len(entries)
        return cls.from_rows([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def det(self) -> Fraction:
        return det(self.matrix)

    def preserves_orientation(self) -> bool:
        return self.det() > 0

    def __matmul__(self, other: "ProjTransform") -> "ProjTransform":
        """Composition: ``(self @ other)`` applies ``other`` first."""
        return ProjTransform.from_rows(matmul(self.matrix, other.matrix))

    def inverse(self) -> "ProjTransform":
        return ProjTransform.from_rows(inverse(self.matrix))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.matrix) + "]"


def reparametrize(coords: Sequence[HomPoly], a, b, c, d) -> list[HomPoly]:
    """Substitute ``(t, s) -> (a t + b s, c t + d s)`` into every coordinate."""
    return [p.substitute(a, b, c, d) for p in coords]


def apply_to_coords(T: ProjTransform, coords: Sequence[HomPoly]) -> list[HomPoly]:
    if T.dimension == 4:
        if len(coords) != 4:
            raise ValueError("a dimension-4 transform needs four coordinates")
        out = []
        for row in T.matrix:
            acc = HomPoly.zero(coords[0].degree)
            for c, p in zip(row, coords):
                if c:
                    acc = acc + p.scale(c)
            out.append(acc)
        return out
    (a, b), (c, d) = inverse(T.matrix)
    return reparametrize(coords, a, b, c, d)


def apply_to_param(T: ProjTransform, u: ComplexParam) -> ComplexParam:
    if T.dimension != 2:
        raise ValueError("only dimension-2 transforms act on parameters")
    (a, b), (c, d) = T.matrix
    t, s = u.homogeneous()
    return ComplexParam.from_homogeneous(float(a) * t + float(b) * s, float(c) * t + float(d) * s, u.multiplicity)


def pgl_apply(T: ProjTransform, target):
    """Act on a curve (anything with ``coords``), a coordinate list, or a parameter."""
    from ..curve import RatCurve

    if isinstance(target, ComplexParam):
        return apply_to_param(T, target)
    if isinstance(target, RatCurve):
        return RatCurve(tuple(apply_to_coords(T, target.coords)))
    return apply_to_coords(T, list(target))


def random_pgl(dimension: int, seed: int, orientation: int = 0) -> ProjTransform:
    """Deterministic random transform with small rational entries.

    ``orientation=+1`` forces ``det > 0`` and ``-1`` forces ``det < 0``.
    """
    if dimension not in (2, 4):
        raise ValueError("dimension must be 2 or 4")
    rng = np.random.default_rng([seed, dimension])
    while True:
        num = rng.integers(-20, 21, size=(dimension, dimension))
        den = rng.integers(1, 6, size=(dimension, dimension))
        rows = [[Fraction(int(num[i, j]), int(den[i, j])) for j in range(dimension)] for i in range(dimension)]
        dt = det(rows)
        if dt == 0:
            continue
        if orientation and (dt > 0) != (orientation > 0):
            rows[0] = [-x for x in rows[0]]
        return ProjTransform.from_rows(rows)
