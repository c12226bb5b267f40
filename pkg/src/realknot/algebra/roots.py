"""Complex root finding for forms with exact rational coefficients.

Multiplicities come from an exact square-free decomposition; each square-free
factor is solved with Aberth iteration in double precision and then polished
by Newton steps in mpmath at higher precision against the exact coefficients.
The number of real roots of every factor is counted exactly with a Sturm
sequence, so real/non-real classification never depends on a threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .. import kernels
from . import _flint
from .poly import HomPoly, squarefree_decomposition, udivmod, uderiv, utrim

DEFAULT_TOL = 1e-12
PAIR_TOL = 1e-8
WORK_DPS = 50


class RootFindingError(ArithmeticError):
    """Numeric refinement did not converge; the caller should re-randomize."""


@dataclass(frozen=True)
class ComplexParam:
    """A point of CP^1: ``value`` in the chart ``t/s`` or the point (1:0)."""

    value: complex = 0j
    multiplicity: int = 1
    infinite: bool = False

    @classmethod
    def at_infinity(cls, multiplicity: int = 1) -> "ComplexParam":
        return cls(0j, multiplicity, True)

    @classmethod
    def from_homogeneous(cls, t: complex, s: complex, multiplicity: int = 1) -> "ComplexParam":
        if abs(s) <= 1e-300 or abs(t) > 1e12 * abs(s):
            return cls.at_infinity(multiplicity)
        return cls(complex(t / s), multiplicity)

    def homogeneous(self) -> tuple[complex, complex]:
        """Representative ``(t, s)`` with ``max(|t|, |s|) = 1``."""
        if self.infinite:
            return (1 + 0j, 0j)
        z = complex(self.value)
        if abs(z) <= 1:
            return (z, 1 + 0j)
        return (1 + 0j, 1 / z)

    def is_real(self, tol: float = PAIR_TOL) -> bool:
        return self.infinite or abs(self.value.imag) <= tol * max(1.0, abs(self.value))

    def conjugate(self) -> "ComplexParam":
        if self.infinite:
            return self
        return ComplexParam(self.value.conjugate(), self.multiplicity)

    def distance(self, other: "ComplexParam") -> float:
        """Chordal distance on the Riemann sphere."""
        t1, s1 = self.homogeneous()
        t2, s2 = other.homogeneous()
        num = abs(t1 * s2 - s1 * t2)
        return num / (math.hypot(abs(t1), abs(s1)) * math.hypot(abs(t2), abs(s2)))

    def __str__(self) -> str:
        if self.infinite:
            return "(1:0)"
        z = self.value
        if z.imag == 0:
            return f"({z.real:.12g}:1)"
        return f"({z.real:.12g}{z.imag:+.12g}i:1)"


# -- Sturm sequences ---------------------------------------------------

def real_root_count(p: Sequence[Fraction]) -> int:
    """Number of distinct real roots of an ascending univariate polynomial."""
    p = utrim(list(p))
    if len(p) <= 1:
        return 0
    if _flint.AVAILABLE:
        at_pos, at_neg = _flint.sturm_signs(p)
        return _sign_changes(at_neg) - _sign_changes(at_pos)
    seq = [p, uderiv(p)]
    while len(seq[-1]) > 1:
        _, r = udivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        signs = [x for x in signs if x != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    at_pos = [q[-1] for q in seq]
    at_neg = [q[-1] * (-1) ** (len(q) - 1) for q in seq]
    return changes(at_neg) - changes(at_pos)


def _sign_changes(signs) -> int:
    signs = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


# -- numeric solving ---------------------------------------------------

def _float_coeffs(p: Sequence[Fraction]) -> list[float]:
    big = max(abs(c) for c in p)
    return [float(c / big) for c in p]


def _cauchy_radius(fc: Sequence[float]) -> float:
    lead = abs(fc[-1])
    return 1 + max(abs(c) / lead for c in fc[:-1]) if len(fc) > 1 else 1.0


def _mp_poly(p: Sequence[Fraction]):
    return [mpmath.mpf(c.numerator) / c.denominator for c in p]


def _mp_eval(cs, z):
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * z + c
    return acc


def roots_squarefree(p: Sequence[Fraction], dps: int = WORK_DPS, tol: float = DEFAULT_TOL) -> list:
    """Roots (as ``mpmath.mpc``) of a square-free ascending rational polynomial."""
    p = utrim([Fraction(c) for c in p])
    n = len(p) - 1
    if n <= 0:
        return []
    with mpmath.workdps(dps):
        if n == 1:
            return [mpmath.mpc(mpmath.mpf(-p[0].numerator * p[1].denominator) / (p[0].denominator * p[1].numerator))]
        mcs = _mp_poly(p)
        dmcs = [k * mcs[k] for k in range(1, n + 1)]
        fc = _float_coeffs(p)
        radius = _cauchy_radius(fc)
        init = kernels.initial_circle(n, min(radius, 1e6))
        z, ok, _ = kernels.aberth(list(reversed(fc)), init, 800, 1e-15)
        roots = [mpmath.mpc(complex(x)) for x in z] if ok else None
        if roots is not None:
            roots = _polish(mcs, dmcs, roots)
        if roots is None or not _acceptable(mcs, roots, tol):
            try:
                roots = list(mpmath.polyroots(list(reversed(mcs)), maxsteps=400, extraprec=4 * dps))
            except mpmath.libmp.NoConvergence as exc:
                raise RootFindingError(f"root refinement failed for degree {n}") from exc
            roots = _polish(mcs, dmcs, [mpmath.mpc(r) for r in roots])
            if roots is None or not _acceptable(mcs, roots, tol):
                raise RootFindingError(f"root refinement failed for degree {n}")
        # exact real-root count fixes the real/non-real split
        nreal = real_root_count(p)
        order = sorted(range(n), key=lambda i: abs(mpmath.im(roots[i])))
        out = list(roots)
        for i in order[:nreal]:
            out[i] = mpmath.mpc(mpmath.re(roots[i]), 0)
        rest = [i for i in order[nreal:]]
        _pair_conjugates(out, rest)
        return out


def _polish(mcs, dmcs, roots, steps: int = 60):
    out = []
    for z in roots:
        for _ in range(steps):
            f = _mp_eval(mcs, z)
            df = _mp_eval(dmcs, z)
            if df == 0:
                break
            dz = f / df
            z = z - dz
            if abs(dz) <= mpmath.mpf(10) ** (-mpmath.mp.dps + 5) * (1 + abs(z)):
                break
        out.append(z)
    # polished roots must stay distinct (square-free input)
    scale = max(1, max(abs(z) for z in out))
    for i in range(len(out)):
        for j in range(i):
            if abs(out[i] - out[j]) <= mpmath.mpf(10) ** (-mpmath.mp.dps // 2) * scale:
                return None
    return out


def _acceptable(mcs, roots, tol) -> bool:
    for z in roots:
        mag = sum(abs(c) * abs(z) ** k for k, c in enumerate(mcs))
        if abs(_mp_eval(mcs, z)) > tol * mag:
            return False
    return True


def _pair_conjugates(roots: list, idx: list[int]) -> None:
    pos = [i for i in idx if mpmath.im(roots[i]) > 0]
    neg = [i for i in idx if mpmath.im(roots[i]) <= 0]
    if len(pos) != len(neg):
        raise RootFindingError("non-real roots do not pair into conjugates")
    for i in pos:
        j = min(neg, key=lambda k: abs(roots[k] - mpmath.conj(roots[i])))
        neg.remove(j)
        roots[j] = mpmath.conj(roots[i])


def complex_roots(a: HomPoly, tol: float = DEFAULT_TOL) -> list[ComplexParam]:
    """All projective roots of ``a`` with multiplicities summing to ``deg a``.

    Roots at (1:0) are detected exactly; the rest come from the square-free
    factors of the dehomogenized polynomial. Non-real roots are returned in
    explicit conjugate pairs.
    """
    if a.is_zero():
        raise ValueError("the zero form has no isolated roots")
    out: list[ComplexParam] = []
    m = a.infinity_multiplicity()
    if m:
        out.append(ComplexParam.at_infinity(m))
    for factor, mult in squarefree_decomposition(a.dehomogenize()):
        for z in roots_squarefree(factor, tol=tol):
            out.append(ComplexParam(complex(z), mult))
    return sorted(out, key=lambda r: (r.infinite, round(r.value.real, 9), r.value.imag))
