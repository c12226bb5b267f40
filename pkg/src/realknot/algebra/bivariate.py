"""Symmetric elimination for pairs of parameters.

Double points of a parametrized curve are pairs ``u != v`` where all 2x2
minors ``p_i(u) p_j(v) - p_j(u) p_i(v)`` vanish. Each minor is divisible by
``u - v`` and the quotient is symmetric, hence a polynomial in
``a = u + v`` and ``b = u v``. Working in ``(a, b)`` identifies the pair
``{u, v}`` with one point and roughly halves the degrees involved.

Bivariate polynomials are dicts ``{(i, j): coeff}`` for ``coeff * a**i * b**j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import _flint
from .linalg import det
from .poly import sylvester, utrim

BiPoly = dict[tuple[int, int], Fraction]


def _add_into(acc: BiPoly, p: BiPoly, c=1) -> None:
    for k, v in p.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def complete_symmetric(n: int) -> list[BiPoly]:
    """``h_m(u, v) = sum u^i v^(m-i)`` in terms of (a, b) for ``m = 0..n``."""
    hs: list[BiPoly] = [{(0, 0): Fraction(1)}]
    prev: BiPoly = {}
    for _ in range(n):
        cur: BiPoly = {}
        _add_into(cur, {(i + 1, j): c for (i, j), c in hs[-1].items()})
        _add_into(cur, {(i, j + 1): c for (i, j), c in prev.items()}, -1)
        prev = hs[-1]
        hs.append(cur)
    return hs


def reduced_minor(p: Sequence[Fraction], q: Sequence[Fraction], hs: list[BiPoly] | None = None) -> BiPoly:
    """``(p(u) q(v) - q(u) p(v)) / (u - v)`` for ascending coefficient lists."""
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    if hs is None:
        hs = complete_symmetric(n)
    out: BiPoly = {}
    for k in range(n):
        for l in range(k):
            c = p[k] * q[l] - q[k] * p[l]
            if c:
                # (u^k v^l - u^l v^k)/(u - v) = b^l h_{k-l-1}
                _add_into(out, {(i, j + l): x for (i, j), x in hs[k - l - 1].items()}, c)
    return out


def combine(polys: Sequence[BiPoly], weights: Sequence) -> BiPoly:
    out: BiPoly = {}
    for p, w in zip(polys, weights):
        if w:
            _add_into(out, p, Fraction(w))
    return out


def degree_b(p: BiPoly) -> int:
    return max((j for (_, j) in p), default=-1)


def total_degree(p: BiPoly) -> int:
    return max((i + j for (i, j) in p), default=-1)


def coeffs_in_b(p: BiPoly, a) -> list:
    """Ascending coefficients in ``b`` after substituting ``a``."""
    n = degree_b(p)
    out = [0 * a] * (n + 1) if n >= 0 else []
    for (i, j), c in p.items():
        out[j] = out[j] + c * a**i
    return out


def evaluate(p: BiPoly, a, b):
    acc = 0
    for (i, j), c in p.items():
        acc = acc + c * a**i * b**j
    return acc


def magnitude(p: BiPoly, a, b) -> float:
    """Sum of absolute term values; the natural scale for relative residuals."""
    return sum(abs(c) * abs(a) ** i * abs(b) ** j for (i, j), c in p.items())


def partial_a(p: BiPoly) -> BiPoly:
    return {(i - 1, j): i * c for (i, j), c in p.items() if i}


def partial_b(p: BiPoly) -> BiPoly:
    return {(i, j - 1): j * c for (i, j), c in p.items() if j}


def resultant_b(p: BiPoly, q: BiPoly) -> list[Fraction]:
    """Ascending coefficients (in ``a``) of ``Res_b(p, q)``, computed exactly.

    Evaluates the Sylvester determinant at enough integer points and
    interpolates; the degree bound is ``total_degree(p) * total_degree(q)``.
    """
    m, n = degree_b(p), degree_b(q)
    if m < 0 or n < 0:
        return []
    if m == 0 and n == 0:
        return [Fraction(1)]
    if _flint.AVAILABLE:
        return utrim(_flint.resultant_b(p, q, m, n))
    return _resultant_sylvester(p, q)


def _resultant_sylvester(p: BiPoly, q: BiPoly) -> list[Fraction]:
    bound = max(total_degree(p), 1) * max(total_degree(q), 1)
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        pa = coeffs_in_b(p, Fraction(x))
        qa = coeffs_in_b(q, Fraction(x))
        ys.append(det(sylvester(pa[::-1], qa[::-1])))
    return utrim(_interpolate(xs, ys))


def _interpolate(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Newton divided differences, returned as ascending monomial coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= xs[i] * poly[k]
        new[0] += coef[i]
        poly = new
    return poly
