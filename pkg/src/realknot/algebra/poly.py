"""Homogeneous bivariate polynomials in (t, s) with exact rational coefficients.

A :class:`HomPoly` of degree ``d`` stores ``d + 1`` coefficients; ``coeffs[k]``
multiplies ``t**k * s**(d - k)``.  Dehomogenizing at ``s = 1`` therefore gives
the univariate polynomial ``sum(coeffs[k] * t**k)`` with coefficients in
ascending order, which is the representation used by the ``u*`` helpers below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd as igcd
from typing import Iterable, Sequence

from . import _flint

Rational = Fraction

__all__ = [
    "Rational",
    "HomPoly",
    "poly_arith",
    "poly_gcd",
    "resultant",
    "ugcd",
    "udivmod",
    "uderiv",
    "utrim",
    "squarefree_decomposition",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed; pass a Fraction or int")
    return Fraction(x)


@dataclass(frozen=True)
class HomPoly:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"a degree {self.degree} form needs {self.degree + 1} coefficients, got {len(self.coeffs)}"
            )

    # -- construction -------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "HomPoly":
        cs = tuple(as_rational(c) for c in coeffs)
        return cls(len(cs) - 1, cs)

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "HomPoly":
        """``coeff * t**a * s**b``."""
        cs = [Fraction(0)] * (a + b + 1)
        cs[a] = as_rational(coeff)
        return cls(a + b, tuple(cs))

    @classmethod
    def from_terms(cls, degree: int, terms: dict[tuple[int, int], object]) -> "HomPoly":
        cs = [Fraction(0)] * (degree + 1)
        for (a, b), c in terms.items():
            if a + b != degree:
                raise ValueError(f"term t^{a} s^{b} is not of degree {degree}")
            cs[a] += as_rational(c)
        return cls(degree, tuple(cs))

    @classmethod
    def from_univariate(cls, coeffs: Sequence, degree: int | None = None) -> "HomPoly":
        """Homogenize ascending univariate coefficients to the given degree."""
        cs = utrim([as_rational(c) for c in coeffs])
        if degree is None:
            degree = max(len(cs) - 1, 0)
        if len(cs) - 1 > degree:
            raise ValueError("univariate polynomial exceeds requested degree")
        cs = cs + [Fraction(0)] * (degree + 1 - len(cs))
        return cls(degree, tuple(cs))

    @classmethod
    def linear_form(cls, a, b) -> "HomPoly":
        """``a*t + b*s``."""
        return cls(1, (as_rational(b), as_rational(a)))

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_constant(self) -> bool:
        """Degree 0 or identically zero."""
        return self.degree == 0 or self.is_zero()

    def infinity_multiplicity(self) -> int:
        """Multiplicity of the root (1:0), i.e. the power of ``s`` dividing the form."""
        if self.is_zero():
            raise ValueError("zero form has no well-defined root multiplicity")
        k = 0
        while self.coeffs[self.degree - k] == 0:
            k += 1
        return k

    def zero_multiplicity(self) -> int:
        """Multiplicity of the root (0:1), i.e. the power of ``t`` dividing the form."""
        if self.is_zero():
            raise ValueError("zero form has no well-defined root multiplicity")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        return HomPoly(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.degree, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return HomPoly(self.degree + other.degree, tuple(out))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly":
        out = HomPoly(0, (Fraction(1),))
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "HomPoly":
        c = as_rational(c)
        return HomPoly(self.degree, tuple(c * x for x in self.coeffs))

    def diff_t(self) -> "HomPoly":
        if self.degree == 0:
            return HomPoly.zero(0)
        return HomPoly(self.degree - 1, tuple(k * self.coeffs[k] for k in range(1, self.degree + 1)))

    def diff_s(self) -> "HomPoly":
        d = self.degree
        if d == 0:
            return HomPoly.zero(0)
        return HomPoly(d - 1, tuple((d - k) * self.coeffs[k] for k in range(d)))

    def exact_div(self, other: "HomPoly") -> "HomPoly":
        """Exact division; raises ``ValueError`` when ``other`` does not divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            return HomPoly.zero(self.degree - other.degree)
        m = other.infinity_multiplicity()
        if self.infinity_multiplicity() < m:
            raise ValueError("inexact division")
        q, r = udivmod(self.dehomogenize(), other.dehomogenize())
        if any(r):
            raise ValueError("inexact division")
        return HomPoly.from_univariate(q, self.degree - other.degree)

    def substitute(self, a, b, c, d) -> "HomPoly":
        """Return ``F(a*t + b*s, c*t + d*s)``."""
        a, b, c, d = map(as_rational, (a, b, c, d))
        lt = HomPoly(1, (b, a))
        ls = HomPoly(1, (d, c))
        n = self.degree
        tp = [HomPoly(0, (Fraction(1),))]
        sp = [HomPoly(0, (Fraction(1),))]
        for _ in range(n):
            tp.append(tp[-1] * lt)
            sp.append(sp[-1] * ls)
        out = HomPoly.zero(n)
        for k, ck in enumerate(self.coeffs):
            if ck:
                out = out + (tp[k] * sp[n - k]).scale(ck)
        return out

    def primitive_integer(self) -> tuple[int, ...]:
        """Coefficients scaled to coprime integers (sign of the top nonzero one positive)."""
        if self.is_zero():
            return (0,) * (self.degree + 1)
        den = reduce(lambda x, y: x * y // igcd(x, y), (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(igcd, (abs(i) for i in ints if i), 0)
        ints = [i // g for i in ints]
        lead = next(i for i in reversed(ints) if i)
        if lead < 0:
            ints = [-i for i in ints]
        return tuple(ints)

    # -- evaluation ---------------------------------------------------
    def __call__(self, t, s=1):
        """Evaluate at ``(t, s)``; works for Fractions, ints, complex or mpmath numbers."""
        d = self.degree
        spow = [1]
        for _ in range(d):
            spow.append(spow[-1] * s)
        acc = self.coeffs[d]
        for k in range(d - 1, -1, -1):
            acc = acc * t + self.coeffs[k] * spow[d - k]
        return acc

    def dehomogenize(self) -> list[Fraction]:
        """Ascending coefficients of ``F(t, 1)`` with trailing zeros removed."""
        return utrim(list(self.coeffs))

    # -- display ------------------------------------------------------
    def terms(self) -> list[tuple[Fraction, int, int]]:
        """Nonzero terms as ``(coeff, a, b)`` for ``coeff * t^a * s^b``, highest t-power first."""
        d = self.degree
        return [(c, k, d - k) for k, c in reversed(list(enumerate(self.coeffs))) if c]

    def __str__(self) -> str:
        ts = self.terms()
        if not ts:
            return "0"
        parts = []
        for i, (c, a, b) in enumerate(ts):
            mono = "*".join(x for x in (_pow("t", a), _pow("s", b)) if x)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


def _pow(v: str, e: int) -> str:
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


def poly_arith(op: str, a: HomPoly, b) -> HomPoly:
    """Dispatch ``add``/``mul``/``scale`` (the scalar for ``scale`` may be a Rational)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


# -- univariate helpers on ascending Fraction lists -------------------

def utrim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def udivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = utrim(list(a))
    b = utrim(list(b))
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lb
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return utrim(q), utrim(a[: len(b) - 1])


def uderiv(a: Sequence[Fraction]) -> list[Fraction]:
    return utrim([k * a[k] for k in range(1, len(a))])


def umonic(a: Sequence[Fraction]) -> list[Fraction]:
    a = utrim(list(a))
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def ugcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd of two univariate polynomials; ``[]`` only when both are zero."""
    if _flint.AVAILABLE:
        if not utrim(list(a)) and not utrim(list(b)):
            return []
        return _flint.ugcd(a, b)
    return _ugcd_prs(a, b)


def _ugcd_prs(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _primitive_int(a), _primitive_int(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive_int(_iprem(a, b))
    return umonic([Fraction(x) for x in a])


def _iprem(a: list[int], b: list[int]) -> list[int]:
    """Integer pseudo-remainder of ``a`` by ``b``."""
    a = list(a)
    lb, n = b[-1], len(b)
    while len(a) >= n:
        c = a[-1]
        k = len(a) - n
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _primitive_int(p) -> list[int]:
    p = utrim([Fraction(x) for x in p])
    if not p:
        return []
    den = reduce(lambda x, y: x * y // igcd(x, y), (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(igcd, (abs(i) for i in ints if i), 0)
    if ints[-1] < 0:
        g = -g
    return [i // g for i in ints]


def umul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def squarefree_decomposition(a: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: ``a = lc * prod(f_i ** i)`` with each ``f_i`` monic square-free.

    Returns ``[(f_i, i), ...]`` for the non-constant factors only.
    """
    a = umonic(a)
    if len(a) <= 1:
        return []
    out = []
    da = uderiv(a)
    g = ugcd(a, da)
    b, _ = udivmod(a, g)
    c, _ = udivmod(da, g)
    d = _usub(c, uderiv(b))
    i = 1
    while len(utrim(b)) > 1:
        f = ugcd(b, d)
        b, _ = udivmod(b, f)
        c, _ = udivmod(d, f)
        if len(f) > 1:
            out.append((umonic(f), i))
        d = _usub(c, uderiv(b))
        i += 1
    return out


def _usub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return utrim([x - y for x, y in zip(a, b)])


# -- homogeneous gcd / resultant --------------------------------------

def poly_gcd(a: HomPoly, b: HomPoly) -> HomPoly:
    """Monic gcd of two forms (the ``t``-leading coefficient of the dehomogenized part is 1)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero forms is undefined")
    if a.is_zero():
        return _monic_form(b)
    if b.is_zero():
        return _monic_form(a)
    m = min(a.infinity_multiplicity(), b.infinity_multiplicity())
    g = ugcd(a.dehomogenize(), b.dehomogenize())
    e = len(g) - 1
    return HomPoly.from_univariate(g, e) * HomPoly.monomial(0, m)


def forms_gcd(forms: Iterable[HomPoly]) -> HomPoly:
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd of zero forms is undefined")
    return reduce(poly_gcd, forms[1:], _monic_form(forms[0]))


def _monic_form(a: HomPoly) -> HomPoly:
    m = a.infinity_multiplicity()
    g = umonic(a.dehomogenize())
    return HomPoly.from_univariate(g, len(g) - 1) * HomPoly.monomial(0, m)


def sylvester(a_desc: Sequence, b_desc: Sequence) -> list[list]:
    """Sylvester matrix from descending coefficient lists of formal degrees len-1."""
    m = len(a_desc) - 1
    n = len(b_desc) - 1
    size = m + n
    zero = 0 * (a_desc[0] if a_desc else 0)
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(a_desc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(b_desc) + [zero] * (size - n - 1 - i))
    return rows


def resultant(a: HomPoly, b: HomPoly) -> Fraction:
    """Homogeneous Sylvester resultant; zero iff ``a`` and ``b`` share a projective root."""
    from .linalg import det

    if a.degree + b.degree == 0:
        return Fraction(1)
    return det(sylvester(a.coeffs[::-1], b.coeffs[::-1]))


def binomial_form(n: int) -> HomPoly:
    """``(t + s)**n``; handy in tests."""
    return HomPoly(n, tuple(Fraction(comb(n, k)) for k in range(n + 1)))
