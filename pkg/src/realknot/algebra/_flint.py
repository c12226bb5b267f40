"""FLINT-backed exact arithmetic, used when python-flint is importable.

Only two operations go through here: univariate gcd over Q and the
resultant of two bivariate polynomials. Both have pure-Python versions
that serve as the fallback (``REALKNOT_PURE_PYTHON`` forces them).
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

try:
    if os.environ.get("REALKNOT_PURE_PYTHON"):
        raise ImportError
    import flint

    AVAILABLE = True
except ImportError:
    flint = None
    AVAILABLE = False


def _q(c: Fraction):
    return flint.fmpq(c.numerator, c.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def ugcd(a, b) -> list[Fraction]:
    """Monic gcd of ascending coefficient lists."""
    g = flint.fmpq_poly([_q(Fraction(c)) for c in a]).gcd(flint.fmpq_poly([_q(Fraction(c)) for c in b]))
    return [_frac(c) for c in g.coeffs()]


_CTX = None


def _ctx():
    global _CTX
    if _CTX is None:
        _CTX = flint.fmpz_mpoly_ctx.get(("a", "b"), "lex")
    return _CTX


def _integral(p: dict) -> tuple[object, int]:
    den = lcm(*(Fraction(c).denominator for c in p.values()))
    return _ctx().from_dict({k: int(Fraction(c) * den) for k, c in p.items()}), den


def resultant_b(p: dict, q: dict, m: int, n: int) -> list[Fraction]:
    """``Res_b(p, q)`` with ``m, n`` the ``b``-degrees; ascending in ``a``."""
    P, cp = _integral(p)
    Q, cq = _integral(q)
    R = P.resultant(Q, "b")
    scale = Fraction(cp) ** n * Fraction(cq) ** m
    out = [Fraction(0)] * (max((i for i, _ in R.to_dict()), default=-1) + 1)
    for (i, _), c in R.to_dict().items():
        out[i] = Fraction(int(c)) / scale
    return out


def sturm_signs(p) -> tuple[list[int], list[int]]:
    """Leading-coefficient signs of the Sturm sequence at ``+inf`` and ``-inf``."""
    f = flint.fmpq_poly([_q(Fraction(c)) for c in p])
    seq = [f, f.derivative()]
    while seq[-1].degree() > 0:
        r = seq[-2] % seq[-1]
        if r == 0:
            break
        seq.append(-r)
    lead = [1 if q.coeffs()[-1] > 0 else -1 for q in seq]
    at_pos = lead
    at_neg = [c * (-1) ** q.degree() for c, q in zip(lead, seq)]
    return at_pos, at_neg
