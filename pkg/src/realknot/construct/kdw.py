"""The knots K_d^w: one rational knot of degree ``d`` for every admissible writhe ``w``."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..config import DEFAULT, Tolerances
from ..curve import RatCurve, is_knot
from ..writhe import GenericityError, crossing_bound, encomplexed_writhe
from .arrangement import Line, build_counts, flip_counts
from .glue import GlueError, GlueSpec, glue

RETRIES = 8
SAMPLES = 6000
LOG_RANGE = 30
MIN_SCALE = 1024


class KdwError(RuntimeError):
    pass


def admissible(d: int, w: int) -> bool:
    m = crossing_bound(d)
    return d >= 1 and abs(w) <= m and (m - w) % 2 == 0


def admissible_pairs(max_degree: int) -> list[tuple[int, int]]:
    out = []
    for d in range(1, max_degree + 1):
        m = crossing_bound(d)
        out.extend((d, w) for w in range(-m, m + 1, 2))
    return out


def _affine_samples(C: RatCurve) -> tuple[np.ndarray, np.ndarray]:
    """Real points of ``C`` in the chart ``x0 = 1``.

    Gluing squeezes each piece into parameters of size ``r^k`` for integer ``k``,
    so the grid is logarithmic in ``|t/s|`` on both signs.
    """
    mag = np.logspace(-LOG_RANGE, LOG_RANGE, SAMPLES)
    x = np.concatenate([-mag[::-1], [0.0], mag])
    vals = np.array([np.polyval([float(c) for c in reversed(p.coeffs)], x) for p in C.coords])
    with np.errstate(divide="ignore", invalid="ignore"):
        pts = vals[1:] / vals[0]
    return x, pts.T


def _point_near(C: RatCurve, target, tol: float = 0.05) -> tuple[Fraction, tuple[Fraction, ...]]:
    """A rational parameter whose image is within ``tol`` of ``target`` (affine)."""
    x, pts = _affine_samples(C)
    tgt = np.array([float(v) for v in target])
    dist = np.linalg.norm(pts - tgt, axis=1)
    dist[~np.isfinite(dist)] = np.inf
    k = int(np.argmin(dist))
    lo, hi = x[max(k - 1, 0)], x[min(k + 1, len(x) - 1)]
    # golden-section refinement of the distance along the parameter
    f = lambda u: _dist(C, u, tgt)
    g = (np.sqrt(5) - 1) / 2
    a, b = lo, hi
    for _ in range(80):
        c, d = b - g * (b - a), a + g * (b - a)
        if f(c) < f(d):
            b = d
        else:
            a = c
    best = (a + b) / 2
    reach = f(best)
    if not reach < tol:
        raise KdwError("glued curve does not pass near the planned junction")
    for bits in (8, 12, 16, 20, 26, 32, 40, 52):
        q = _round_relative(best, bits)
        val = [p(q, Fraction(1)) for p in C.coords]
        if val[0] != 0 and _dist(C, float(q), tgt) < reach + 1e-4:
            return q, tuple(v / val[0] for v in val)
    raise KdwError("glued curve does not pass near the planned junction")


def _round_relative(x: float, bits: int) -> Fraction:
    """``x`` rounded to ``bits`` significant binary digits, exactly."""
    if x == 0:
        return Fraction(0)
    m, e = math.frexp(x)
    return Fraction(round(m * 2**bits)) * Fraction(2) ** (e - bits)


def _dist(C: RatCurve, u: float, tgt) -> float:
    v = [float(p(u)) for p in C.coords]
    if v[0] == 0:
        return np.inf
    return float(np.linalg.norm(np.array(v[1:]) / v[0] - tgt))


def glue_lines(
    lines: list[Line], tol: Tolerances = DEFAULT, seed: int = 0, scale: int = MIN_SCALE, verify: bool = True
) -> RatCurve:
    """Glue the lines left to right; each next line is re-anchored on the actual curve."""
    C = lines[0].curve()
    actual = lines[0]
    for k in range(1, len(lines)):
        planned = lines[k]
        target = actual.at_x(planned.base[0])  # junction on the line actually glued last
        if k == 1:
            q = (Fraction(1),) + tuple(target)
        else:
            _, q = _point_near(C, target)
        actual = Line(tuple(q[1:]), planned.direction)
        C = glue(GlueSpec(C, actual.curve(), q), tol, seed, min_scale=scale, verify=verify)
    return C


def kdw(d: int, w: int, seed: int = 0, tol: Tolerances = DEFAULT) -> RatCurve:
    """Knot of degree ``d`` and encomplexed writhe ``w``, verified before returning."""
    if not admissible(d, w):
        raise ValueError(
            f"(d, w) = ({d}, {w}) is not admissible: need |w| <= {crossing_bound(d)} with matching parity"
        )
    m = crossing_bound(d)
    counts = flip_counts(d, (m - w) // 2)
    last: Exception | None = None
    for attempt in range(RETRIES):
        try:
            # alternate a larger scale and a jittered staircase
            arr = build_counts(d, counts, seed=seed + attempt // 2 if attempt > 1 else None)
            scale = MIN_SCALE * 16 ** (attempt % 2 + attempt // 4)
            C = glue_lines(list(arr.lines), tol, seed, scale, verify=False)
            if not is_knot(C, tol):
                raise KdwError("glued curve is not embedded")
            got = encomplexed_writhe(C, seed, tol).writhe
            if got != w:
                raise KdwError(f"built writhe {got}, wanted {w}")
            return C
        except (KdwError, GlueError, GenericityError) as exc:
            last = exc
    raise KdwError(f"kdw({d}, {w}) failed after {RETRIES} attempts: {last}")
