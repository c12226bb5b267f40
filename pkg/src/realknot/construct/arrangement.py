"""Staircases of lines whose vertical projection has prescribed crossing signs.

Line ``k`` projects to the tangent of the parabola ``y = x^2`` at ``x = a_k``,
so every pair of projected lines crosses once, at ``x = (a_i + a_j) / 2``, and
no three are concurrent. Heights are affine in ``x``: ``z_k = h_k + b_k (x - J_k)``
where ``J_k`` is the junction with line ``k - 1``. Changing the slope ``b_k``
pivots line ``k`` about that junction. All crossings of line ``k`` with
earlier non-neighbours lie on the same side of the pivot, so lowering ``b_k``
lifts line ``k`` over them one at a time in threshold order.

Line ``k`` is oriented by ``o_k * (increasing x)`` with ``o_k = +-1``. Crossing
``(i, j)`` with ``i < j`` then has sign ``o_i o_j`` when line ``i`` passes over
line ``j`` and ``-o_i o_j`` otherwise. Reversing a line costs nothing when gluing
(any two orientations have an oriented smoothing), and it makes flip sets
reachable that pivoting alone cannot produce, e.g. ``{(1, 4)}`` for ``d = 4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from ..algebra.poly import HomPoly
from ..curve import RatCurve

T = HomPoly.linear_form(1, 0)
S = HomPoly.linear_form(0, 1)
MARGIN = Fraction(1)
JITTER_TRIES = 6  # perturbed tangency points tried when the regular staircase is blocked


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Line:
    base: tuple[Fraction, Fraction, Fraction]  # affine point (x, y, z)
    direction: tuple[Fraction, Fraction, Fraction]

    @property
    def orientation(self) -> int:
        return 1 if self.direction[0] > 0 else -1

    def at_x(self, x) -> tuple[Fraction, Fraction, Fraction]:
        lam = (x - self.base[0]) / self.direction[0]
        return tuple(b + lam * v for b, v in zip(self.base, self.direction))

    def height(self, x) -> Fraction:
        return self.at_x(x)[2]

    def curve(self) -> RatCurve:
        """``s * (1, base) + t * (0, direction)``; increasing ``t/s`` follows the direction."""
        p = (Fraction(1),) + tuple(self.base)
        f = (Fraction(0),) + tuple(self.direction)
        return RatCurve(tuple(S.scale(a) + T.scale(b) for a, b in zip(p, f)))


@dataclass(frozen=True)
class LineArrangement:
    lines: tuple[Line, ...]
    junctions: tuple[tuple[Fraction, Fraction, Fraction], ...]
    slope_schedule: tuple[Fraction, ...]
    tangency: tuple[Fraction, ...]  # the a_k

    @property
    def degree(self) -> int:
        return len(self.lines)

    def crossing_x(self, i: int, j: int) -> Fraction:
        return (self.tangency[i - 1] + self.tangency[j - 1]) / 2

    def crossing_sign(self, i: int, j: int) -> int:
        """Sign of the projected crossing of lines ``i < j`` (1-based, not neighbours)."""
        x = self.crossing_x(i, j)
        li, lj = self.lines[i - 1], self.lines[j - 1]
        zi, zj = li.height(x), lj.height(x)
        if zi == zj:
            raise ArrangementError(f"lines {i} and {j} meet")
        return (1 if zi > zj else -1) * li.orientation * lj.orientation

    def crossings(self) -> dict[tuple[int, int], int]:
        d = self.degree
        return {(i, j): self.crossing_sign(i, j) for i in range(1, d + 1) for j in range(i + 2, d + 1)}

    @property
    def flips(self) -> frozenset[tuple[int, int]]:
        return frozenset(k for k, v in self.crossings().items() if v < 0)

    @property
    def writhe(self) -> int:
        return sum(self.crossings().values())

    def check(self) -> None:
        """Consecutive lines meet at their junction, others are skew, images distinct."""
        for k in range(1, self.degree):
            a, b = self.lines[k - 1], self.lines[k]
            x = self.junctions[k - 1][0]
            if a.at_x(x) != b.at_x(x) or a.at_x(x) != self.junctions[k - 1]:
                raise ArrangementError(f"lines {k} and {k + 1} miss their junction")
        self.crossings()
        pts = {(self.crossing_x(i, j), self.lines[i - 1].at_x(self.crossing_x(i, j))[1])
               for i in range(1, self.degree + 1) for j in range(i + 1, self.degree + 1)}
        if len(pts) != self.degree * (self.degree - 1) // 2:
            raise ArrangementError("projected crossings coincide")


# (line j, thresholds, orientations so far) -> options (o_j, earlier lines j passes over)
Chooser = Callable[[int, list[tuple[int, Fraction]], list[int]], Iterable[tuple[int, set[int]]]]


def _thresholds(lines: list[Line], a: list[Fraction], j: int, pivot_x: Fraction, h: Fraction):
    """Slope below which line ``j`` passes over line ``i``, for each earlier non-neighbour."""
    out = []
    for i in range(1, j - 1):
        x = (a[i - 1] + a[j - 1]) / 2
        out.append((i, (h - lines[i - 1].height(x)) / (pivot_x - x)))
    return out


def _slope_candidates(taus: list[tuple[int, Fraction]], flipped: set[int]) -> list[Fraction]:
    """Slopes realizing ``flipped`` for the new line, best first; empty when impossible."""
    up = [t for i, t in taus if i in flipped]
    down = [t for i, t in taus if i not in flipped]
    if up and down:
        lo, hi = max(down), min(up)
        if not lo < hi:
            return []
        w = hi - lo
        return [lo + w / 2, lo + w / 4, lo + 3 * w / 4]
    if up:
        m = min(up)
        return [m - MARGIN, m - 4 * MARGIN, m - MARGIN / 4]
    if down:
        m = max(down)
        return [m + MARGIN, m + 4 * MARGIN, m + MARGIN / 4]
    return [Fraction(x) for x in (-1, 1, 3, -3, 8, -8)]


def _tangency(d: int, seed: int | None) -> list[Fraction]:
    a = [Fraction(k) for k in range(1, d + 1)]
    if seed:
        rng = np.random.default_rng([seed, 31337])
        a = [x + Fraction(int(rng.integers(-20, 21)), 100) for x in a]
    return a


def build_with(d: int, choose: Chooser, seed: int | None = None) -> LineArrangement:
    """Place lines one at a time, searching orientations and slopes depth first.

    ``choose`` lists, per line, the acceptable (orientation, over-set) options;
    a choice blocked by the earlier placement backtracks into it.
    """
    if d < 1:
        raise ValueError("need at least one line")
    a = _tangency(d, seed)
    first = Line((a[0], a[0] ** 2, Fraction(0)), (Fraction(1), 2 * a[0], Fraction(0)))

    def place(lines: list[Line], junctions: list, slopes: list):
        j = len(lines) + 1
        if j > d:
            return lines, junctions, slopes
        px = (a[j - 2] + a[j - 1]) / 2
        J = lines[-1].at_x(px)
        taus = _thresholds(lines, a, j, px, J[2])
        for o, over in choose(j, taus, [ln.orientation for ln in lines]):
            for b in _slope_candidates(taus, over):
                line = Line(J, (Fraction(o), 2 * a[j - 1] * o, b * o))
                got = place(lines + [line], junctions + [J], slopes + [b])
                if got is not None:
                    return got
        return None

    got = place([first], [], [Fraction(0)])
    if got is None:
        raise ArrangementError("flip set is not realizable by pivoting lines about their junctions")
    lines, junctions, slopes = got
    arr = LineArrangement(tuple(lines), tuple(junctions), tuple(slopes), tuple(a))
    arr.check()
    return arr


def build_arrangement(d: int, flips: Iterable[tuple[int, int]] = (), seed: int | None = None) -> LineArrangement:
    """Arrangement whose negative crossings are exactly ``flips`` (pairs ``i < j - 1``, 1-based)."""
    if d < 2:
        raise ValueError("d must be at least 2")
    flips = {tuple(sorted(p)) for p in flips}
    for i, j in flips:
        if not (1 <= i and j <= d and j > i + 1):
            raise ValueError(f"({i}, {j}) is not a pair of non-consecutive lines")
    def choose(j, taus, orient):
        for o in (1, -1):
            # line j over line i  <=>  sign(i, j) = -o_i o_j
            yield o, {i for i, _ in taus if ((i, j) in flips) == (orient[i - 1] * o > 0)}

    tries = [seed] if seed is not None else [None, *range(1, JITTER_TRIES + 1)]
    for k, sd in enumerate(tries):
        try:
            arr = build_with(d, choose, sd)
            break
        except ArrangementError:
            if k == len(tries) - 1:
                raise
    if arr.flips != flips:
        raise ArrangementError("flip set not realized")
    return arr


def flip_counts(d: int, f: int) -> list[int]:
    """Spread ``f`` flips over lines 3..d, filling later lines first (line j has j-2 crossings)."""
    counts = [0] * (d + 1)
    for j in range(d, 2, -1):
        take = min(f, j - 2)
        counts[j] = take
        f -= take
    if f:
        raise ValueError("too many flips")
    return counts


def build_counts(d: int, counts: list[int], seed: int | None = None) -> LineArrangement:
    """Line ``j`` goes over the ``counts[j]`` earlier lines with the largest thresholds."""

    def choose(j, taus, orient):
        order = sorted(taus, key=lambda it: it[1], reverse=True)
        yield 1, {i for i, _ in order[: counts[j]]}

    return build_with(d, choose, seed)
