"""Brute-force double points, independent of the elimination in :mod:`curve`.

Both parameters run over a latitude/longitude grid of the Riemann sphere.
Local minima of the normalized 2x2 minors of ``[P(u); P(v)]`` seed a complex
Newton iteration on the minors divided by ``det(u, v)``, each variable taken
in whichever chart ``(x : 1)`` or ``(1 : x)`` keeps ``|x| <= 1``. Only used
as a test oracle: it is slow and has no completeness guarantee.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra.roots import ComplexParam
from .curve import Kind, RatCurve
from .kernels import minor_grid

N_LAT = 24
N_LON = 48
NEWTON_STEPS = 60
GIVE_UP = 12  # abandon seeds still far from a solution after this many steps


@dataclass(frozen=True)
class OracleNode:
    params: tuple[ComplexParam, ComplexParam]
    kind: Kind


def _grid(n_lat: int, n_lon: int) -> np.ndarray:
    lat = (np.arange(n_lat) + 0.5) * np.pi / n_lat
    lon = np.arange(n_lon) * 2 * np.pi / n_lon
    # stereographic image of the sphere point at polar angle lat
    return (np.tan(lat / 2)[:, None] * np.exp(1j * lon)[None, :]).ravel()


def _local_minima(vals: np.ndarray) -> np.ndarray:
    """Boolean mask of 4-d local minima; longitude axes wrap, latitude axes do not."""
    padded = np.pad(vals, [(1, 1), (0, 0), (1, 1), (0, 0)], constant_values=np.inf)
    core = (slice(1, -1), slice(None), slice(1, -1), slice(None))
    mask = np.ones(vals.shape, dtype=bool)
    for shift in itertools.product((-1, 0, 1), repeat=4):
        if shift == (0, 0, 0, 0):
            continue
        moved = np.roll(padded, shift, axis=(0, 1, 2, 3))[core]
        mask &= vals <= moved
    return mask


class _Chart:
    """A curve coordinate vector evaluated in chart ``(x : 1)`` or ``(1 : x)``."""

    def __init__(self, coeffs: np.ndarray):
        self.asc = coeffs  # coefficient of t^k s^(d-k) at column k
        self.desc = coeffs[:, ::-1]

    def hom(self, chart: int, x: complex) -> tuple[complex, complex]:
        return (x, 1) if chart == 0 else (1, x)

    def value(self, chart: int, x: complex) -> np.ndarray:
        table = self.asc if chart == 0 else self.desc
        return np.array([np.polyval(row[::-1], x) for row in table])


def _residual(ch: _Chart, c1, x1, c2, x2) -> np.ndarray:
    p, q = ch.value(c1, x1), ch.value(c2, x2)
    (t1, s1), (t2, s2) = ch.hom(c1, x1), ch.hom(c2, x2)
    det = t1 * s2 - t2 * s1
    k = len(p)
    minors = [p[a] * q[b] - p[b] * q[a] for a in range(k) for b in range(a + 1, k)]
    return np.array(minors) / (det * np.linalg.norm(p) * np.linalg.norm(q))


def _newton(ch: _Chart, u: complex, v: complex):
    c1, x1 = (0, u) if abs(u) <= 1 else (1, 1 / u)
    c2, x2 = (0, v) if abs(v) <= 1 else (1, 1 / v)
    h = 1e-7
    for it in range(NEWTON_STEPS):
        f = _residual(ch, c1, x1, c2, x2)
        if it >= GIVE_UP and np.max(np.abs(f)) > 1e-3:
            return None
        J = np.stack([(_residual(ch, c1, x1 + h, c2, x2) - f) / h, (_residual(ch, c1, x1, c2, x2 + h) - f) / h], axis=1)
        step = np.linalg.lstsq(J, -f, rcond=None)[0]
        x1, x2 = x1 + step[0], x2 + step[1]
        if abs(x1) > 1.5:
            c1, x1 = 1 - c1, 1 / x1
        if abs(x2) > 1.5:
            c2, x2 = 1 - c2, 1 / x2
        if np.max(np.abs(step)) < 1e-15:
            break
    if np.max(np.abs(_residual(ch, c1, x1, c2, x2))) > 1e-10:
        return None
    return ComplexParam.from_homogeneous(*ch.hom(c1, x1)), ComplexParam.from_homogeneous(*ch.hom(c2, x2))


def _kind(u: ComplexParam, v: ComplexParam, tol: float) -> Kind:
    if u.is_real(tol) and v.is_real(tol):
        return Kind.REAL_REAL
    if u.distance(v.conjugate()) < tol:
        return Kind.SOLITARY
    return Kind.IMAGINARY_PAIR


def oracle_double_points(C: RatCurve | list, n_lat: int = N_LAT, n_lon: int = N_LON, tol: float = 1e-8) -> list[OracleNode]:
    """Unordered parameter pairs with equal images, found by grid search and Newton."""
    coords = C.coords if isinstance(C, RatCurve) else C
    coeffs = np.array([[float(c) for c in p.coeffs] for p in coords])
    ch = _Chart(coeffs)
    zs = _grid(n_lat, n_lon)
    vals = minor_grid(coeffs, zs, zs).reshape(n_lat, n_lon, n_lat, n_lon)
    seeds = np.argwhere(_local_minima(vals))
    found: list[tuple[ComplexParam, ComplexParam]] = []
    for i, j, k, m in seeds:
        u, v = zs[i * n_lon + j], zs[k * n_lon + m]
        sol = _newton(ch, u, v)
        if sol is None or sol[0].distance(sol[1]) < 1e-6:
            continue
        a, b = sol
        if any((a.distance(x) < 1e-7 and b.distance(y) < 1e-7) or (a.distance(y) < 1e-7 and b.distance(x) < 1e-7) for x, y in found):
            continue
        found.append(sol)
    return [OracleNode((a, b), _kind(a, b, tol)) for a, b in found]
