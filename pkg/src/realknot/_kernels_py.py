"""Pure-Python/numpy versions of the numeric hot loops.

Same signatures as the compiled ``_kernels`` module; used when the extension
is not built.
"""

import cmath
import math

import numpy as np


def aberth(coeffs, init, maxiter=500, tol=1e-14):
    """Simultaneous Aberth-Ehrlich iteration.

    ``coeffs`` are descending complex coefficients of a polynomial of degree
    ``n = len(init)``. Returns ``(roots, converged, iterations)``.
    """
    c = [complex(x) for x in coeffs]
    n = len(c) - 1
    dc = [c[k] * (n - k) for k in range(n)]
    z = [complex(x) for x in init]
    for it in range(1, maxiter + 1):
        done = True
        for i in range(n):
            zi = z[i]
            p = c[0]
            for k in range(1, n + 1):
                p = p * zi + c[k]
            dp = dc[0]
            for k in range(1, n):
                dp = dp * zi + dc[k]
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else complex(1e300, 0)
            acc = 0j
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        acc += 1.0 / diff
            denom = 1.0 - ratio * acc
            w = ratio / denom if denom != 0 else ratio
            z[i] = zi - w
            if abs(w) > tol * (1.0 + abs(zi)):
                done = False
        if done:
            return np.array(z, dtype=complex), True, it
    return np.array(z, dtype=complex), False, maxiter


def minor_grid(coeffs, us, vs):
    """Normalized maximal 2x2 minor of ``[P(u); P(v)]`` over all grid pairs.

    ``coeffs`` is a ``(k, d+1)`` real array of ascending affine coefficients,
    ``us``/``vs`` complex sample points. The value at ``(i, j)`` is
    ``max |P_a(u)P_b(v) - P_b(u)P_a(v)| / (|P(u)| |P(v)| chord(u, v))`` where
    ``chord`` is the chordal distance on the Riemann sphere.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    us = np.asarray(us, dtype=complex)
    vs = np.asarray(vs, dtype=complex)
    pu = np.stack([np.polyval(row[::-1], us) for row in coeffs])  # (k, nu)
    pv = np.stack([np.polyval(row[::-1], vs) for row in coeffs])
    nu = np.linalg.norm(pu, axis=0)
    nv = np.linalg.norm(pv, axis=0)
    k = coeffs.shape[0]
    best = np.zeros((us.size, vs.size))
    for a in range(k):
        for b in range(a + 1, k):
            m = np.abs(np.outer(pu[a], pv[b]) - np.outer(pu[b], pv[a]))
            np.maximum(best, m, out=best)
    chord = np.abs(us[:, None] - vs[None, :]) / (
        np.sqrt(1 + np.abs(us) ** 2)[:, None] * np.sqrt(1 + np.abs(vs) ** 2)[None, :]
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        out = best / (nu[:, None] * nv[None, :] * chord)
    out[~np.isfinite(out)] = math.inf
    return out


def initial_circle(n, radius, phase=0.4):
    return [radius * cmath.exp(1j * (2 * math.pi * k / n + phase)) for k in range(n)]
