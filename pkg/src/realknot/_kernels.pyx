# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the numeric hot loops (see ``_kernels_py`` for docs)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, INFINITY

cdef extern from "complex.h":
    double cabs(double complex)


def aberth(coeffs, init, int maxiter=500, double tol=1e-14):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.array(init, dtype=np.complex128)
    cdef int n = c.shape[0] - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dc = np.empty(max(n, 1), dtype=np.complex128)
    cdef int i, j, k, it
    cdef double complex zi, p, dp, ratio, acc, diff, denom, w
    cdef bint done
    for k in range(n):
        dc[k] = c[k] * (n - k)
    for it in range(1, maxiter + 1):
        done = True
        for i in range(n):
            zi = z[i]
            p = c[0]
            for k in range(1, n + 1):
                p = p * zi + c[k]
            if p == 0:
                continue
            dp = dc[0]
            for k in range(1, n):
                dp = dp * zi + dc[k]
            if dp != 0:
                ratio = p / dp
            else:
                ratio = 1e300
            acc = 0
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        acc = acc + 1.0 / diff
            denom = 1.0 - ratio * acc
            if denom != 0:
                w = ratio / denom
            else:
                w = ratio
            z[i] = zi - w
            if cabs(w) > tol * (1.0 + cabs(zi)):
                done = False
        if done:
            return z, True, it
    return z, False, maxiter


def minor_grid(coeffs, us, vs):
    cdef double[:, ::1] cf = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double complex[::1] U = np.ascontiguousarray(us, dtype=np.complex128)
    cdef double complex[::1] V = np.ascontiguousarray(vs, dtype=np.complex128)
    cdef int k = cf.shape[0]
    cdef int nu = U.shape[0]
    cdef int nv = V.shape[0]
    # real and imaginary parts split so the inner loop is plain double arithmetic
    cdef double[:, ::1] ur = np.empty((nu, k)), ui = np.empty((nu, k))
    cdef double[:, ::1] vr = np.empty((nv, k)), vi = np.empty((nv, k))
    cdef double[::1] su = np.empty(nu), sv = np.empty(nv)
    out_arr = np.empty((nu, nv))
    cdef double[:, ::1] out = out_arr
    _evaluate(cf, U, ur, ui, su)
    _evaluate(cf, V, vr, vi, sv)
    cdef int i, j, a, b
    cdef double best, m2, re, im, dr, di, den
    for i in range(nu):
        for j in range(nv):
            best = 0
            for a in range(k):
                for b in range(a + 1, k):
                    re = (ur[i, a] * vr[j, b] - ui[i, a] * vi[j, b]) - (ur[i, b] * vr[j, a] - ui[i, b] * vi[j, a])
                    im = (ur[i, a] * vi[j, b] + ui[i, a] * vr[j, b]) - (ur[i, b] * vi[j, a] + ui[i, b] * vr[j, a])
                    m2 = re * re + im * im
                    if m2 > best:
                        best = m2
            dr = U[i].real - V[j].real
            di = U[i].imag - V[j].imag
            # su, sv hold |P|^2 / (1 + |z|^2); the product is (|P(u)||P(v)| chord)^2 / |u - v|^2
            den = su[i] * sv[j] * (dr * dr + di * di)
            if den > 0:
                out[i, j] = sqrt(best / den)
            else:
                out[i, j] = INFINITY
    return out_arr


cdef void _evaluate(double[:, ::1] cf, double complex[::1] Z, double[:, ::1] zr, double[:, ::1] zi, double[::1] scale):
    cdef int k = cf.shape[0]
    cdef int d = cf.shape[1] - 1
    cdef int i, a, e
    cdef double xr, xi, pr, pi, t, nrm
    for i in range(Z.shape[0]):
        xr = Z[i].real
        xi = Z[i].imag
        nrm = 0
        for a in range(k):
            pr = cf[a, d]
            pi = 0
            for e in range(d - 1, -1, -1):
                t = pr * xr - pi * xi + cf[a, e]
                pi = pr * xi + pi * xr
                pr = t
            zr[i, a] = pr
            zi[i, a] = pi
            nrm += pr * pr + pi * pi
        scale[i] = nrm / (1 + xr * xr + xi * xi)
