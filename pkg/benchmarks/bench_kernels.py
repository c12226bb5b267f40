"""Compare the compiled kernels with the numpy fallback.

Run ``python benchmarks/bench_kernels.py``. Prints the best of several
timings per kernel and backend, and the speedup. Exits non-zero if the
extension is missing or the two backends disagree.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from realknot import _kernels_py

try:
    from realknot import _kernels as _compiled
except ImportError:
    _compiled = None


def _aberth_case(degree: int, rng):
    coeffs = list(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))
    radius = 1 + max(abs(c) for c in coeffs[1:]) / abs(coeffs[0])
    return coeffs, _kernels_py.initial_circle(degree, radius)


def _grid_case(n: int, rng):
    coeffs = rng.normal(size=(3, 6))
    zs = rng.normal(size=n) + 1j * rng.normal(size=n)
    return coeffs, zs


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    rng = np.random.default_rng(0)
    rows = []
    for degree in (10, 40, 120):
        coeffs, init = _aberth_case(degree, rng)
        zp, _, _ = _kernels_py.aberth(coeffs, init)
        zc, _, _ = _compiled.aberth(coeffs, init)
        if not np.allclose(np.sort_complex(zp), np.sort_complex(zc), atol=1e-8):
            print(f"aberth backends disagree at degree {degree}", file=sys.stderr)
            return 1
        rows.append((f"aberth degree {degree}", _best(lambda: _kernels_py.aberth(coeffs, init), args.repeat),
                     _best(lambda: _compiled.aberth(coeffs, init), args.repeat)))
    for n in (200, 800):
        coeffs, zs = _grid_case(n, rng)
        if not np.allclose(_kernels_py.minor_grid(coeffs, zs, zs), _compiled.minor_grid(coeffs, zs, zs), rtol=1e-9):
            print(f"minor_grid backends disagree at n={n}", file=sys.stderr)
            return 1
        rows.append((f"minor_grid {n}x{n}", _best(lambda: _kernels_py.minor_grid(coeffs, zs, zs), args.repeat),
                     _best(lambda: _compiled.minor_grid(coeffs, zs, zs), args.repeat)))
    print(f"{'kernel':<22}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for name, tp, tc in rows:
        print(f"{name:<22}{tp * 1e3:>14.2f}{tc * 1e3:>14.2f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
