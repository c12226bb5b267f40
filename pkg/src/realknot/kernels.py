"""Numeric hot loops, compiled when available.

The Cython extension ``realknot._kernels`` is preferred; if it was not built
(or ``REALKNOT_PURE_PYTHON`` is set) the numpy fallback is used. ``BACKEND``
names the active implementation.
"""

import os

from . import _kernels_py

if os.environ.get("REALKNOT_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

aberth = _impl.aberth
minor_grid = _impl.minor_grid
initial_circle = _kernels_py.initial_circle

__all__ = ["aberth", "minor_grid", "initial_circle", "BACKEND"]
