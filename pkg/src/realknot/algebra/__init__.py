"""Exact polynomial and projective-linear kernel."""

from .linalg import det, inverse, nullspace, rank
from .pgl import ProjTransform, pgl_apply, random_pgl, reparametrize
from .poly import HomPoly, Rational, forms_gcd, poly_arith, poly_gcd, resultant
from .roots import ComplexParam, RootFindingError, complex_roots, real_root_count

__all__ = [
    "ComplexParam",
    "HomPoly",
    "ProjTransform",
    "Rational",
    "RootFindingError",
    "complex_roots",
    "det",
    "forms_gcd",
    "inverse",
    "nullspace",
    "pgl_apply",
    "poly_arith",
    "poly_gcd",
    "random_pgl",
    "rank",
    "real_root_count",
    "reparametrize",
    "resultant",
]
