"""Numeric tolerances shared by the analysis modules."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    root: float = 1e-12  # root refinement residual
    residual: float = 1e-9  # double-point acceptance
    pairing: float = 1e-8  # conjugate pairing / realness
    distinct: float = 1e-7  # distinct parameters, chordal metric
    tangency: float = 1e-7  # relative singular value for dependent tangents


DEFAULT = Tolerances()
