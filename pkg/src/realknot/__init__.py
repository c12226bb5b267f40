"""Rational real algebraic knots in RP^3."""

__version__ = "0.1.0"
