"""Gluing, line arrangements, the knots of every writhe, normal forms and their resolutions."""

from .catalog import CatalogEntry, Stratum, catalog, catalog_names
from .perturb import PerturbationError, perturb

__all__ = ["CatalogEntry", "PerturbationError", "Stratum", "catalog", "catalog_names", "perturb"]
