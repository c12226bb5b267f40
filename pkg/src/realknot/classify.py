"""Rigid isotopy classes of rational knots of degree at most 5.

Up to degree 5 the pair (degree, encomplexed writhe) is a complete invariant,
so classification is a table lookup. Degree 4 carries writhes {+-1, +-3}: the
writhe of a degree-d knot is congruent to (d-1)(d-2)/2 mod 2.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .config import DEFAULT, Tolerances
from .curve import RatCurve, is_knot, is_planar, quadric_containment
from .writhe import encomplexed_writhe

MAX_CLASSIFIED_DEGREE = 5
UNCLASSIFIED = "unclassified (d>5)"

CLASS_TABLE: dict[int, dict[int, str]] = {
    1: {0: "line"},
    2: {0: "circle"},
    3: {-1: "unknot-line", 1: "unknot-line"},
    4: {-3: "twocrossing-mirror", -1: "unknot-circle", 1: "unknot-circle", 3: "twocrossing"},
    5: {
        -6: "proj-5_3-mirror",
        -4: "long-trefoil-mirror",
        -2: "unknot-line",
        0: "unknot-line",
        2: "unknot-line",
        4: "long-trefoil",
        6: "proj-5_3",
    },
}


class ClassificationError(ValueError):
    """Raised for curves outside the classified range or with impossible writhes."""


@dataclass(frozen=True)
class KnotClass:
    degree: int
    writhe: int
    name: str

    def __str__(self) -> str:
        return f"({self.degree}, {self.writhe}, {self.name})"


def class_counts() -> dict[int, int]:
    """Number of rigid isotopy classes per degree."""
    return {d: len(row) for d, row in CLASS_TABLE.items()}


def lookup(degree: int, writhe: int) -> KnotClass:
    if degree > MAX_CLASSIFIED_DEGREE:
        raise ClassificationError(f"degree {degree} > {MAX_CLASSIFIED_DEGREE}: writhe does not determine the class")
    row = CLASS_TABLE.get(degree)
    if row is None or writhe not in row:
        # a computed writhe outside the table means a bug upstream
        raise ClassificationError(f"no knot of degree {degree} has writhe {writhe}")
    return KnotClass(degree, writhe, row[writhe])


def classify(C: RatCurve, seed: int = 0, tol: Tolerances = DEFAULT) -> KnotClass:
    if C.degree > MAX_CLASSIFIED_DEGREE:
        raise ClassificationError(f"degree {C.degree} > {MAX_CLASSIFIED_DEGREE}: writhe does not determine the class")
    verdict = is_knot(C, tol)
    if not verdict:
        raise ClassificationError(f"not a knot: {verdict.failure_witness}")
    return lookup(C.degree, encomplexed_writhe(C, seed, tol).writhe)


@dataclass(frozen=True)
class InvariantReport:
    degree: int
    writhe: int
    planar: bool
    on_quadric: bool
    homology: int  # class in H_1(RP^3) = Z/2
    knot_class: str

    @property
    def null_homologous(self) -> bool:
        return self.homology == 0

    def as_dict(self) -> dict:
        out = asdict(self)
        out["null_homologous"] = self.null_homologous
        return out


def invariant_report(C: RatCurve, seed: int = 0, tol: Tolerances = DEFAULT) -> InvariantReport:
    verdict = is_knot(C, tol)
    if not verdict:
        raise ClassificationError(f"not a knot: {verdict.failure_witness}")
    w = encomplexed_writhe(C, seed, tol).writhe
    name = lookup(C.degree, w).name if C.degree <= MAX_CLASSIFIED_DEGREE else UNCLASSIFIED
    return InvariantReport(
        degree=C.degree,
        writhe=w,
        planar=is_planar(C)[0],
        on_quadric=quadric_containment(C) is not None,
        homology=C.degree % 2,
        knot_class=name,
    )
