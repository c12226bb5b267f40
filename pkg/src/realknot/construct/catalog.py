"""Named normal forms: degree-3 representatives, degree-4 walls, degree-5 edges."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.poly import HomPoly
from ..curve import Kind, RatCurve

T = HomPoly.linear_form(1, 0)
S = HomPoly.linear_form(0, 1)


def _lin(a, b) -> HomPoly:
    return HomPoly.linear_form(a, b)


class Stratum(str, enum.Enum):
    KNOT = "knot"
    WALL = "wall"
    EDGE = "edge"


@dataclass(frozen=True)
class KnownNode:
    kind: Kind
    params: tuple[tuple[complex, complex], tuple[complex, complex]]  # homogeneous (t, s)
    image: tuple[int, int, int, int]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    curve: RatCurve
    stratum: Stratum
    nodes: tuple[KnownNode, ...] = ()
    writhe: int | None = None  # knots only
    adjacent_writhes: tuple[int, ...] = ()  # sorted; walls and edges
    aliases: tuple[str, ...] = field(default=(), compare=False)


INF = (1, 0)
ZERO = (0, 1)
P03 = (0, 0, 0, 1)
P02 = (0, 0, 1, 0)


def _real(u, v, image):
    return KnownNode(Kind.REAL_REAL, (u, v), image)


def _solitary(z, image):
    return KnownNode(Kind.SOLITARY, ((z, 1), (z.conjugate(), 1)), image)


def _build() -> dict[str, CatalogEntry]:
    e: list[CatalogEntry] = []
    t3, s3 = T**3, S**3
    e.append(CatalogEntry("line", RatCurve((T, S, HomPoly.zero(1), HomPoly.zero(1))), Stratum.KNOT, writhe=0))
    e.append(
        CatalogEntry("circle", RatCurve((T * T + S * S, T * T - S * S, 2 * T * S, HomPoly.zero(2))), Stratum.KNOT, writhe=0)
    )
    e.append(CatalogEntry("deg3-plus", RatCurve((t3, S * T * T, S * S * T, s3)), Stratum.KNOT, writhe=1))
    e.append(CatalogEntry("deg3-minus", RatCurve((t3, S * T * T, S * S * T, -s3)), Stratum.KNOT, writhe=-1))

    head = (T * S**3, T**2 * S**2, T**3 * S)
    walls = {
        "deg4-wall-P1": (T**4 + S**4, (-1, 1)),
        "deg4-wall-P2": (T**4 - S**4, (1, 3)),
        "deg4-wall-P3": (-(T**4) - S**4, (-1, 1)),
        "deg4-wall-P4": (S**4 - T**4, (-3, -1)),
    }
    for name, (last, adj) in walls.items():
        e.append(CatalogEntry(name, RatCurve((*head, last)), Stratum.WALL, (_real(ZERO, INF, P03),), None, adj))

    q = T * T + S * S
    e.append(
        CatalogEntry(
            "deg4-solitary-wall",
            RatCurve((q * q, q * (T * T - S * S), 2 * T * S * q, S**4)),
            Stratum.WALL,
            (_solitary(1j, P03),),
            None,
            (-1, 1),
        )
    )

    q4 = T * T + 4 * S * S
    e.append(
        CatalogEntry(
            "deg5-edge-F",
            RatCurve((q * q4 * T, q * q4 * S, q * T * T * S, q4 * T * S * S)),
            Stratum.EDGE,
            (_solitary(2j, P02), _solitary(1j, P03)),
            None,
            (-2, 0, 0, 2),
            aliases=("deg5-2solitary", "deg5-1sol1nonsol", "deg5-2nonsol-F"),
        )
    )

    w = _lin(1, -1) * _lin(3, -1)
    for sgn, tag, adj in ((1, "plus", (-6, -4, -4, -2)), (-1, "minus", (2, 4, 4, 6))):
        e.append(
            CatalogEntry(
                f"deg5-edge-G-{tag}",
                RatCurve((T * T * S * w, T * S * S * w, sgn * T * T * S * S * _lin(3, -2), w * (t3 + s3))),
                Stratum.EDGE,
                (_real(ZERO, INF, P03), _real((1, 3), (1, 1), P02)),
                None,
                adj,
            )
        )

    d2 = T * T - S * S
    for s1, n1 in ((1, "plus"), (-1, "minus")):
        for s2, n2 in ((1, "plus"), (-1, "minus")):
            e.append(
                CatalogEntry(
                    f"deg5-edge-E-{n1}-{n2}",
                    RatCurve((T * T * S * d2, s1 * T * S * S * d2, T * T * S**3, d2 * (t3 + s2 * s3))),
                    Stratum.EDGE,
                    (_real(ZERO, INF, P03), _real((-1, 1), (1, 1), P02)),
                    None,
                    E_ADJACENT[(s1, s2)],
                )
            )
    return {x.name: x for x in e}


# Frozen from resolving both nodes in all four ways (only the x1 sign matters).
E_ADJACENT = {
    (1, 1): (-4, -2, -2, 0),
    (1, -1): (-4, -2, -2, 0),
    (-1, 1): (0, 2, 2, 4),
    (-1, -1): (0, 2, 2, 4),
}

_ENTRIES = _build()
_ALIASES = {a: x.name for x in _ENTRIES.values() for a in x.aliases}


def catalog_names(include_aliases: bool = False) -> list[str]:
    names = list(_ENTRIES)
    return names + sorted(_ALIASES) if include_aliases else names


def catalog(name: str) -> CatalogEntry:
    key = _ALIASES.get(name, name)
    try:
        return _ENTRIES[key]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names(True))}") from None
