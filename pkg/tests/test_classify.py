import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cached_kdw, form
from realknot.algebra import HomPoly, pgl_apply, random_pgl
from realknot.classify import (
    CLASS_TABLE,
    UNCLASSIFIED,
    ClassificationError,
    class_counts,
    classify,
    invariant_report,
    lookup,
)
from realknot.construct import catalog
from realknot.construct.kdw import admissible_pairs
from realknot.curve import RatCurve

TWISTED = RatCurve((form("t^3"), form("s*t^2"), form("s^2*t"), form("s^3")))
CIRCLE = RatCurve((form("t^2 + s^2"), form("t^2 - s^2"), form("2*t*s"), HomPoly.zero(2)))


def test_examples():
    assert str(classify(TWISTED)) == "(3, 1, unknot-line)"
    k = classify(cached_kdw(4, 3))
    assert (k.degree, k.writhe, k.name) == (4, 3, "twocrossing")
    k = classify(cached_kdw(5, 6))
    assert (k.degree, k.writhe, k.name) == (5, 6, "proj-5_3")


def test_class_counts():
    assert class_counts() == {1: 1, 2: 1, 3: 2, 4: 4, 5: 7}
    assert sum(class_counts().values()) == 15


def test_table_matches_admissible_pairs():
    table = sorted((d, w) for d, row in CLASS_TABLE.items() for w in row)
    assert table == sorted(admissible_pairs(5))


def test_names_are_mirror_paired():
    for d, row in CLASS_TABLE.items():
        for w, name in row.items():
            other = row[-w]
            if name.endswith("-mirror"):
                assert other == name.removesuffix("-mirror")
            elif other != name:
                assert other == name + "-mirror"


@pytest.mark.parametrize("d,w", admissible_pairs(5))
def test_round_trip(d, w):
    C = cached_kdw(d, w)
    k = classify(C)
    assert (k.degree, k.writhe) == (d, w)
    assert classify(C.mirror()).writhe == -w


def test_degree_six_refused():
    with pytest.raises(ClassificationError):
        classify(cached_kdw(6, 0))


def test_impossible_writhe_aborts():
    with pytest.raises(ClassificationError):
        lookup(4, 0)
    with pytest.raises(ClassificationError):
        lookup(5, 8)


def test_singular_curve_refused():
    with pytest.raises(ClassificationError):
        classify(catalog("deg4-wall-P1").curve)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(admissible_pairs(5)[2:]), st.integers(0, 10**6))
def test_classification_is_invariant(dw, seed):
    d, w = dw
    C = pgl_apply(random_pgl(4, seed, orientation=1), cached_kdw(d, w))
    assert classify(C, seed % 31).writhe == w


# -- reports ---------------------------------------------------------------------

def test_circle_report():
    r = invariant_report(CIRCLE)
    assert (r.degree, r.writhe, r.planar, r.on_quadric, r.null_homologous, r.knot_class) == (2, 0, True, True, True, "circle")


def test_twisted_cubic_report():
    r = invariant_report(TWISTED)
    assert not r.planar and r.on_quadric and not r.null_homologous
    assert r.as_dict()["null_homologous"] is False


def test_degree_six_report():
    r = invariant_report(cached_kdw(6, 10))
    assert (r.degree, r.writhe, r.knot_class) == (6, 10, UNCLASSIFIED)
    assert r.homology == 0
