from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cached_kdw, form
from realknot.algebra import HomPoly, pgl_apply, random_pgl
from realknot.algebra.pgl import reparametrize
from realknot.algebra.roots import ComplexParam
from realknot.construct import catalog
from realknot.curve import (
    QUADRIC_MONOMIALS,
    DegenerateCurveError,
    Kind,
    RatCurve,
    double_points,
    evaluate_quadric,
    infinity_points,
    is_knot,
    is_planar,
    normalize_infinity,
    primitivize,
    quadric_containment,
    quadric_space,
)
from realknot.oracle import oracle_double_points


def curve(*texts):
    return RatCurve(tuple(form(x) for x in texts))


TWISTED = curve("t^3", "s*t^2", "s^2*t", "s^3")
P1 = curve("t*s^3", "t^2*s^2", "t^3*s", "t^4 + s^4")
SOLITARY_WALL = curve("(t^2 + s^2)^2", "(t^2 + s^2)*(t^2 - s^2)", "2*t*s*(t^2 + s^2)", "s^4")
KNOT_PAIRS = [(3, 1), (4, 1), (4, -3), (5, 2), (5, -6)]


def _same_point(a, b, tol=1e-9) -> bool:
    k = max(range(len(a)), key=lambda i: abs(a[i]))
    return abs(b[k]) > 0 and all(abs(x * b[k] - y * a[k]) < tol * abs(a[k]) * max(1, abs(b[k])) for x, y in zip(a, b))


# -- primitivize -----------------------------------------------------------------

def test_primitivize_divides_common_factor():
    C = primitivize([form("t*t^3"), form("t*s*t^2"), form("t*s^2*t"), form("t*s^3")])
    assert C == TWISTED


def test_primitivize_keeps_primitive_input():
    assert primitivize(TWISTED.coords) == TWISTED


def test_primitivize_collapses_to_a_line():
    raw = [form("(t^2 + s^2)*t"), form("(t^2 + s^2)*s"), form("(t^2 + s^2)*t"), form("(t^2 + s^2)*s")]
    C = primitivize(raw)
    assert C.degree == 1
    assert C == curve("t", "s", "t", "s")


def test_primitivize_rejects_zero():
    with pytest.raises(ValueError):
        primitivize([HomPoly.zero(2)] * 4)


def test_ratcurve_rejects_common_factor():
    with pytest.raises(ValueError):
        curve("t^2", "t*s", "t^2", "t*s")


# -- double points ---------------------------------------------------------------

def test_twisted_cubic_has_no_double_points():
    assert double_points(TWISTED) == []


def test_wall_p1_node():
    (dp,) = double_points(P1)
    assert dp.kind == Kind.REAL_REAL
    got = sorted(dp.params, key=lambda p: p.infinite)
    assert got[0].distance(ComplexParam(0)) < 1e-9 and got[1].infinite
    assert _same_point(dp.image, (0, 0, 0, 1))


def test_solitary_wall_node():
    (dp,) = double_points(SOLITARY_WALL)
    assert dp.kind == Kind.SOLITARY
    assert sorted(p.value.imag for p in dp.params) == pytest.approx([-1, 1])
    assert _same_point(dp.image, (0, 0, 0, 1))


@pytest.mark.parametrize("name", ["deg5-edge-F", "deg5-edge-G-plus", "deg5-edge-E-plus-minus"])
def test_catalog_census(name):
    entry = catalog(name)
    got = double_points(entry.curve)
    assert sorted(dp.kind for dp in got) == sorted(n.kind for n in entry.nodes)
    for node in entry.nodes:
        assert any(_same_point(dp.image, node.image) for dp in got)


def test_double_cover_is_degenerate():
    with pytest.raises(DegenerateCurveError):
        double_points([form("t^2"), form("s^2"), form("t^2 + s^2"), form("t^2 - s^2")])


def test_too_few_coordinates():
    with pytest.raises(ValueError):
        double_points([form("t"), form("s")])


def test_wall_agrees_with_oracle():
    fast = double_points(P1)
    slow = oracle_double_points(P1)
    assert [dp.kind for dp in fast] == [n.kind for n in slow]


@pytest.mark.parametrize("d,w", KNOT_PAIRS)
def test_projected_census(d, w):
    """A generic plane projection of a degree d knot has (d-1)(d-2)/2 nodes."""
    C = pgl_apply(random_pgl(4, d * 100 + w), cached_kdw(d, w))
    nodes = double_points(C.coords[:3])
    assert len(nodes) == (d - 1) * (d - 2) // 2


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_double_points_invariant_under_reparametrization(seed):
    M = random_pgl(2, seed)
    a, b, c, e = [x for row in M.matrix for x in row]
    plane = [form("t^4 + s^4"), form("t^3*s - 2*t*s^3"), form("t^2*s^2 + s^4")]
    before = double_points(plane)
    after = double_points(reparametrize(plane, a, b, c, e))
    assert sorted(dp.kind for dp in before) == sorted(dp.kind for dp in after)
    # images are unchanged by a change of parameter
    for dp in before:
        assert any(_same_point(dp.image, q.image, 1e-7) for q in after)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_double_point_images_follow_ambient_transform(seed):
    T = random_pgl(4, seed)
    moved = double_points(pgl_apply(T, P1))
    (dp,) = moved
    target = [float(T.matrix[i][3]) for i in range(4)]
    assert _same_point(dp.image, target, 1e-7)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=12, max_size=12))
def test_double_points_invariants(cs):
    coords = [HomPoly.from_coeffs(cs[4 * i:4 * i + 4]) for i in range(3)]
    try:
        dps = double_points(coords)
    except (ValueError, DegenerateCurveError):
        return
    for dp in dps:
        u, v = dp.params
        assert u.distance(v) > 1e-7
        pu = [complex(p(*u.homogeneous())) for p in coords]
        pv = [complex(p(*v.homogeneous())) for p in coords]
        assert _same_point(pu, pv, 1e-6)
        if dp.kind == Kind.SOLITARY:
            assert u.distance(v.conjugate()) < 1e-8
            assert all(x.imag == 0 for x in dp.image)
        if dp.kind == Kind.REAL_REAL:
            assert u.is_real(1e-8) and v.is_real(1e-8)
        # closed under conjugation
        conj = dp.conjugate()
        assert any(
            {a.distance(b) < 1e-7 for a, b in zip(sorted_params(conj), sorted_params(q))} == {True} for q in dps
        )


def sorted_params(dp):
    return sorted(dp.params, key=lambda p: (p.infinite, round(p.value.real, 6), round(p.value.imag, 6)))


# -- is_knot ---------------------------------------------------------------------

def test_twisted_cubic_is_a_knot():
    v = is_knot(TWISTED)
    assert v.is_knot and v.failure_witness is None


def test_wall_is_not_a_knot():
    v = is_knot(P1)
    assert not v.is_knot and v.double_point.kind == Kind.REAL_REAL


def test_cusp_witness():
    v = is_knot(curve("s^4", "t^2*s^2", "t^3*s", "t^4"))
    assert not v and v.cusp is not None and v.cusp.distance(ComplexParam(0)) < 1e-9


@pytest.mark.parametrize("d,w", KNOT_PAIRS)
def test_kdw_outputs_are_knots(d, w):
    assert is_knot(cached_kdw(d, w))


# -- planarity -------------------------------------------------------------------

def test_planar_examples():
    ok, plane = is_planar(RatCurve((form("t^2"), form("t*s"), form("s^2"), HomPoly.zero(2))))
    assert ok and plane == (0, 0, 0, 1)
    assert is_planar(TWISTED) == (False, None)
    ok, plane = is_planar(curve("t^2", "t*s", "s^2", "t^2 + s^2"))
    assert ok and [x / plane[0] for x in plane] == [1, 0, 1, -1]


@pytest.mark.parametrize("name", ["deg4-wall-P1", "deg4-solitary-wall", "deg5-edge-F"])
def test_planar_curves_of_high_degree_have_nodes(name):
    C = catalog(name).curve
    ok, _ = is_planar(C)
    assert not ok or C.degree <= 2 or double_points(C)


def test_planar_curve_in_space_has_nodes():
    C = RatCurve(tuple(pgl_apply(random_pgl(4, 5), [form("t^3 + s^3"), form("t^2*s"), form("t*s^2 - s^3"), HomPoly.zero(3)])))
    assert is_planar(C)[0]
    assert len(double_points(C)) == 1


# -- quadrics --------------------------------------------------------------------

def test_twisted_cubic_quadric():
    basis = quadric_space(TWISTED)
    assert len(basis) == 3
    target = [Fraction(0)] * 10
    target[QUADRIC_MONOMIALS.index((0, 2))] = Fraction(1)
    target[QUADRIC_MONOMIALS.index((1, 1))] = Fraction(-1)
    assert evaluate_quadric(target, TWISTED.coords).is_zero()
    # the target lies in the span of the basis
    from realknot.algebra import rank

    assert rank([list(b) for b in basis] + [target]) == 3


@pytest.mark.parametrize("d,w", [(4, -1), (4, 1), (4, -3), (3, -1)])
def test_low_degree_on_quadric(d, w):
    q = quadric_containment(cached_kdw(d, w))
    assert q is not None and evaluate_quadric(q, cached_kdw(d, w).coords).is_zero()


def test_degree_six_not_on_quadric():
    assert quadric_containment(cached_kdw(6, 0)) is None


# -- infinity --------------------------------------------------------------------

def test_twisted_cubic_infinity():
    r = infinity_points(TWISTED)
    assert r.real_count == 3
    (p,) = r.points
    assert p.value == 0 and p.multiplicity == 3 and r.transversal == (False,)


def test_edge_form_infinity():
    C = curve("(t^2 + s^2)*(t^2 + 4*s^2)*t", "t^4*s + 5*t^2*s^3 + 4*s^5", "t^4*s + t^2*s^3", "t^3*s^2 + 4*t*s^4")
    r = infinity_points(C)
    assert r.real_count == 1 and len(r.points) == 5
    real = [x for x, tr in zip(r.points, r.transversal) if x.is_real(1e-9)]
    assert len(real) == 1 and r.transversal[r.points.index(real[0])]


def test_infinity_requires_nonzero_x0():
    with pytest.raises(ValueError):
        infinity_points(RatCurve((HomPoly.zero(2), form("t^2"), form("t*s"), form("s^2"))))


def test_normalize_twisted_cubic():
    r = infinity_points(normalize_infinity(TWISTED))
    assert r.real_count <= 1 and all(r.transversal)


@pytest.mark.parametrize("seed", range(5))
def test_normalize_degree_five(seed):
    C = pgl_apply(random_pgl(4, seed), cached_kdw(5, 2))
    out = normalize_infinity(C, seed)
    r = infinity_points(out)
    assert r.real_count <= 3 and all(r.transversal)
    assert is_knot(out)


def test_normalize_rejects_low_degree_and_planar():
    with pytest.raises(ValueError):
        normalize_infinity(catalog("circle").curve)
    with pytest.raises(ValueError):
        normalize_infinity(curve("t^3", "t^2*s", "s^3", "t^3 + s^3"))
