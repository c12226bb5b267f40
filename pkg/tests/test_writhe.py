import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cached_kdw, form
from realknot import writhe
from realknot.algebra import ProjTransform, pgl_apply, random_pgl
from realknot.algebra.pgl import reparametrize
from realknot.construct import catalog, perturb
from realknot.curve import Kind, RatCurve
from realknot.writhe import (
    GenericityError,
    check_genericity,
    crossing_bound,
    encomplexed_writhe,
    project,
    projection_with,
    real_crossing_sign,
    solitary_sign,
    wall_writhe,
)


def curve(*texts):
    return RatCurve(tuple(form(x) for x in texts))


TWISTED = curve("t^3", "s*t^2", "s^2*t", "s^3")
P1 = curve("t*s^3", "t^2*s^2", "t^3*s", "t^4 + s^4")
P2 = curve("t*s^3", "t^2*s^2", "t^3*s", "t^4 - s^4")
SAMPLE = [(3, -1), (4, 3), (4, -1), (5, 0), (5, 4), (5, -6)]


def reparam(C: RatCurve, M: ProjTransform) -> RatCurve:
    (a, b), (c, e) = M.matrix
    return RatCurve(tuple(reparametrize(list(C.coords), a, b, c, e)))


def flip_t(C: RatCurve) -> RatCurve:
    return RatCurve(tuple(reparametrize(list(C.coords), -1, 0, 0, 1)))


# -- projection ------------------------------------------------------------------

def test_twisted_cubic_projection_has_one_node():
    pr = project(TWISTED, 0)
    assert [p.degree for p in pr.planar] == [3, 3, 3]
    assert len(pr.nodes) == 1


def test_projection_is_deterministic():
    assert project(TWISTED, 4) == project(TWISTED, 4)
    assert project(cached_kdw(4, 1), 2) == project(cached_kdw(4, 1), 2)


def test_seed_advances_past_centre_on_curve(monkeypatch):
    real = writhe.random_pgl

    def fake(dim, seed, orientation=None):
        # seed 0 projects from (0:0:0:1), which is the point C(0:1)
        if seed == 0:
            return ProjTransform.identity(4)
        return real(dim, seed, orientation=orientation)

    monkeypatch.setattr(writhe, "random_pgl", fake)
    assert check_genericity(projection_with(TWISTED, ProjTransform.identity(4))).diagnosis == "centre on curve"
    assert project(TWISTED, 0).seed == 1


def test_budget_exhausted_on_wall():
    with pytest.raises(GenericityError):
        project(P1, 0, budget=3)


def test_unknown_family():
    with pytest.raises(ValueError):
        project(TWISTED, 0, family="orthographic")


# -- genericity ------------------------------------------------------------------

def test_generic_twisted_cubic():
    g = check_genericity(projection_with(TWISTED, random_pgl(4, 0, orientation=1)))
    assert g and g.diagnosis == "generic"


def test_space_double_point():
    # the node of P1 projects to a planar crossing whose two heights agree
    pr = projection_with(P1, random_pgl(4, 0, orientation=1))
    assert check_genericity(pr).diagnosis == "space double point"


def test_cusp_from_tangent_centre():
    # centre (1:1:0:0) lies on the tangent line of the twisted cubic at (1:0:0:0)
    T = ProjTransform.from_rows([[1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]])
    assert check_genericity(projection_with(TWISTED, T)).diagnosis == "cusp"


# -- crossing signs --------------------------------------------------------------

def _real_crossings(C, seed=0):
    pr = project(C, seed)
    return pr, [n for n in pr.nodes if n.kind == Kind.REAL_REAL]


def test_real_sign_flips_under_mirror():
    C = cached_kdw(4, 3)
    pr, nodes = _real_crossings(C)
    mirrored = dataclasses.replace(pr, height=-pr.height)
    for n in nodes:
        assert real_crossing_sign(mirrored, n)[0] == -real_crossing_sign(pr, n)[0]


def test_real_sign_ignores_orientation():
    C = cached_kdw(4, 3)
    pr, _ = _real_crossings(C)
    flipped = project(flip_t(C), pr.seed)
    assert sorted(real_crossing_sign(pr, n)[0] for n in pr.nodes if n.kind == Kind.REAL_REAL) == sorted(
        real_crossing_sign(flipped, n)[0] for n in flipped.nodes if n.kind == Kind.REAL_REAL
    )


def test_real_sign_rejects_other_kinds():
    pr = project(TWISTED, 0)
    solitary = [n for n in pr.nodes if n.kind != Kind.REAL_REAL]
    for n in solitary:
        with pytest.raises(ValueError):
            real_crossing_sign(pr, n)


def _solitary(C):
    for seed in range(20):
        pr = project(C, seed, family="secant")
        nodes = [n for n in pr.nodes if n.kind == Kind.SOLITARY]
        if nodes:
            return pr, nodes
    pytest.fail("no projection with a solitary crossing")


def test_solitary_sign_conjugation_and_mirror():
    C = cached_kdw(4, 1)
    pr, nodes = _solitary(C)
    mirrored = dataclasses.replace(pr, height=-pr.height)
    for n in nodes:
        s = solitary_sign(pr, n)
        assert s in (1, -1)
        assert solitary_sign(pr, n.conjugate()) == s
        assert solitary_sign(mirrored, n) == -s


@pytest.mark.parametrize("direction", [1, -1])
def test_resolved_solitary_wall(direction):
    """Both sides of the solitary wall are unknots of writhe +1 and -1."""
    C = perturb(catalog("deg4-solitary-wall"), [0], [direction])
    r = encomplexed_writhe(C, family="secant")
    assert r.writhe in (1, -1)
    assert r.writhe == encomplexed_writhe(C).writhe


def test_solitary_wall_sides_differ():
    entry = catalog("deg4-solitary-wall")
    assert {encomplexed_writhe(perturb(entry, [0], [d])).writhe for d in (1, -1)} == {1, -1}


# -- writhe values ---------------------------------------------------------------

def test_calibration_pair():
    assert encomplexed_writhe(TWISTED).writhe == 1
    assert encomplexed_writhe(TWISTED.mirror()).writhe == -1


def test_circle_has_zero_writhe():
    assert encomplexed_writhe(curve("t^2 + s^2", "t^2 - s^2", "2*t*s", "t^2")).writhe == 0


def test_two_crossing_knot():
    assert encomplexed_writhe(cached_kdw(4, 3)).writhe == 3


def test_secant_family_agrees():
    for d, w in SAMPLE:
        assert encomplexed_writhe(cached_kdw(d, w), 0, family="secant").writhe == w


def test_wall_writhe_skips_the_node():
    r = wall_writhe(P2)
    assert len(r.singular) == 1
    assert abs(r.partial_writhe) <= crossing_bound(4) - 1


# -- invariants ------------------------------------------------------------------

pairs = st.sampled_from(SAMPLE)
seeds = st.integers(0, 10**6)


@settings(max_examples=12, deadline=None)
@given(pairs, seeds)
def test_report_invariants(dw, seed):
    d, w = dw
    r = encomplexed_writhe(cached_kdw(d, w), seed)
    b = crossing_bound(d)
    assert r.writhe == w == sum(c.sign for c in r.crossings)
    assert abs(r.writhe) <= b and (r.writhe - b) % 2 == 0 and r.parity_ok
    real, sol, imag = (r.count(k) for k in (Kind.REAL_REAL, Kind.SOLITARY, Kind.IMAGINARY_PAIR))
    assert real + sol + imag // 2 == b and imag % 2 == 0
    for c in r.crossings:
        assert (c.sign == 0) == (c.kind == Kind.IMAGINARY_PAIR)


@settings(max_examples=10, deadline=None)
@given(pairs, seeds)
def test_mirror_antisymmetry(dw, seed):
    d, w = dw
    C = pgl_apply(random_pgl(4, seed, orientation=1), cached_kdw(d, w))
    assert encomplexed_writhe(C.mirror(), seed).writhe == -w


@settings(max_examples=10, deadline=None)
@given(pairs, seeds, st.sampled_from([1, -1]))
def test_reparametrization_invariance(dw, seed, orientation):
    d, w = dw
    C = reparam(cached_kdw(d, w), random_pgl(2, seed, orientation=orientation))
    assert encomplexed_writhe(C).writhe == w


@settings(max_examples=10, deadline=None)
@given(pairs, seeds)
def test_ambient_invariance(dw, seed):
    d, w = dw
    C = pgl_apply(random_pgl(4, seed, orientation=1), cached_kdw(d, w))
    assert encomplexed_writhe(C, seed % 97).writhe == w


def test_orientation_reversing_transform_negates():
    C = pgl_apply(random_pgl(4, 3, orientation=-1), cached_kdw(5, 4))
    assert encomplexed_writhe(C).writhe == -4
