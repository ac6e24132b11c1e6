import math

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from lmap.analysis import convex_hull, interleaves, oracle_map, random_polygon
from lmap.errors import LmapError
from lmap.geom import Line, build_polygon, reflect
from lmap.pgram import area_identity_check
from lmap.search import BROAD, NARROW, alg_broad, alg_narrow, find_all_lmaps, find_map

coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)
polys = st.builds(random_polygon, st.integers(3, 14), st.integers(0, 10**6))
common = settings(max_examples=40, deadline=None,
                  suppress_health_check=[HealthCheck.too_slow])


@st.composite
def quadrant_instance(draw):
    o = draw(point)
    a1 = draw(st.floats(0, math.pi))
    a2 = a1 + draw(st.floats(0.2, math.pi - 0.2))
    s1, s2 = draw(st.sampled_from((-1, 1))), draw(st.sampled_from((-1, 1)))
    d1, d2 = (math.cos(a1), math.sin(a1)), (math.cos(a2), math.sin(a2))

    def pt():
        u, v = draw(st.floats(0.1, 10)), draw(st.floats(0.1, 10))
        return (o[0] + s1 * u * d1[0] + s2 * v * d2[0], o[1] + s1 * u * d1[1] + s2 * v * d2[1])

    return pt(), pt(), Line(o, d1), Line(o, d2)


@given(quadrant_instance())
@settings(max_examples=200, deadline=None)
def test_area_identity(inst):
    area, rhs = area_identity_check(*inst)
    assert area == pytest.approx(rhs, rel=1e-9, abs=1e-9)


@given(point, point)
def test_reflect_involution(x, o):
    y = reflect(reflect(x, o), o)
    assert y == pytest.approx(x, abs=1e-9)


@given(point, point, point)
def test_reflect_line_keeps_direction(p, d, o):
    assume(d != (0.0, 0.0))
    l = Line(p, d)
    assert reflect(l, o).direction == l.direction


@given(polys)
@common
def test_interleaving_symmetric(P):
    lm = find_all_lmaps(P).lmaps
    for a in lm:
        for b in lm:
            assert interleaves(P, a, b) == interleaves(P, b, a)
            assert interleaves(P, a, b)


@given(polys)
@common
def test_oracle_below_map(P):
    assert oracle_map(P, 40).area <= find_map(P).area * (1 + 1e-9)


@given(polys)
@common
def test_candidates_are_parallelograms_anchored_at_a_vertex(P):
    tol = 1e-9 * P.diameter
    for c in alg_narrow(P) + alg_broad(P):
        a0, a1, a2, a3 = c.corners
        assert math.hypot(a0[0] + a2[0] - a1[0] - a3[0], a0[1] + a2[1] - a1[1] - a3[1]) <= tol
        assert c.source in (NARROW, BROAD)
        v = P.vertex(c.anchor)
        assert min(math.hypot(x[0] - v[0], x[1] - v[1]) for x in c.corners) <= tol


@given(polys)
@common
def test_lmap_count_bound(P):
    rep = find_all_lmaps(P)
    assert 1 <= len(rep.lmaps) <= 2 * P.n


@given(st.lists(point, min_size=3, max_size=12))
@common
def test_arbitrary_hulls(pts):
    hull = convex_hull(pts)
    assume(len(hull) >= 3)
    try:
        P = build_polygon(hull)
    except LmapError:
        assume(False)
    assume(P.area > 1e-3 * P.diameter ** 2)
    rep = find_all_lmaps(P)
    assert rep.map is not None
    assert rep.map.area <= P.area * (1 + 1e-9)
    # the largest inscribed parallelogram covers at least half the polygon
    assert rep.map.area >= 0.5 * P.area * (1 - 1e-9)
