import json
import math

import pytest

from conftest import TRIANGLE
from lmap.errors import (NotConvex, NotInPortion, ParallelEdges, ParallelLines, SameEdge,
                         SameUnit, TooFewVertices, ZeroFactor)
from lmap.geom import (BoundaryPortion, Chase, Line, back_forw, build_polygon, edge,
                       edge_chasing, farthest_vertex, line_intersection, polygon_from_json,
                       polygon_to_json, portion_contains, portion_order, reflect, scale,
                       unit_chasing, vertex)


def test_triangle_kept_clockwise(tri):
    assert tri.n == 3
    assert tri.vertices == tuple(TRIANGLE)
    assert tri.area == pytest.approx(8.0)


def test_counterclockwise_input_is_reversed():
    P = build_polygon(list(reversed(TRIANGLE)))
    assert P.area == pytest.approx(8.0)
    assert set(P.vertices) == set(TRIANGLE)


def test_square_has_parallel_edges():
    with pytest.raises(ParallelEdges) as e:
        build_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert len(e.value.pair) == 2


def test_square_ok_with_perturbation():
    P = build_polygon([(0, 0), (1, 0), (1, 1), (0, 1)], perturb=1e-3, seed=3)
    assert P.n == 4


def test_degenerate_turn_merged_or_rejected():
    try:
        P = build_polygon([(0, 0), (2, 0), (1, 1e-15), (0, 2)])
    except NotConvex:
        return
    assert P.n == 3


def test_spike_not_convex():
    with pytest.raises(NotConvex):
        build_polygon([(0, 0), (0, 4), (1, 1), (4, 0)])


def test_too_few_vertices():
    with pytest.raises(TooFewVertices):
        build_polygon([(0, 0), (1, 1)])


def test_polygon_immutable(tri):
    with pytest.raises(AttributeError):
        tri.n = 4


def test_edge_chasing_triangle(tri):
    # e0: x=0, e1: hypotenuse, e2: y=0
    assert edge_chasing(tri, 0, 1)
    assert not edge_chasing(tri, 1, 0)
    assert edge_chasing(tri, 2, 0)
    with pytest.raises(SameEdge):
        edge_chasing(tri, 1, 1)


def test_unit_chasing_triangle(tri):
    assert unit_chasing(tri, vertex(1), vertex(2)) is Chase.U_CHASES
    assert unit_chasing(tri, edge(0), edge(1)) is Chase.U_CHASES
    assert unit_chasing(tri, vertex(0), edge(1)) is Chase.NEITHER
    with pytest.raises(SameUnit):
        unit_chasing(tri, vertex(2), vertex(2))


def test_back_forw(tri):
    assert back_forw(tri, vertex(1)) == (0, 1)
    assert back_forw(tri, edge(2)) == (2, 2)


def test_farthest_vertex(tri):
    assert farthest_vertex(tri, 1) == vertex(0)
    assert farthest_vertex(tri, 0) == vertex(2)
    assert farthest_vertex(tri, 2) == vertex(1)


def test_line_intersection(tri):
    assert line_intersection(Line((0, 0), (0, 1)), Line((0, 0), (1, 0))) == pytest.approx((0, 0))
    assert line_intersection(tri.edge_line(0), tri.edge_line(1)) == pytest.approx((0, 4))
    assert line_intersection(tri.edge_line(2), tri.edge_line(1)) == pytest.approx((4, 0))
    with pytest.raises(ParallelLines):
        line_intersection(Line((0, 0), (1, 0)), Line((0, 1), (2, 0)))


def test_reflect_and_scale():
    assert reflect((0, 2), (1, 1)) == pytest.approx((2, 0))
    l = reflect(Line((0, 0), (0, 1)), (2, 1.5))
    assert l.point[0] == pytest.approx(4)
    assert l.direction[0] == pytest.approx(0)
    assert reflect(reflect((0.3, -2.0), (1, 5)), (1, 5)) == pytest.approx((0.3, -2.0))
    assert scale((0, 2), 2, (2, 2)) == pytest.approx((-2, 2))
    assert scale((2, 0), 2, (2, 2)) == pytest.approx((2, -2))
    assert scale((5, 7), 1, (1, 1)) == pytest.approx((5, 7))
    with pytest.raises(ZeroFactor):
        scale((1, 1), 0, (0, 0))


def test_portions(tri):
    rho = BoundaryPortion(tri.unit_of_point(vertex(1)), tri.unit_of_point(vertex(0)))
    on_e1 = tri.locate((2, 2))[0]
    on_e2 = tri.locate((2, 0))[0]
    on_e0 = tri.locate((0, 2))[0]
    assert portion_contains(tri, rho, on_e1)
    assert portion_order(tri, rho, on_e1, on_e2) == -1
    assert not portion_contains(tri, rho, on_e0)
    with pytest.raises(NotInPortion):
        portion_order(tri, rho, on_e0, on_e1)


def test_canonical_collapse(tri):
    bp = tri.unit_of_point(edge(0), 1e-14)
    assert bp.unit == vertex(0)
    bp = tri.unit_of_point(edge(0), 1 - 1e-14)
    assert bp.unit == vertex(1)


def test_locate_and_arc(tri):
    bp, d, margin = tri.locate((0, 2))
    assert bp.unit == edge(0) and d == pytest.approx(0) and margin == pytest.approx(0)
    assert tri.arc(bp) == pytest.approx(2)
    assert tri.point_at_arc(2).point == pytest.approx((0, 2))
    _, d, margin = tri.locate((1, 1))
    assert d == pytest.approx(1) and margin > 0
    assert not tri.contains((-1, 1))


def test_json_round_trip(tri):
    text = polygon_to_json(tri)
    assert polygon_from_json(text).vertices == tri.vertices
    assert json.loads(text) == {"vertices": [list(p) for p in TRIANGLE]}


def test_reach_and_far(tri):
    assert tri.far == [2, 0, 1]
    assert tri.reach == [2, 2, 2]
    assert tri.diameter == pytest.approx(4 * math.sqrt(2))
