import math

import numpy as np
import pytest

from conftest import close, corpus
from lmap.analysis import random_polygon
from lmap.disprod import (ZPos, check_unimodal, classify_vertex_vs_z, disprod, polygon_disprod,
                          z_arrays, z_batch, z_point, z_table_all)
from lmap.errors import NotChasing, NotSorted, VertexOutOfRange
from lmap.geom import Line, edge, vertex
from lmap.invariants import chasing_pairs

X_AXIS = Line((0, 0), (1, 0))
Y_AXIS = Line((0, 0), (0, 1))


def test_disprod_values(tri):
    assert disprod((1, 1), Y_AXIS, X_AXIS) == pytest.approx(1)
    assert disprod((1, 2), Y_AXIS, X_AXIS) == pytest.approx(2)
    assert disprod((3, 1), Y_AXIS, X_AXIS) == pytest.approx(3)
    assert disprod((2, 0), tri.edge_line(0), tri.edge_line(1)) == pytest.approx(2 * math.sqrt(2))


def test_z_points_triangle(tri):
    z = z_point(tri, 2, 0)
    assert z.unit == edge(1) and close(z.point, (2, 2))
    assert close(z_point(tri, 0, 1).point, (2, 0))
    assert close(z_point(tri, 1, 2).point, (0, 2))
    with pytest.raises(NotChasing):
        z_point(tri, 1, 0)


def _dense_argmax(P, i, j, samples=200001):
    s0 = P.cum[(j + 1) % P.n]
    L = (P.cum[i] - s0) % P.perimeter
    best, arg = -1.0, None
    for s in np.linspace(0, L, samples):
        x = P.point_at_arc(s0 + s).point
        v = polygon_disprod(P, i, j, x)
        if v > best:
            best, arg = v, x
    return arg


def test_z_point_matches_dense_sampling(tri):
    assert close(_dense_argmax(tri, 2, 0, 20001), (2, 2), 1e-3)
    P = random_polygon(7, 11)
    i, j = next(iter(chasing_pairs(P)))
    assert close(_dense_argmax(P, i, j, 20001), z_point(P, i, j).point, 1e-3 * P.diameter)


def test_classify(tri):
    assert classify_vertex_vs_z(tri, 2, 0, 1) is ZPos.AFTER
    assert classify_vertex_vs_z(tri, 0, 1, 0) is ZPos.BEFORE
    with pytest.raises(VertexOutOfRange):
        classify_vertex_vs_z(tri, 0, 1, 1)


def test_classify_at_vertex(pentagon):
    # symmetry of the regular pentagon puts Z(0, 2) exactly on v4
    z = z_point(pentagon, 0, 2)
    assert z.unit == vertex(4)
    assert classify_vertex_vs_z(pentagon, 0, 2, 4) is ZPos.AT_VERTEX
    assert classify_vertex_vs_z(pentagon, 0, 2, 3) is ZPos.AFTER
    assert classify_vertex_vs_z(pentagon, 0, 2, 0) is ZPos.BEFORE


def test_classify_agrees_with_z_position():
    for P in corpus(6, 6, 14):
        n = P.n
        for i, j in chasing_pairs(P):
            z = z_point(P, i, j)
            for k in range(n):
                if (k - j - 1) % n > (i - j - 1) % n:
                    continue
                got = classify_vertex_vs_z(P, i, j, k)
                zo = (P.arc(z) - P.cum[(j + 1) % n]) % P.perimeter
                ko = (P.cum[k] - P.cum[(j + 1) % n]) % P.perimeter
                if abs(zo - ko) <= 1e-9 * P.diameter:
                    assert got is ZPos.AT_VERTEX
                elif zo < ko:
                    assert got is ZPos.BEFORE
                else:
                    assert got is ZPos.AFTER


def test_z_batch_triangle(tri):
    t = z_batch(tri, [(0, 1), (1, 2), (2, 0)])
    assert close(t[(0, 1)].point, (2, 0))
    assert close(t[(1, 2)].point, (0, 2))
    assert close(t[(2, 0)].point, (2, 2))
    single = z_batch(tri, [(2, 0)])
    assert single[(2, 0)] == z_point(tri, 2, 0)


def test_z_batch_unsorted():
    P = random_polygon(10, 4)
    pairs = [(i, j) for i, j in chasing_pairs(P)]
    with pytest.raises(NotSorted):
        z_batch(P, pairs)


def test_z_arrays_equal_walk():
    for P in corpus(10, 5, 40):
        za = z_arrays(P)
        full = z_table_all(P)
        for e in range(len(za.zi)):
            key = (int(za.zi[e]), int((za.zi[e] + za.zm[e]) % P.n))
            assert (float(za.zx[e]), float(za.zy[e])) == full[key].point


def test_z_in_open_portion():
    for P in corpus(8, 5, 16):
        n = P.n
        for i, j in chasing_pairs(P):
            z = z_point(P, i, j)
            s0 = P.cum[(j + 1) % n]
            L = (P.cum[i] - s0) % P.perimeter
            o = (P.arc(z) - s0) % P.perimeter
            assert 0 < o < L


def test_unimodal_examples(tri):
    assert check_unimodal(tri, 2, 0, 1001)
    assert check_unimodal(tri, 0, 1, 1001)
    assert check_unimodal(tri, 2, 0, 3)
