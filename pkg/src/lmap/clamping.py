"""Clamping portions, mid-regions, blocks and the even-corner pair set.

For a unit pair ``(u, u')`` the clamping portion ``zeta(u, u')`` is a stretch
of boundary between two Z-points that must contain the corner whose two
neighbours sit on ``u`` and ``u'``.  Blocks are the regions (or curves) where
the opposite, anchored corner can be.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .disprod import ZTable
from .errors import NotChasing, SameUnit
from .geom import (BoundaryPoint, BoundaryPortion, Chase, EDGE, Line, Point,
                   Polygon, Unit, VERTEX, _chases, back_forw, edge, midpoint,
                   reflect, scale, unit_chasing, vertex)


@dataclass(frozen=True)
class Zeta:
    portion: BoundaryPortion
    a: int
    a2: int
    b: int
    b2: int


@dataclass(frozen=True)
class MidRegion:
    kind: str                 # "parallelogram" | "segment" | "point"
    corners: tuple[Point, ...]
    open: bool


@dataclass(frozen=True)
class Block:
    kind: str                 # EdgeEdge | EdgeVertex | VertexEdge | VertexVertex
    units: tuple[Unit, Unit]
    region: tuple[Point, ...]            # parallelogram corners or polyline
    curves: dict = field(default_factory=dict)
    bottom: tuple[Point, ...] = ()
    ref_edge: int | None = None
    band: tuple[float, float] | None = None
    separators: tuple[Line, Line] | None = None


def _same(P: Polygon, u: Unit, u2: Unit) -> bool:
    return u.kind == u2.kind and (u.index - u2.index) % P.n == 0


def zeta(P: Polygon, Z: ZTable, u: Unit, u2: Unit) -> Zeta:
    """Clamping portion for the corner between units ``u`` and ``u2``.

    When ``u`` chases ``u2`` this is the portion between the Z-points of the
    two backward edges and of the two forward edges.  Otherwise the missing
    partner edges are replaced by edges next to the farthest vertices.
    """
    if _same(P, u, u2):
        raise SameUnit(f"{u!r} twice")
    n = P.n
    a, fu = back_forw(P, u)
    bu2, b2 = back_forw(P, u2)
    a2 = bu2 if _chases(P, a, bu2) else (P.far[a] - 1) % n
    b = fu if _chases(P, fu, b2) else P.far[b2]
    start = Z.get(a, a2)
    end = Z.get(b, b2)
    return Zeta(BoundaryPortion(start, end, True, True), a, a2, b, b2)


def portion_polyline(P: Polygon, rho: BoundaryPortion) -> list[Point]:
    """Cartesian polyline of a portion: start, inner vertices, end."""
    s0 = P.arc(rho.start)
    L = (P.arc(rho.end) - s0) % P.perimeter
    inner = []
    for k in range(P.n):
        o = (P.cum[k] - s0) % P.perimeter
        if 0.0 < o < L:
            inner.append((o, P.vertices[k]))
    inner.sort()
    out = [rho.start.point] + [p for _, p in inner]
    if L > 0.0:
        out.append(rho.end.point)
    return out


def _ends(P: Polygon, u: Unit) -> list[Point]:
    if u.kind == VERTEX:
        return [P.vertex(u.index)]
    return [P.vertex(u.index), P.vertex(u.index + 1)]


def mid_region(P: Polygon, u: Unit, u2: Unit) -> MidRegion:
    """The set of midpoints between points of ``u`` and points of ``u2``."""
    if _same(P, u, u2):
        raise SameUnit(f"{u!r} twice")
    p, q = _ends(P, u), _ends(P, u2)
    if len(p) == 2 and len(q) == 2:
        c = (midpoint(p[0], q[0]), midpoint(p[0], q[1]),
             midpoint(p[1], q[1]), midpoint(p[1], q[0]))
        return MidRegion("parallelogram", c, True)
    if len(p) == 1 and len(q) == 1:
        return MidRegion("point", (midpoint(p[0], q[0]),), False)
    c = tuple(midpoint(x, y) for x in p for y in q)
    return MidRegion("segment", c, True)


def _parallel_at(P: Polygon, i: int, h: float) -> Line:
    """Line parallel to edge ``i`` at inward height ``h``."""
    x, y = P.vertex(i)
    return Line((x + h * P.la[i], y + h * P.lb[i]), (P.ex[i], P.ey[i]))


def block(P: Polygon, Z: ZTable, u: Unit, u2: Unit) -> Block:
    """Region that must hold the anchored corner opposite ``zeta(u, u2)``."""
    if _same(P, u, u2) or unit_chasing(P, u, u2) is not Chase.U_CHASES:
        raise NotChasing(f"{u!r} does not chase {u2!r}")
    n = P.n
    i, j = u.index % n, u2.index % n
    kind = ("Edge" if u.is_edge else "Vertex") + ("Edge" if u2.is_edge else "Vertex")
    if kind == "EdgeEdge":
        z = Z.xy(i, j)
        corners = tuple(scale(c, 2.0, z) for c in mid_region(P, u, u2).corners)
        h = lambda x: P.sdist(i, x)
        band = (h(P.vertex(j)) - h(z), h(P.vertex(j + 1)) - h(z))
        blk = Block(kind, (u, u2), corners, {}, (), i, band)
    elif kind == "VertexVertex":
        zt = zeta(P, Z, u, u2)
        m = midpoint(P.vertex(i), P.vertex(j))
        curve = tuple(reflect(x, m) for x in portion_polyline(P, zt.portion))
        blk = Block(kind, (u, u2), curve, {"reflected": curve}, curve)
    else:
        zt = zeta(P, Z, u, u2)
        poly = portion_polyline(P, zt.portion)
        z1, z2 = zt.portion.start.point, zt.portion.end.point
        seg = mid_region(P, u, u2).corners
        curves = {
            "scaled_start": tuple(scale(c, 2.0, z1) for c in seg),
            "scaled_end": tuple(scale(c, 2.0, z2) for c in seg),
        }
        if kind == "EdgeVertex":
            # reflections about M(v_i, v_j) and M(v_{i+1}, v_j)
            ms = (midpoint(P.vertex(i), P.vertex(j)), midpoint(P.vertex(i + 1), P.vertex(j)))
            ref = i
            h = lambda x: P.sdist(i, x)
            band = (h(P.vertex(j)) - h(z1), h(P.vertex(j)) - h(z2))
            bottom_idx = 0
        else:
            # reflections about M(v_i, v_j) and M(v_i, v_{j+1})
            ms = (midpoint(P.vertex(i), P.vertex(j)), midpoint(P.vertex(i), P.vertex(j + 1)))
            ref = j
            g = lambda x: P.sdist(j, x)
            band = (g(P.vertex(i)) - g(z2), g(P.vertex(i)) - g(z1))
            bottom_idx = 1
        curves["reflect_first"] = tuple(reflect(x, ms[0]) for x in poly)
        curves["reflect_second"] = tuple(reflect(x, ms[1]) for x in poly)
        bottom = curves["reflect_first" if bottom_idx == 0 else "reflect_second"]
        region = curves["scaled_start"] + curves["scaled_end"]
        blk = Block(kind, (u, u2), region, curves, bottom, ref,
                    (min(band), max(band)))
    if blk.ref_edge is not None:
        lo, hi = blk.band
        blk = replace(blk, separators=(_parallel_at(P, blk.ref_edge, lo),
                                       _parallel_at(P, blk.ref_edge, hi)))
    return blk


def _seg_dist(p: Point, a: Point, b: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    t = 0.0 if L2 == 0 else max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2))
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def polyline_distance(p: Point, pts) -> float:
    if len(pts) == 1:
        return math.hypot(p[0] - pts[0][0], p[1] - pts[0][1])
    return min(_seg_dist(p, a, b) for a, b in zip(pts, pts[1:]))


def block_contains_vertex(P: Polygon, blk: Block, k: int) -> bool:
    """Separator-band membership (curve proximity for vertex-vertex blocks)."""
    x = P.vertex(k)
    tol = P.boundary_tol
    if blk.ref_edge is None:
        return polyline_distance(x, blk.region) <= tol
    h = P.sdist(blk.ref_edge, x)
    lo, hi = blk.band
    return lo - tol <= h <= hi + tol


def h_set(P: Polygon, k: int) -> list[Unit]:
    """Units strictly between the farthest vertices of the two edges at vertex ``k``."""
    n = P.n
    k %= n
    a, b = P.far[(k - 1) % n], P.far[k]
    out: list[Unit] = []
    if a == b:
        return out
    m = a
    while m != b:
        out.append(edge(m))
        m = (m + 1) % n
        if m != b:
            out.append(vertex(m))
    return out


def s_set(P: Polygon) -> list[tuple[Unit, Unit]]:
    """Pairs (vertex, unit in its H set) in both orders, without repeats."""
    seen = set()
    out = []
    for k in range(P.n):
        v = vertex(k)
        for w in h_set(P, k):
            for pair in ((v, w), (w, v)):
                if pair not in seen:
                    seen.add(pair)
                    out.append(pair)
    return out
