"""Convex polygon representation, units, boundary addressing and small affine maps.

Conventions: vertices are stored clockwise (y axis up), edge ``i`` runs from
vertex ``i`` to vertex ``i+1`` and all indices are taken modulo ``n``.  A
*unit* is either a vertex or an open edge.
"""

from __future__ import annotations

import bisect
import enum
import json
import logging
import math
import random
from dataclasses import dataclass, fields, replace
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import (NotConvex, NotInPortion, ParallelEdges, ParallelLines,
                     SameEdge, SameUnit, TooFewVertices, ZeroFactor)

log = logging.getLogger(__name__)

Point = tuple[float, float]


# --- small vector helpers -------------------------------------------------

def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def mul(a: Point, k: float) -> Point:
    return (a[0] * k, a[1] * k)


def cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Point, b: Point) -> float:
    return a[0] * b[0] + a[1] * b[1]


def midpoint(a: Point, b: Point) -> Point:
    return ((a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def signed_area(pts: Sequence[Point]) -> float:
    s = 0.0
    m = len(pts)
    for k in range(m):
        x0, y0 = pts[k]
        x1, y1 = pts[(k + 1) % m]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


# --- tolerances -----------------------------------------------------------

@dataclass(frozen=True)
class Tolerances:
    """Named numeric tolerances.

    Values marked *diameter* or *area* are multiplied by the polygon's
    diameter (or its square, or the parallelogram area) at the use site.
    """

    parallel: float = 1e-12      # cross product of unit directions
    on_boundary: float = 1e-9    # x diameter
    canon: float = 1e-12         # edge parameter
    collinear: float = 1e-12     # x diameter^2
    dominance: float = 1e-12     # relative
    quad: float = 1e-9           # x diameter
    degenerate: float = 1e-12    # x diameter^2
    probe_slack: float = 1e-10   # x area
    containment: float = 1e-9    # x diameter

    def scaled(self, factor: float) -> "Tolerances":
        return replace(self, **{f.name: getattr(self, f.name) * factor
                                for f in fields(self)})


DEFAULT_TOL = Tolerances()


# --- units and boundary points -------------------------------------------

VERTEX = "vertex"
EDGE = "edge"


class Unit(NamedTuple):
    kind: str
    index: int

    @property
    def is_vertex(self) -> bool:
        return self.kind == VERTEX

    @property
    def is_edge(self) -> bool:
        return self.kind == EDGE

    def __repr__(self) -> str:
        return ("v" if self.kind == VERTEX else "e") + str(self.index)


def vertex(i: int) -> Unit:
    return Unit(VERTEX, i)


def edge(i: int) -> Unit:
    return Unit(EDGE, i)


@dataclass(frozen=True)
class BoundaryPoint:
    unit: Unit
    t: float
    point: Point

    def __repr__(self) -> str:
        if self.unit.is_vertex:
            return f"BoundaryPoint({self.unit!r})"
        return f"BoundaryPoint({self.unit!r}, t={self.t:.6g})"


@dataclass(frozen=True)
class BoundaryPortion:
    """Clockwise arc of the boundary from ``start`` to ``end``."""

    start: BoundaryPoint
    end: BoundaryPoint
    include_start: bool = True
    include_end: bool = True


@dataclass(frozen=True)
class Line:
    point: Point
    direction: Point

    def __post_init__(self):
        if self.direction[0] == 0.0 and self.direction[1] == 0.0:
            raise ValueError("line direction must be nonzero")

    @staticmethod
    def through(a: Point, b: Point) -> "Line":
        return Line(a, sub(b, a))

    def side(self, x: Point) -> float:
        """Signed distance; positive to the right of the direction."""
        d = self.direction
        return cross(sub(x, self.point), d) / math.hypot(d[0], d[1])

    def distance(self, x: Point) -> float:
        return abs(self.side(x))


class Chase(enum.Enum):
    U_CHASES = "UChasesU'"
    U2_CHASES = "U'ChasesU"
    NEITHER = "Neither"


# --- polygon --------------------------------------------------------------

class Polygon:
    """Strictly convex clockwise polygon with pairwise nonparallel edges.

    Build with :func:`build_polygon`.  Every derived table is computed once in
    the constructor and the object refuses attribute assignment afterwards.
    """

    __slots__ = ("vertices", "n", "xs", "ys", "ex", "ey", "elen", "cum",
                 "perimeter", "diameter", "area", "la", "lb", "lc", "far",
                 "reach", "centroid", "_ang", "_negang", "tol", "merged",
                 "_frozen")

    def __init__(self, vertices: Sequence[Point], tol: Tolerances = DEFAULT_TOL,
                 merged: tuple[int, ...] = ()):
        set_ = object.__setattr__
        n = len(vertices)
        vs = tuple((float(x), float(y)) for x, y in vertices)
        xs = [p[0] for p in vs]
        ys = [p[1] for p in vs]
        ex = [xs[(k + 1) % n] - xs[k] for k in range(n)]
        ey = [ys[(k + 1) % n] - ys[k] for k in range(n)]
        elen = [math.hypot(ex[k], ey[k]) for k in range(n)]
        cum = [0.0] * (n + 1)
        for k in range(n):
            cum[k + 1] = cum[k] + elen[k]
        # inward signed distance to line i: la*x + lb*y + lc (positive inside)
        la = [ey[k] / elen[k] for k in range(n)]
        lb = [-ex[k] / elen[k] for k in range(n)]
        lc = [-(la[k] * xs[k] + lb[k] * ys[k]) for k in range(n)]
        arr = np.array(vs)
        diffs = arr[:, None, :] - arr[None, :, :]
        diameter = float(np.sqrt((diffs ** 2).sum(-1).max()))
        far = _farthest_table(n, xs, ys, la, lb, lc)
        reach = [(far[k] - k) % n for k in range(n)]
        cx = sum(xs) / n
        cy = sum(ys) / n
        raw = [math.atan2(ys[k] - cy, xs[k] - cx) for k in range(n)]
        ang = [raw[0]]
        for k in range(1, n):
            ang.append(ang[-1] - ((raw[k - 1] - raw[k]) % (2 * math.pi)))
        negang = [-a for a in ang] + [-ang[0] + 2 * math.pi]
        for name, val in (("vertices", vs), ("n", n), ("xs", xs), ("ys", ys),
                          ("ex", ex), ("ey", ey), ("elen", elen), ("cum", cum),
                          ("perimeter", cum[n]), ("diameter", diameter),
                          ("area", -signed_area(vs)), ("la", la), ("lb", lb),
                          ("lc", lc), ("far", far), ("reach", reach),
                          ("centroid", (cx, cy)), ("_ang", ang),
                          ("_negang", negang), ("tol", tol), ("merged", merged),
                          ("_frozen", True)):
            set_(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    def __repr__(self) -> str:
        return f"Polygon(n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    # absolute tolerances
    @property
    def boundary_tol(self) -> float:
        return self.tol.on_boundary * self.diameter

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def edge_line(self, i: int) -> Line:
        i %= self.n
        return Line(self.vertices[i], (self.ex[i], self.ey[i]))

    def sdist(self, i: int, x: Point) -> float:
        """Signed distance from ``x`` to the line of edge ``i`` (inside > 0)."""
        return self.la[i] * x[0] + self.lb[i] * x[1] + self.lc[i]

    def unit_of_point(self, unit: Unit, t: float = 0.0) -> BoundaryPoint:
        """Canonical boundary point on ``unit`` at edge parameter ``t``."""
        n = self.n
        k = unit.index % n
        if unit.kind == VERTEX:
            return BoundaryPoint(Unit(VERTEX, k), 0.0, self.vertices[k])
        c = self.tol.canon
        if t <= c:
            return BoundaryPoint(Unit(VERTEX, k), 0.0, self.vertices[k])
        if t >= 1.0 - c:
            k1 = (k + 1) % n
            return BoundaryPoint(Unit(VERTEX, k1), 0.0, self.vertices[k1])
        return BoundaryPoint(Unit(EDGE, k), t,
                             (self.xs[k] + t * self.ex[k], self.ys[k] + t * self.ey[k]))

    def canonical(self, bp: BoundaryPoint) -> BoundaryPoint:
        return self.unit_of_point(bp.unit, bp.t)

    def arc(self, bp: BoundaryPoint) -> float:
        """Cumulative clockwise arc coordinate in ``[0, perimeter)``."""
        k = bp.unit.index
        if bp.unit.kind == VERTEX:
            return self.cum[k]
        return self.cum[k] + bp.t * self.elen[k]

    def point_at_arc(self, s: float) -> BoundaryPoint:
        s %= self.perimeter
        k = bisect.bisect_right(self.cum, s) - 1
        k = min(max(k, 0), self.n - 1)
        t = (s - self.cum[k]) / self.elen[k]
        return self.unit_of_point(Unit(EDGE, k), t)

    def wedge(self, x: Point) -> int:
        """Edge whose centroid wedge contains ``x``."""
        cx, cy = self.centroid
        th = math.atan2(x[1] - cy, x[0] - cx)
        a0 = self._ang[0]
        th = a0 - ((a0 - th) % (2 * math.pi))
        k = bisect.bisect_right(self._negang, -th) - 1
        return min(max(k, 0), self.n - 1)

    def wedge_many(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`wedge`."""
        cx, cy = self.centroid
        a0 = self._ang[0]
        th = a0 - np.mod(a0 - np.arctan2(y - cy, x - cx), 2 * math.pi)
        k = np.searchsorted(np.asarray(self._negang), -th, side="right") - 1
        return np.clip(k, 0, self.n - 1)

    def _seg(self, k: int, x: Point) -> tuple[float, float]:
        k %= self.n
        dx = x[0] - self.xs[k]
        dy = x[1] - self.ys[k]
        t = (dx * self.ex[k] + dy * self.ey[k]) / (self.elen[k] ** 2)
        tc = min(max(t, 0.0), 1.0)
        return math.hypot(dx - tc * self.ex[k], dy - tc * self.ey[k]), tc

    def locate(self, x: Point) -> tuple[BoundaryPoint, float, float]:
        """Nearest boundary point to ``x``.

        Returns ``(point, distance, inside_margin)`` where ``inside_margin`` is
        the signed distance to the wedge edge, nonnegative iff ``x`` is in P.
        """
        k = self.wedge(x)
        best = None
        for kk in (k - 1, k, k + 1):
            d, t = self._seg(kk, x)
            if best is None or d < best[0]:
                best = (d, kk % self.n, t)
        d, kk, t = best
        return self.unit_of_point(Unit(EDGE, kk), t), d, self.sdist(k, x)

    def contains(self, x: Point, tol: float = 0.0) -> bool:
        return self.sdist(self.wedge(x), x) >= -tol

    def to_dict(self) -> dict:
        return {"vertices": [[x, y] for x, y in self.vertices]}


def _farthest_table(n, xs, ys, la, lb, lc) -> list[int]:
    def h(i, k):
        k %= n
        return la[i] * xs[k] + lb[i] * ys[k] + lc[i]

    k = max(range(n), key=lambda m: h(0, m))
    out = []
    for i in range(n):
        if (k - i) % n <= 1:
            k = i + 2
        while h(i, k + 1) > h(i, k):
            k += 1
        k %= n
        out.append(k)
    return out


# --- construction ----------------------------------------------------------

def build_polygon(points: Iterable[Sequence[float]], *, tol: Tolerances = DEFAULT_TOL,
                  perturb: float | None = None, seed: int | None = None) -> Polygon:
    """Validate ``points`` and return a clockwise :class:`Polygon`.

    Either orientation is accepted.  Vertices whose turn is numerically
    straight are merged and their input indices recorded in ``merged``.  With
    ``perturb`` set, every vertex is rotated about the centroid by an
    independent uniform angle in ``[-perturb, perturb]`` before validation.
    """
    pts = [(float(p[0]), float(p[1])) for p in points]
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")
    idx = list(range(len(pts)))
    if signed_area(pts) > 0:
        pts.reverse()
        idx.reverse()
    arr = np.array(pts)
    diam = float(np.sqrt(((arr[:, None, :] - arr[None, :, :]) ** 2).sum(-1).max()))
    if diam == 0.0:
        raise TooFewVertices("all points coincide")
    merged = []
    # drop repeated points, then straight turns
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        m = len(pts)
        for k in range(m):
            a, b, c = pts[k - 1], pts[k], pts[(k + 1) % m]
            if dist(a, b) <= 1e-15 * diam:
                merged.append(idx[k])
                del pts[k], idx[k]
                changed = True
                break
            u, w = sub(b, a), sub(c, b)
            if abs(cross(u, w)) <= tol.collinear * diam * diam and dot(u, w) > 0:
                merged.append(idx[k])
                del pts[k], idx[k]
                changed = True
                break
    if merged:
        log.warning("merged %d collinear or repeated vertices: %s", len(merged), merged)
    if len(pts) < 3:
        raise TooFewVertices("fewer than 3 vertices after merging collinear points")
    if perturb:
        rng = random.Random(seed)
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        out = []
        for x, y in pts:
            a = rng.uniform(-perturb, perturb)
            ca, sa = math.cos(a), math.sin(a)
            dx, dy = x - cx, y - cy
            out.append((cx + ca * dx - sa * dy, cy + sa * dx + ca * dy))
        pts = out
    m = len(pts)
    turning = 0.0
    for k in range(m):
        u = sub(pts[k], pts[k - 1])
        w = sub(pts[(k + 1) % m], pts[k])
        cr = cross(u, w)
        if cr >= 0:
            raise NotConvex(f"vertex {idx[k]} is not a strict clockwise turn")
        turning += math.atan2(cr, dot(u, w))
    if abs(turning + 2 * math.pi) > 1e-6:
        raise NotConvex("boundary winds more than once")
    d = np.array([sub(pts[(k + 1) % m], pts[k]) for k in range(m)])
    d /= np.linalg.norm(d, axis=1)[:, None]
    cr = np.abs(d[:, None, 0] * d[None, :, 1] - d[:, None, 1] * d[None, :, 0])
    cr[np.tril_indices(m)] = np.inf
    bad = np.argwhere(cr < tol.parallel)
    if len(bad):
        i, j = (int(v) for v in bad[0])
        raise ParallelEdges(i, j, f"edges {i} and {j} are parallel"
                            " (use perturbation mode to break the tie)")
    return Polygon(pts, tol, tuple(sorted(merged)))


def polygon_from_json(data: Union[str, dict], **kw) -> Polygon:
    if isinstance(data, str):
        data = json.loads(data)
    return build_polygon(data["vertices"], **kw)


def polygon_to_json(P: Polygon) -> str:
    return json.dumps(P.to_dict())


# --- chasing and units -----------------------------------------------------

def edge_chasing(P: Polygon, i: int, j: int) -> bool:
    """True iff edge ``i`` chases edge ``j``."""
    n = P.n
    i %= n
    j %= n
    if i == j:
        raise SameEdge(f"edge {i} twice")
    return (j - i) % n < P.reach[i]


def _chases(P: Polygon, i: int, j: int) -> bool:
    n = P.n
    i %= n
    j %= n
    return i != j and (j - i) % n < P.reach[i]


def back_forw(P: Polygon, u: Union[Unit, BoundaryPoint]) -> tuple[int, int]:
    """Backward and forward edge indices of a unit (or of a point's unit)."""
    if isinstance(u, BoundaryPoint):
        u = u.unit
    k = u.index % P.n
    if u.kind == VERTEX:
        return ((k - 1) % P.n, k)
    return (k, k)


def unit_chasing(P: Polygon, u: Unit, u2: Unit) -> Chase:
    if u.kind == u2.kind and (u.index - u2.index) % P.n == 0:
        raise SameUnit(f"{u!r} twice")
    b1, f1 = back_forw(P, u)
    b2, f2 = back_forw(P, u2)
    if _chases(P, b1, b2) and _chases(P, f1, f2):
        return Chase.U_CHASES
    if _chases(P, b2, b1) and _chases(P, f2, f1):
        return Chase.U2_CHASES
    return Chase.NEITHER


def farthest_vertex(P: Polygon, i: int) -> Unit:
    return vertex(P.far[i % P.n])


# --- affine maps ------------------------------------------------------------

def line_intersection(l1: Line, l2: Line, parallel_tol: float = DEFAULT_TOL.parallel) -> Point:
    d1, d2 = l1.direction, l2.direction
    den = cross(d1, d2)
    if abs(den) <= parallel_tol * math.hypot(*d1) * math.hypot(*d2):
        raise ParallelLines("lines are parallel")
    s = cross(sub(l2.point, l1.point), d2) / den
    return (l1.point[0] + s * d1[0], l1.point[1] + s * d1[1])


def reflect(x, o: Point):
    """Central reflection of a point or a line about ``o``."""
    if isinstance(x, Line):
        return Line((2 * o[0] - x.point[0], 2 * o[1] - x.point[1]), x.direction)
    return (2 * o[0] - x[0], 2 * o[1] - x[1])


def scale(x: Point, k: float, o: Point) -> Point:
    if k == 0:
        raise ZeroFactor("scaling factor must be nonzero")
    return (o[0] + k * (x[0] - o[0]), o[1] + k * (x[1] - o[1]))


# --- portions -------------------------------------------------------------

def _offset(P: Polygon, start: BoundaryPoint, x: BoundaryPoint, tol: float) -> float:
    o = (P.arc(x) - P.arc(start)) % P.perimeter
    if o > P.perimeter - tol:
        o -= P.perimeter
    return o


def _length(P: Polygon, rho: BoundaryPortion) -> float:
    a, b = P.canonical(rho.start), P.canonical(rho.end)
    if a.unit == b.unit and a.t == b.t:
        return 0.0
    return (P.arc(b) - P.arc(a)) % P.perimeter


def portion_contains(P: Polygon, rho: BoundaryPortion, x: BoundaryPoint,
                     tol: float = 0.0) -> bool:
    """Clockwise membership with inclusivity flags; ``tol`` is an arc length."""
    L = _length(P, rho)
    o = _offset(P, rho.start, x, tol)
    if L == 0.0:
        return rho.include_start and rho.include_end and abs(o) <= tol
    if abs(o) <= tol:
        return rho.include_start
    if abs(o - L) <= tol:
        return rho.include_end
    return 0.0 < o < L


def portion_order(P: Polygon, rho: BoundaryPortion, a: BoundaryPoint,
                  b: BoundaryPoint, tol: float = 0.0) -> int:
    """-1 if ``a`` comes before ``b`` along ``rho``, 0 if equal, 1 otherwise."""
    for x in (a, b):
        if not portion_contains(P, rho, x, tol):
            raise NotInPortion(f"{x!r} not in portion")
    oa = _offset(P, rho.start, a, tol)
    ob = _offset(P, rho.start, b, tol)
    if abs(oa - ob) <= tol:
        return 0
    return -1 if oa < ob else 1


def portion_between(P: Polygon, a: Unit, b: Unit, include_start=True,
                    include_end=True) -> BoundaryPortion:
    """Portion between two vertices (convenience for ``[v_a ↻ v_b]``)."""
    return BoundaryPortion(P.unit_of_point(a), P.unit_of_point(b),
                           include_start, include_end)
