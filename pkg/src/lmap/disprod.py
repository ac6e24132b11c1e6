"""Distance products and their boundary maximizers (Z-points).

For chasing edges ``e_i`` and ``e_j`` the product of the distances to the two
extended lines is maximized over the polygon at a unique boundary point
``Z(i, j)`` lying strictly between ``v_{j+1}`` and ``v_i`` (clockwise).  Along
each edge the product is a downward parabola in the edge parameter, so the
maximizer is found by walking edges and inspecting end slopes.
"""

from __future__ import annotations

import enum
import math
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import NotChasing, NotSorted, VertexOutOfRange
from .geom import (BoundaryPoint, EDGE, Line, Point, Polygon, Unit, _chases)


class ZPos(enum.Enum):
    AT_VERTEX = "AtVertex"
    BEFORE = "BeforeVertex"
    AFTER = "AfterVertex"


def disprod(x: Point, l: Line, l2: Line) -> float:
    """Product of the (unsigned) distances from ``x`` to two lines."""
    return l.distance(x) * l2.distance(x)


def polygon_disprod(P: Polygon, i: int, j: int, x: Point) -> float:
    return abs(P.sdist(i % P.n, x) * P.sdist(j % P.n, x))


def _slopes(P: Polygon, i: int, j: int, k: int) -> tuple[float, float, float]:
    """Start slope, end slope and tolerance of the product along edge ``k``."""
    n = P.n
    k %= n
    k1 = (k + 1) % n
    xs, ys = P.xs, P.ys
    la, lb, lc = P.la, P.lb, P.lc
    a0 = la[i] * xs[k] + lb[i] * ys[k] + lc[i]
    a1 = la[i] * xs[k1] + lb[i] * ys[k1] + lc[i] - a0
    b0 = la[j] * xs[k] + lb[j] * ys[k] + lc[j]
    b1 = la[j] * xs[k1] + lb[j] * ys[k1] + lc[j] - b0
    g0 = a0 * b1 + a1 * b0
    c = a1 * b1
    tol = P.tol.dominance * (abs(a0 * b1) + abs(a1 * b0) + abs(c))
    return g0, g0 + 2.0 * c, tol


def _walk(P: Polygon, i: int, j: int, k: int) -> tuple[int, float]:
    """Walk clockwise from vertex ``k`` to the maximizer of the product.

    ``k`` must not lie after the maximizer.  Returns ``(edge, t)``; ``t == 0``
    means the maximizer is vertex ``edge``.
    """
    n = P.n
    k %= n
    for _ in range(n):
        if k == i:
            break
        g0, g1, tol = _slopes(P, i, j, k)
        if g0 <= tol:
            return k, 0.0
        if g1 >= -tol:
            k = (k + 1) % n
            continue
        return k, g0 / (g0 - g1)
    # only reachable through numerical breakdown; fall back to the last vertex
    return (i - 1) % n, 1.0


def _to_point(P: Polygon, k: int, t: float) -> BoundaryPoint:
    return P.unit_of_point(Unit(EDGE, k), t)


def _check(P: Polygon, i: int, j: int) -> tuple[int, int]:
    i %= P.n
    j %= P.n
    if not _chases(P, i, j):
        raise NotChasing(f"edge {i} does not chase edge {j}")
    return i, j


def z_point(P: Polygon, i: int, j: int) -> BoundaryPoint:
    """Maximizer of the distance product to the lines of edges ``i`` and ``j``."""
    i, j = _check(P, i, j)
    k, t = _walk(P, i, j, j + 1)
    return _to_point(P, k, t)


def classify_vertex_vs_z(P: Polygon, i: int, j: int, k: int) -> ZPos:
    """Locate vertex ``k`` relative to ``Z(i, j)`` with two slope tests."""
    i, j = _check(P, i, j)
    n = P.n
    k %= n
    if (k - j - 1) % n > (i - j - 1) % n:
        raise VertexOutOfRange(f"vertex {k} outside [v{(j + 1) % n} .. v{i}]")
    if k == i:
        # the product vanishes along e_i, so the slope test there is pure noise
        return ZPos.BEFORE
    g0, _, tol0 = _slopes(P, i, j, k)
    if g0 > tol0:
        return ZPos.AFTER
    _, g1, tol1 = _slopes(P, i, j, k - 1)
    if g1 < -tol1:
        return ZPos.BEFORE
    return ZPos.AT_VERTEX


class ZTable:
    """Z-points keyed by chasing edge pairs.

    Entries are stored raw as ``(edge, t, x, y)`` with ``t == 0`` meaning the
    vertex ``edge``.
    """

    __slots__ = ("P", "raw")

    def __init__(self, P: Polygon, raw: dict | None = None):
        self.P = P
        self.raw = raw if raw is not None else {}

    def __contains__(self, key) -> bool:
        return key in self.raw

    def __len__(self) -> int:
        return len(self.raw)

    def __getitem__(self, key) -> BoundaryPoint:
        k, t, _, _ = self.raw[key]
        return _to_point(self.P, k, t)

    def get(self, i: int, j: int) -> BoundaryPoint:
        n = self.P.n
        key = (i % n, j % n)
        if key not in self.raw:
            self.add(*key)
        return self[key]

    def xy(self, i: int, j: int) -> Point:
        n = self.P.n
        key = (i % n, j % n)
        if key not in self.raw:
            self.add(*key)
        r = self.raw[key]
        return (r[2], r[3])

    def unit(self, i: int, j: int) -> Unit:
        return self.get(i, j).unit

    def add(self, i: int, j: int) -> None:
        i, j = _check(self.P, i, j)
        self.raw[(i, j)] = _raw(self.P, i, j, *_walk(self.P, i, j, j + 1))

    def keys(self) -> Iterator[tuple[int, int]]:
        return iter(self.raw)

    def items(self) -> Iterator[tuple[tuple[int, int], BoundaryPoint]]:
        for key in self.raw:
            yield key, self[key]


def _raw(P: Polygon, i: int, j: int, k: int, t: float):
    bp = _to_point(P, k, t)
    if bp.unit.kind == EDGE:
        return (bp.unit.index, bp.t, bp.point[0], bp.point[1])
    return (bp.unit.index, 0.0, bp.point[0], bp.point[1])


def _advance(n: int, seq: list[int]) -> int:
    return sum((b - a) % n for a, b in zip(seq, seq[1:]))


def z_batch(P: Polygon, pairs: Iterable[tuple[int, int]]) -> ZTable:
    """Z-points of many chasing pairs with one monotone walk.

    The first and second members of the pairs must each advance clockwise by
    less than a full turn in total.  Each walk resumes from the previous
    answer when that position is not past the new maximizer, so sorted input
    costs O(m + n) overall.
    """
    n = P.n
    pairs = [_check(P, a, b) for a, b in pairs]
    if pairs and (_advance(n, [a for a, _ in pairs]) >= n
                  or _advance(n, [b for _, b in pairs]) >= n):
        raise NotSorted("pair endpoints are not in clockwise order")
    table = ZTable(P)
    cur = None
    for i, j in pairs:
        start = (j + 1) % n
        if cur is not None and (cur - start) % n <= (i - start) % n and cur != start:
            # resume only if the maximizer is not before the cursor
            _, g1, tol = _slopes(P, i, j, cur - 1)
            if g1 >= -tol:
                start = cur
        k, t = _walk(P, i, j, start)
        table.raw[(i, j)] = _raw(P, i, j, k, t)
        cur = k
    return table


def z_row(P: Polygon, i: int) -> list[tuple[int, float, float, float]]:
    """Z-points of edge ``i`` against every edge it chases, in clockwise order.

    Entry ``m`` belongs to edge ``i + 1 + m``.  The walk starts at the vertex
    farthest from the line of edge ``i`` and never moves backwards.
    """
    n = P.n
    xs, ys, la, lb, lc = P.xs, P.ys, P.la, P.lb, P.lc
    ai, bi, ci = la[i], lb[i], lc[i]
    dom = P.tol.dominance
    canon = P.tol.canon
    out = []
    k = P.far[i]
    hk = ai * xs[k] + bi * ys[k] + ci
    for m in range(1, P.reach[i]):
        j = (i + m) % n
        aj, bj, cj = la[j], lb[j], lc[j]
        while True:
            k1 = k + 1 if k + 1 < n else 0
            if k == i:
                # numerical breakdown guard
                out.append((i, 0.0, xs[i], ys[i]))
                break
            hk1 = ai * xs[k1] + bi * ys[k1] + ci
            a1 = hk1 - hk
            b0 = aj * xs[k] + bj * ys[k] + cj
            b1 = aj * xs[k1] + bj * ys[k1] + cj - b0
            g0 = hk * b1 + a1 * b0
            c = a1 * b1
            tol = dom * (abs(hk * b1) + abs(a1 * b0) + abs(c))
            if g0 <= tol:
                out.append((k, 0.0, xs[k], ys[k]))
                break
            g1 = g0 + 2.0 * c
            if g1 >= -tol:
                k = k1
                hk = hk1
                continue
            t = g0 / (g0 - g1)
            if t <= canon:
                out.append((k, 0.0, xs[k], ys[k]))
            elif t >= 1.0 - canon:
                out.append((k1, 0.0, xs[k1], ys[k1]))
            else:
                out.append((k, t, xs[k] + t * P.ex[k], ys[k] + t * P.ey[k]))
            break
    return out


def z_table_all(P: Polygon) -> ZTable:
    """Z-points of every chasing pair (O(n^2) entries, O(n^2) time)."""
    n = P.n
    raw = {}
    for i in range(n):
        for m, z in enumerate(z_row(P, i), start=1):
            raw[(i, (i + m) % n)] = z
    return ZTable(P, raw)


def check_unimodal(P: Polygon, i: int, j: int, samples: int = 1001) -> bool:
    """Sample the product along ``[v_{j+1} .. v_i]`` and test strict unimodality.

    Also requires the sampled peak to sit within one sample spacing of the
    computed Z-point.
    """
    i, j = _check(P, i, j)
    if samples < 3:
        raise ValueError("need at least 3 samples")
    n = P.n
    s0 = P.cum[(j + 1) % n]
    L = (P.cum[i] - s0) % P.perimeter
    step = L / (samples - 1)
    s = np.mod(s0 + step * np.arange(samples), P.perimeter)
    cum = np.array(P.cum)
    k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, n - 1)
    t = (s - cum[k]) / np.array(P.elen)[k]
    x = np.array(P.xs)[k] + t * np.array(P.ex)[k]
    y = np.array(P.ys)[k] + t * np.array(P.ey)[k]
    vals = np.abs((P.la[i] * x + P.lb[i] * y + P.lc[i]) * (P.la[j] * x + P.lb[j] * y + P.lc[j]))
    peak = int(np.argmax(vals))
    d = np.diff(vals)
    if (d[:peak] <= 0).any() or (d[peak:] >= 0).any():
        return False
    z = z_point(P, i, j)
    oz = (P.arc(z) - s0) % P.perimeter
    return abs(oz - peak * step) <= step * (1 + 1e-9)


class ZArrays(NamedTuple):
    """Every Z-point of a polygon as flat arrays, grouped by the first edge.

    Entry ``e`` is ``Z(zi[e], zi[e] + zm[e])`` at edge ``zk[e]`` parameter
    ``zt[e]`` (``zt == 0`` means vertex ``zk``).  Row ``i`` starts at ``rs[i]``.
    """

    zi: np.ndarray
    zm: np.ndarray
    zk: np.ndarray
    zt: np.ndarray
    zx: np.ndarray
    zy: np.ndarray
    rs: np.ndarray


def z_arrays(P: Polygon) -> ZArrays:
    """Vectorized Z-points of all chasing pairs.

    The walk of :func:`z_point` stops at the first edge where the product
    stops increasing; by unimodality that predicate is monotone along the
    portion, so each pair is resolved by a batched binary search starting at
    the vertex farthest from the first line.
    """
    n = P.n
    X, Y = np.array(P.xs), np.array(P.ys)
    la, lb, lc = np.array(P.la), np.array(P.lb), np.array(P.lc)
    ex, ey = np.array(P.ex), np.array(P.ey)
    reach = np.array(P.reach)
    lens = reach - 1
    rs = np.cumsum(lens) - lens
    zi = np.repeat(np.arange(n), lens)
    zm = np.arange(int(lens.sum())) - rs[zi] + 1
    zj = (zi + zm) % n
    dom = P.tol.dominance

    def slopes(o):
        k = (zi + o) % n
        k1 = (k + 1) % n
        a0 = la[zi] * X[k] + lb[zi] * Y[k] + lc[zi]
        a1 = la[zi] * X[k1] + lb[zi] * Y[k1] + lc[zi] - a0
        b0 = la[zj] * X[k] + lb[zj] * Y[k] + lc[zj]
        b1 = la[zj] * X[k1] + lb[zj] * Y[k1] + lc[zj] - b0
        g0 = a0 * b1 + a1 * b0
        c = a1 * b1
        tol = dom * (np.abs(a0 * b1) + np.abs(a1 * b0) + np.abs(c))
        return g0, g0 + 2.0 * c, tol

    lo = reach[zi].copy()
    hi = np.full(len(zi), n - 1)
    # first offset in [lo, hi] where the walk stops; hi itself is the fallback
    while True:
        act = lo < hi
        if not act.any():
            break
        mid = (lo + hi) // 2
        g0, g1, tol = slopes(mid)
        stop = (g0 <= tol) | (g1 < -tol)
        hi = np.where(act & stop, mid, hi)
        lo = np.where(act & ~stop, mid + 1, lo)
    g0, g1, tol = slopes(lo)
    k = (zi + lo) % n
    canon = P.tol.canon
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(g0 <= tol, 0.0, g0 / (g0 - g1))
    t = np.where(lo == n - 1, np.where(g1 < -tol, t, 1.0), t)
    at_end = t >= 1.0 - canon
    k = np.where(at_end, (k + 1) % n, k)
    t = np.where(at_end | (t <= canon), 0.0, t)
    zx = X[k] + t * ex[k]
    zy = Y[k] + t * ey[k]
    return ZArrays(zi, zm, k, t, zx, zy, rs)
