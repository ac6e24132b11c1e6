"""Enumeration of LMAP candidates, validation and the top-level queries.

Every locally maximal parallelogram has either an anchored narrow corner, an
anchored broad corner with an anchored neighbour, or four even corners.  One
enumeration covers each situation:

* ``alg_narrow`` sweeps, for every edge ``e_i``, the polygon vertices upward
  from the line of ``e_i`` through bands of heights, one band per unit
  chased by ``e_i``.  A vertex in a band is taken as the anchored corner and
  the opposite corner follows from the band's Z-points.
* ``alg_broad`` takes each vertex inside a clamping portion as the broad
  corner and reconstructs the opposite corner on the other side.
* ``alg_even`` intersects the mid-point segments of the pair set ``S``.

The cases where the unit on the far side is an edge are handled by running
the same sweeps on the mirror image of the polygon.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .clamping import h_set
from .disprod import ZTable, z_arrays
from .errors import NoCandidates
from .geom import (BoundaryPoint, EDGE, Point, Polygon, Unit, VERTEX, edge,
                   vertex)
from .pgram import Pgram, make_pgram

NARROW = "AlgNarrow"
BROAD = "AlgBroad"
EVEN = "AlgEven"
ORACLE = "Oracle"

PASSED = "Passed"
FAILED = "Failed"
NOT_RUN = "NotRun"

PROBE_STEPS = (1e-4, 1e-5)


@dataclass
class Candidate:
    pgram: Pgram
    source: str
    units: tuple = ()
    anchor: int | None = None
    inscribed: bool | None = None
    non_slidable: bool | None = None
    local_max_probe: str = NOT_RUN
    corner_points: tuple[BoundaryPoint, ...] | None = None
    also_found_by: tuple[str, ...] = ()

    @property
    def area(self) -> float:
        return self.pgram.area

    @property
    def corners(self):
        return self.pgram.corners

    @property
    def valid(self) -> bool:
        return bool(self.inscribed and self.non_slidable
                    and self.local_max_probe != FAILED)

    def flags(self) -> dict:
        return {"inscribed": bool(self.inscribed),
                "non_slidable": bool(self.non_slidable),
                "local_max_probe": self.local_max_probe}

    def corner_units(self) -> tuple[Unit, ...]:
        return tuple(bp.unit for bp in self.corner_points or ())


@dataclass
class SearchOptions:
    probe: bool = True
    keep_rejected: bool = False
    algorithms: tuple[str, ...] = (NARROW, BROAD, EVEN)


@dataclass
class LmapReport:
    polygon: Polygon
    candidates: list[Candidate]
    lmaps: list[Candidate]
    map: Candidate | None
    map_index: int | None
    counts: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)


# --- shared precomputation -------------------------------------------------

def _expand(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Flatten the integer ranges ``[lo, hi]``: (owner index, value) per element."""
    c = np.maximum(hi - lo + 1, 0)
    rep = np.repeat(np.arange(len(lo)), c)
    off = np.arange(int(c.sum())) - np.repeat(np.cumsum(c) - c, c)
    return rep, lo[rep] + off


class _Sweep:
    """Z-points and vertex heights of one polygon as flat arrays.

    ``H[i, o]`` is the height of vertex ``i + o`` above the line of edge ``i``.
    Heights rise over offsets ``1 .. reach[i]`` and fall over
    ``reach[i] .. n``; ``up`` and ``dn`` hold those runs as one sorted key
    array each, so a height lookup for any edge is a single ``searchsorted``.
    """

    def __init__(self, P: Polygon):
        self.P = P
        n = P.n
        self.X, self.Y = np.array(P.xs), np.array(P.ys)
        self.la, self.lb, self.lc = np.array(P.la), np.array(P.lb), np.array(P.lc)
        self.ex, self.ey, self.elen = np.array(P.ex), np.array(P.ey), np.array(P.elen)
        reach = self.reach = np.array(P.reach)
        za = z_arrays(P)
        self.zi, self.zm, self.zk, self.zt = za.zi, za.zm, za.zk, za.zt
        self.zx, self.zy, self.rs = za.zx, za.zy, za.rs
        ii = np.arange(n)
        o = np.arange(n + 1)
        idx = (ii[:, None] + o[None, :]) % n
        la, lb, lc = self.la[:, None], self.lb[:, None], self.lc[:, None]
        self.H = la * self.X[idx] + lb * self.Y[idx] + lc
        zi = self.zi
        self.hz = self.la[zi] * self.zx + self.lb[zi] * self.zy + self.lc[zi]
        self.D = P.diameter
        up_mask = (o[None, :] >= 1) & (o[None, :] <= reach[:, None])
        dn_mask = o[None, :] >= reach[:, None]
        self.up = (4.0 * ii[:, None] + self.H / self.D)[up_mask]
        self.up_start = np.cumsum(reach) - reach
        dn_len = n + 1 - reach
        self.dn = (4.0 * ii[:, None] - self.H / self.D)[dn_mask]
        self.dn_start = np.cumsum(dn_len) - dn_len

    def rise(self, i: np.ndarray, T: np.ndarray) -> np.ndarray:
        """Offset ``c`` with ``H[i, c] <= T < H[i, c + 1]`` on the rising run."""
        pos = np.searchsorted(self.up, 4.0 * i + T / self.D, side="right") - 1
        return pos - self.up_start[i] + 1

    def fall(self, i: np.ndarray, T: np.ndarray) -> np.ndarray:
        """Offset ``c`` with ``H[i, c] >= T > H[i, c + 1]`` on the falling run."""
        pos = np.searchsorted(self.dn, 4.0 * i - T / self.D, side="right") - 1
        return pos - self.dn_start[i] + self.reach[i]

    def rising_span(self, i: np.ndarray, lo: np.ndarray, hi: np.ndarray):
        """Offsets ``q`` in ``1 .. reach[i]`` with ``lo <= H[i, q] <= hi``."""
        a = np.searchsorted(self.up, 4.0 * i + lo / self.D, side="left") - self.up_start[i] + 1
        b = np.searchsorted(self.up, 4.0 * i + hi / self.D, side="right") - self.up_start[i]
        return np.maximum(a, 1), np.minimum(b, self.reach[i])

    def vertex_span(self, i: np.ndarray, A: np.ndarray, B: np.ndarray):
        """Offsets (from ``i``) of the vertices in the portion between Z entries ``A`` and ``B``."""
        n = self.P.n
        btol = self.P.boundary_tol
        kA, tA, kB, tB = self.zk[A], self.zt[A], self.zk[B], self.zt[B]
        oA = (kA - i) % n
        oB = (kB - i) % n
        oB = np.where(oB == 0, n, oB)
        lo = np.where(tA * self.elen[kA] <= btol, oA, oA + 1)
        hi = np.where((tB > 0.0) & ((1.0 - tB) * self.elen[kB] <= btol), oB + 1, oB)
        return lo, np.minimum(hi, n)

    def vert(self, i: np.ndarray, o: np.ndarray):
        k = (i + o) % self.P.n
        return self.X[k], self.Y[k]


def _mirror(P: Polygon) -> Polygon:
    n = P.n
    pts = [(-P.xs[(-m) % n], P.ys[(-m) % n]) for m in range(n)]
    return Polygon(pts, P.tol)


def _unmirror_unit(u: Unit, n: int) -> Unit:
    if u.kind == VERTEX:
        return Unit(VERTEX, (-u.index) % n)
    return Unit(EDGE, (-u.index - 1) % n)


def _emit(out: list, sel, a0, a1, a2, a3, src: str, units, anchor) -> None:
    for t in np.nonzero(sel)[0]:
        out.append(((float(a0[0][t]), float(a0[1][t])), (float(a1[0][t]), float(a1[1][t])),
                    (float(a2[0][t]), float(a2[1][t])), (float(a3[0][t]), float(a3[1][t])),
                    src, units(t), int(anchor[t])))


def _on_edge(sw: _Sweep, e: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Whether points known to be on the line of edge ``e`` lie on the closed edge."""
    L = sw.elen[e]
    t = ((x - sw.X[e]) * sw.ex[e] + (y - sw.Y[e]) * sw.ey[e]) / (L * L)
    tt = sw.P.boundary_tol / L
    return (t >= -tt) & (t <= 1.0 + tt)


# --- narrow corners --------------------------------------------------------

def _narrow_pass(sw: _Sweep, with_edge_pairs: bool, out: list, stats: dict) -> None:
    """Sweep for an anchored corner ``A0`` with ``A3`` on edge ``e_i``.

    ``A1`` lies on an edge or vertex chased by ``e_i``.  Bands of heights
    above the line of ``e_i`` partition the plane, one band per such unit,
    and every vertex in a band is paired with that band's unit.
    """
    P = sw.P
    n = P.n
    btol = P.boundary_tol
    count = 0
    # vertex bands: A1 = v_j, A2 on the portion between Z(i, j-1) and Z(i, j)
    B = np.nonzero(sw.zm >= 2)[0]
    A = B - 1
    i, m = sw.zi[B], sw.zm[B]
    hv = sw.H[i, m]
    lo, hi = sw.rising_span(i, hv - sw.hz[A] - btol, hv - sw.hz[B] + btol)
    rep, q = _expand(lo, hi)
    count += len(q)
    if len(q):
        A, B, i, m, hv = A[rep], B[rep], i[rep], m[rep], hv[rep]
        j = (i + m) % n
        T = hv - sw.H[i, q]
        c = np.clip(sw.fall(i, T), sw.reach[i], n - 1)
        h0, h1 = sw.H[i, c], sw.H[i, c + 1]
        t = (h0 - T) / np.where(h0 > h1, h0 - h1, 1.0)
        x0, y0 = sw.vert(i, c)
        x1, y1 = sw.vert(i, c + 1)
        a2x = np.where(T >= sw.hz[A], sw.zx[A], np.where(T <= sw.hz[B], sw.zx[B], x0 + t * (x1 - x0)))
        a2y = np.where(T >= sw.hz[A], sw.zy[A], np.where(T <= sw.hz[B], sw.zy[B], y0 + t * (y1 - y0)))
        vx, vy = sw.vert(i, q)
        a1x, a1y = sw.X[j], sw.Y[j]
        a3x, a3y = vx + a2x - a1x, vy + a2y - a1y
        ok = _on_edge(sw, i, a3x, a3y)
        _emit(out, ok, (vx, vy), (a1x, a1y), (a2x, a2y), (a3x, a3y), NARROW,
              lambda t: (edge(int(i[t])), vertex(int(j[t]))), (i + q) % n)
    # edge bands: A1 on e_j, A2 = Z(i, j)
    if with_edge_pairs:
        E = np.arange(len(sw.zi))
        i, m = sw.zi, sw.zm
        lo, hi = sw.rising_span(i, sw.H[i, m] - sw.hz - btol, sw.H[i, m + 1] - sw.hz + btol)
        rep, q = _expand(lo, hi)
        count += len(q)
        if len(q):
            E, i, m = E[rep], i[rep], m[rep]
            j = (i + m) % n
            zx, zy = sw.zx[E], sw.zy[E]
            vx, vy = sw.vert(i, q)
            mx2, my2 = vx + zx, vy + zy
            xi, yi = sw.X[i], sw.Y[i]
            den = sw.la[j] * sw.ex[i] + sw.lb[j] * sw.ey[i]
            tau = (sw.la[j] * (mx2 - xi) + sw.lb[j] * (my2 - yi) + sw.lc[j]) / den
            a3x, a3y = xi + tau * sw.ex[i], yi + tau * sw.ey[i]
            a1x, a1y = mx2 - a3x, my2 - a3y
            tt = btol / sw.elen[i]
            ok = (tau >= -tt) & (tau <= 1.0 + tt) & _on_edge(sw, j, a1x, a1y)
            _emit(out, ok, (vx, vy), (a1x, a1y), (zx, zy), (a3x, a3y), NARROW,
                  lambda t: (edge(int(i[t])), edge(int(j[t]))), (i + q) % n)
    stats[NARROW] = stats.get(NARROW, 0) + count


# --- broad corners ---------------------------------------------------------

def _broad_edge_vertex(sw: _Sweep, out: list, stats: dict) -> None:
    """Broad corner ``A2 = V`` with ``A3`` on edge ``e_i`` and ``A1`` at vertex ``v_j``.

    ``V`` runs over the vertices between ``Z(i, j-1)`` and ``Z(i, j)``; ``A0``
    is the point of ``[v_{i+1} .. v_j]`` whose height matches.
    """
    P = sw.P
    n = P.n
    btol = P.boundary_tol
    B = np.nonzero(sw.zm >= 2)[0]
    A = B - 1
    i = sw.zi[B]
    lo, hi = sw.vertex_span(i, A, B)
    rep, o = _expand(lo, hi)
    stats[BROAD] = stats.get(BROAD, 0) + len(o)
    if not len(o):
        return
    i, m = i[rep], sw.zm[B][rep]
    j = (i + m) % n
    hv = sw.H[i, m]
    T = hv - sw.H[i, o]
    c = np.clip(sw.rise(i, T), 1, m - 1)
    h0, h1 = sw.H[i, c], sw.H[i, c + 1]
    t = np.clip((T - h0) / np.where(h1 > h0, h1 - h0, 1.0), 0.0, 1.0)
    x0, y0 = sw.vert(i, c)
    x1, y1 = sw.vert(i, c + 1)
    a0x, a0y = x0 + t * (x1 - x0), y0 + t * (y1 - y0)
    vx, vy = sw.vert(i, o)
    a1x, a1y = sw.X[j], sw.Y[j]
    a3x, a3y = a0x + vx - a1x, a0y + vy - a1y
    ok = (T >= -btol) & (T <= hv + btol) & _on_edge(sw, i, a3x, a3y)
    _emit(out, ok, (a0x, a0y), (a1x, a1y), (vx, vy), (a3x, a3y), BROAD,
          lambda t: (edge(int(i[t])), vertex(int(j[t]))), (i + o) % n)


def _broad_vertex_vertex(sw: _Sweep, out: list, stats: dict) -> None:
    """Broad corner ``A2 = V`` with both neighbours at vertices ``v_i``, ``v_j``.

    ``V`` runs over the vertices between ``Z(i-1, j-1)`` and ``Z(i, j)``.
    ``A0 = v_i + v_j - V`` is then fixed, so the only test is whether it
    lands on the boundary.
    """
    P = sw.P
    n = P.n
    btol = P.boundary_tol
    B = np.nonzero(sw.zm >= 2)[0]
    i, m = sw.zi[B], sw.zm[B]
    ip = (i - 1) % n
    keep = m <= sw.reach[ip] - 1
    B, i, m, ip = B[keep], i[keep], m[keep], ip[keep]
    A = sw.rs[ip] + m - 1
    lo, hi = sw.vertex_span(i, A, B)
    rep, o = _expand(lo, hi)
    stats[BROAD] = stats.get(BROAD, 0) + len(o)
    if not len(o):
        return
    i, m = i[rep], m[rep]
    j = (i + m) % n
    k = (i + o) % n
    ax = sw.X[i] + sw.X[j] - sw.X[k]
    ay = sw.Y[i] + sw.Y[j] - sw.Y[k]
    w = P.wedge_many(ax, ay)
    s = sw.la[w] * ax + sw.lb[w] * ay + sw.lc[w]
    for t in np.nonzero(np.abs(s) <= btol)[0]:
        a0 = (float(ax[t]), float(ay[t]))
        _, d, margin = P.locate(a0)
        if d <= btol and margin >= -btol:
            ti, tj, tk = int(i[t]), int(j[t]), int(k[t])
            out.append((a0, P.vertices[tj], P.vertices[tk], P.vertices[ti], BROAD,
                        (vertex(ti), vertex(tj)), tk))


# --- even corners ------------------------------------------------------------

def s_pairs_unordered(P: Polygon) -> list[tuple[Unit, Unit]]:
    seen = set()
    out = []
    for k in range(P.n):
        for w in h_set(P, k):
            key = frozenset(((VERTEX, k), (w.kind, w.index)))
            if key not in seen:
                seen.add(key)
                out.append((vertex(k), w))
    return out


def _even(P: Polygon, out: list, stats: dict) -> None:
    pairs = s_pairs_unordered(P)
    m = len(pairs)
    stats[EVEN] = stats.get(EVEN, 0) + m * m
    if m < 2:
        return
    V = np.array(P.vertices)
    n = P.n
    vidx = np.array([u.index for u, _ in pairs])
    p0 = np.empty((m, 2))
    p1 = np.empty((m, 2))
    for s, (u, w) in enumerate(pairs):
        a = V[u.index]
        if w.kind == VERTEX:
            p0[s] = p1[s] = (a + V[w.index]) / 2
        else:
            p0[s] = (a + V[w.index]) / 2
            p1[s] = (a + V[(w.index + 1) % n]) / 2
    btol = P.boundary_tol
    d = p1 - p0
    L = np.hypot(d[:, 0], d[:, 1])
    ia, ib = np.triu_indices(m, 1)
    da, db = d[ia], d[ib]
    w = p0[ib] - p0[ia]
    den = da[:, 0] * db[:, 1] - da[:, 1] * db[:, 0]
    pa, pb = L[ia] > 0, L[ib] > 0
    hits = []
    # segment / segment
    both = pa & pb
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (w[:, 0] * db[:, 1] - w[:, 1] * db[:, 0]) / den
        t = (w[:, 0] * da[:, 1] - w[:, 1] * da[:, 0]) / den
        ea = btol / np.where(pa, L[ia], 1.0)
        eb = btol / np.where(pb, L[ib], 1.0)
        ok = (both & (np.abs(den) > 1e-14 * L[ia] * L[ib])
              & (s >= -ea) & (s <= 1 + ea) & (t >= -eb) & (t <= 1 + eb))
    for k in np.nonzero(ok)[0]:
        hits.append((ia[k], ib[k], p0[ia[k]] + s[k] * da[k]))
    # point / segment and point / point
    for x, y, px, py in ((ia, ib, pa, pb), (ib, ia, pb, pa)):
        sel = np.nonzero(~px & py)[0]
        if len(sel):
            c = p0[x[sel]]
            q0, dq = p0[y[sel]], d[y[sel]]
            Lq = L[y[sel]]
            tt = ((c - q0) * dq).sum(1) / (Lq * Lq)
            off = np.abs((c[:, 0] - q0[:, 0]) * dq[:, 1] - (c[:, 1] - q0[:, 1]) * dq[:, 0]) / Lq
            good = (off <= btol) & (tt >= -btol / Lq) & (tt <= 1 + btol / Lq)
            for k in sel[good]:
                hits.append((ia[k], ib[k], p0[x[k]]))
    sel = np.nonzero(~pa & ~pb)[0]
    if len(sel):
        gap = np.hypot(*(p0[ia[sel]] - p0[ib[sel]]).T)
        for k in sel[gap <= btol]:
            hits.append((ia[k], ib[k], p0[ia[k]]))
    for a, b, c in hits:
        cx, cy = float(c[0]), float(c[1])
        va = P.vertex(int(vidx[a]))
        vb = P.vertex(int(vidx[b]))
        a2 = (2 * cx - va[0], 2 * cy - va[1])
        b2 = (2 * cx - vb[0], 2 * cy - vb[1])
        out.append((va, vb, a2, b2, EVEN, (pairs[a], pairs[b]), None))


# --- public enumeration entry points ----------------------------------------

def _sweeps(P: Polygon) -> tuple[_Sweep, _Sweep]:
    return _Sweep(P), _Sweep(_mirror(P))


def _with_mirror(P: Polygon, run_direct, run_mirror, sweeps=None) -> list:
    sw, swm = sweeps or _sweeps(P)
    out: list = []
    run_direct(sw, out)
    mout: list = []
    run_mirror(swm, mout)
    n = P.n
    for a0, a1, a2, a3, src, units, anchor in mout:
        f = lambda p: (-p[0], p[1])
        units = tuple(_unmirror_unit(u, n) for u in units)
        out.append((f(a0), f(a3), f(a2), f(a1), src, (units[1], units[0]),
                    None if anchor is None else (-anchor) % n))
    return out


def _to_candidates(raw: list) -> list[Candidate]:
    out = []
    for a0, a1, a2, a3, src, units, anchor in raw:
        out.append(Candidate(make_pgram(a0, a1, a2, a3), src, units, anchor))
    return out


def alg_narrow(P: Polygon, Z: ZTable | None = None, stats: dict | None = None,
               sweeps=None) -> list[Candidate]:
    """Candidates with an anchored narrow corner."""
    stats = {} if stats is None else stats
    raw = _with_mirror(P, lambda s, o: _narrow_pass(s, True, o, stats),
                       lambda s, o: _narrow_pass(s, False, o, stats), sweeps)
    return _to_candidates(raw)


def alg_broad(P: Polygon, Z: ZTable | None = None, stats: dict | None = None,
              sweeps=None) -> list[Candidate]:
    """Candidates with an anchored broad corner next to an anchored corner."""
    stats = {} if stats is None else stats
    def direct(s, o):
        _broad_edge_vertex(s, o, stats)
        _broad_vertex_vertex(s, o, stats)

    raw = _with_mirror(P, direct, lambda s, o: _broad_edge_vertex(s, o, stats), sweeps)
    return _to_candidates(raw)


def alg_even(P: Polygon, stats: dict | None = None) -> list[Candidate]:
    """Candidates whose four corners are all even."""
    stats = {} if stats is None else stats
    raw: list = []
    _even(P, raw, stats)
    return _to_candidates(raw)


# --- validation ------------------------------------------------------------

def _support_edges(P: Polygon, bp: BoundaryPoint) -> tuple[int, ...]:
    k = bp.unit.index
    if bp.unit.kind == VERTEX:
        return ((k - 1) % P.n, k)
    return (k,)


def _probe(P: Polygon, bps: tuple[BoundaryPoint, ...], area: float) -> str:
    """Move each corner both ways along the boundary and look for a larger area."""
    slack = P.tol.probe_slack * area
    btol = P.boundary_tol
    la, lb, lc = P.la, P.lb, P.lc
    xs, ys, ex, ey, elen = P.xs, P.ys, P.ex, P.ey, P.elen
    arcs = [P.arc(bp) for bp in bps]
    pts = [bp.point for bp in bps]
    sup = [_support_edges(P, bp) for bp in bps]
    for step in PROBE_STEPS:
        eps = step * P.perimeter
        for c in range(4):
            ox, oy = pts[(c + 2) % 4]
            for sign in (1.0, -1.0):
                x, y = P.point_at_arc(arcs[c] + sign * eps).point
                mx2, my2 = x + ox, y + oy
                for a in sup[(c + 1) % 4]:
                    for b in sup[(c - 1) % 4]:
                        if a == b:
                            continue
                        # Y on line a with 2M - Y on line b
                        den = la[b] * ex[a] + lb[b] * ey[a]
                        if den == 0.0:
                            continue
                        sb = la[b] * (mx2 - xs[a]) + lb[b] * (my2 - ys[a]) + lc[b]
                        ta = sb / den
                        if ta < -btol / elen[a] or ta > 1.0 + btol / elen[a]:
                            continue
                        yx, yy = xs[a] + ta * ex[a], ys[a] + ta * ey[a]
                        zx, zy = mx2 - yx, my2 - yy
                        tb = ((zx - xs[b]) * ex[b] + (zy - ys[b]) * ey[b]) / (elen[b] ** 2)
                        if tb < -btol / elen[b] or tb > 1.0 + btol / elen[b]:
                            continue
                        new = 0.5 * abs((ox - x) * (zy - yy) - (oy - y) * (zx - yx))
                        if new > area + slack:
                            return FAILED
    return PASSED


def validate(P: Polygon, c: Candidate, probe: bool = False) -> Candidate:
    """Set the inscribed / non-slidable flags and optionally run the probe."""
    btol = P.boundary_tol
    bps = []
    inscribed = True
    for x in c.pgram.corners:
        bp, d, margin = P.locate(x)
        bps.append(bp)
        if d > btol or margin < -btol:
            inscribed = False
    c.corner_points = tuple(bps)
    c.inscribed = inscribed
    edges = [bp.unit.index for bp in bps if bp.unit.kind == EDGE]
    c.non_slidable = len(edges) == len(set(edges))
    if probe and inscribed and c.non_slidable:
        c.local_max_probe = _probe(P, c.corner_points, c.area)
    return c


def _is_degenerate(P: Polygon, c: Candidate) -> bool:
    return c.area <= P.tol.degenerate * P.diameter ** 2


# --- dedup -------------------------------------------------------------------

def _same_pgram(p: Pgram, q: Pgram, tol: float) -> bool:
    for x in p.corners:
        if not any(abs(x[0] - y[0]) <= tol and abs(x[1] - y[1]) <= tol for y in q.corners):
            return False
    return True


def _score(c: Candidate) -> int:
    return int(bool(c.inscribed)) + int(bool(c.non_slidable)) + int(c.local_max_probe == PASSED)


def dedup(cands: list[Candidate], tol: float) -> list[Candidate]:
    """Merge candidates whose corner sets agree within ``tol``."""
    g = max(tol * 8, 1e-300)
    grid: dict[tuple[int, int], list[int]] = {}
    kept: list[Candidate] = []
    for c in cands:
        cx, cy = c.pgram.center
        key = (math.floor(cx / g), math.floor(cy / g))
        match = None
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in grid.get((key[0] + dx, key[1] + dy), ()):
                    if _same_pgram(kept[idx].pgram, c.pgram, tol):
                        match = idx
                        break
                if match is not None:
                    break
            if match is not None:
                break
        if match is None:
            grid.setdefault(key, []).append(len(kept))
            kept.append(c)
            continue
        old = kept[match]
        srcs = {old.source, *old.also_found_by, c.source, *c.also_found_by}
        best = c if _score(c) > _score(old) else old
        best.also_found_by = tuple(sorted(srcs - {best.source}))
        kept[match] = best
    return kept


def canonical_corners(q: Pgram) -> tuple[Point, ...]:
    """Clockwise corners rotated so the lexicographically smallest comes first."""
    cs = list(q.corners)
    k = min(range(4), key=lambda m: cs[m])
    return tuple(cs[k:] + cs[:k])


# --- top level -------------------------------------------------------------

def find_all_lmaps(P: Polygon, opts: SearchOptions | None = None) -> LmapReport:
    """Enumerate, validate and deduplicate; LMAPs are the survivors."""
    opts = opts or SearchOptions()
    t0 = time.perf_counter()
    stats: dict = {}
    sweeps = _sweeps(P)
    t1 = time.perf_counter()
    raw: list[Candidate] = []
    if NARROW in opts.algorithms:
        raw += alg_narrow(P, stats=stats, sweeps=sweeps)
    if BROAD in opts.algorithms:
        raw += alg_broad(P, stats=stats, sweeps=sweeps)
    if EVEN in opts.algorithms:
        raw += alg_even(P, stats=stats)
    t2 = time.perf_counter()
    good, bad = [], []
    for c in raw:
        if _is_degenerate(P, c):
            continue
        validate(P, c)
        (good if c.inscribed and c.non_slidable else bad).append(c)
    tol = P.tol.on_boundary * P.diameter
    good = dedup(good, tol)
    if opts.probe:
        for c in good:
            c.local_max_probe = _probe(P, c.corner_points, c.area)
    t3 = time.perf_counter()
    lmaps = [c for c in good if c.local_max_probe != FAILED]
    lmaps.sort(key=lambda c: (-c.area, canonical_corners(c.pgram)))
    candidates = list(good)
    if opts.keep_rejected:
        candidates += dedup(bad, tol)
    best, best_i = _pick_map(lmaps)
    counts = dict(triples=stats.get(NARROW, 0) + stats.get(BROAD, 0),
                  even_pairs=stats.get(EVEN, 0), raw=len(raw), valid=len(good),
                  lmaps=len(lmaps), **{f"triples_{k}": v for k, v in stats.items()})
    timing = dict(setup=t1 - t0, enumerate=t2 - t1, validate=t3 - t2, total=t3 - t0)
    return LmapReport(P, candidates, lmaps, best, best_i, counts, timing)


def _pick_map(cands: list[Candidate]) -> tuple[Candidate | None, int | None]:
    if not cands:
        return None, None
    top = max(c.area for c in cands)
    ties = [(canonical_corners(c.pgram), k) for k, c in enumerate(cands)
            if c.area >= top * (1 - 1e-9)]
    k = min(ties)[1]
    return cands[k], k


def find_map(P: Polygon, opts: SearchOptions | None = None) -> Candidate:
    """A maximum-area inscribed parallelogram.

    The probe is not needed here: every candidate is a genuine inscribed
    parallelogram and the largest one is a global maximum.
    """
    opts = opts or SearchOptions(probe=False)
    rep = find_all_lmaps(P, opts)
    if rep.map is None:
        raise NoCandidates("no valid candidate found")
    return rep.map
