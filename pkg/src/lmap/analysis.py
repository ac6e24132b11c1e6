"""Interleaving checks, the sampled oracle, Heilbronn m=4 and polygon generators."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationFailed, LmapError, NotInscribed
from .geom import DEFAULT_TOL, Point, Polygon, Tolerances, build_polygon
from .pgram import Pgram, make_pgram
from .search import Candidate, SearchOptions, find_map

# Sampling slack constant: MAP area minus the oracle best stays below
# SLACK_C * perimeter * diameter / N.  Measured worst ratio over 500 seeded
# polygons is about 0.46; the constant keeps a 2x margin.
SLACK_C = 1.0


# --- interleaving ------------------------------------------------------------

def _corner_arcs(P: Polygon, q) -> list[float]:
    tol = P.boundary_tol
    out = []
    for x in (q.corners if isinstance(q, (Pgram, Candidate)) else q):
        bp, d, margin = P.locate(x)
        if d > tol or margin < -tol:
            raise NotInscribed(f"corner {x} is not on the boundary")
        out.append(P.arc(bp))
    return out


def _arcs_hit(P: Polygon, a: list[float], b: list[float], tol: float) -> bool:
    per = P.perimeter
    for m in range(4):
        s, e = a[m], a[(m + 1) % 4]
        L = (e - s) % per
        if not any((x - s + tol) % per <= L + 2 * tol for x in b):
            return False
    return True


def interleaves(P: Polygon, q1, q2) -> bool:
    """Every closed boundary arc between consecutive corners of one holds a corner of the other."""
    a, b = _corner_arcs(P, q1), _corner_arcs(P, q2)
    tol = P.boundary_tol
    return _arcs_hit(P, a, b, tol) and _arcs_hit(P, b, a, tol)


@dataclass
class InterleaveReport:
    pairs_checked: int
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_interleaving(P: Polygon, lmaps) -> InterleaveReport:
    rep = InterleaveReport(0)
    for a, b in itertools.combinations(range(len(lmaps)), 2):
        rep.pairs_checked += 1
        if not interleaves(P, lmaps[a], lmaps[b]):
            rep.violations.append((a, b))
    return rep


# --- oracle ------------------------------------------------------------------

@dataclass
class OracleResult:
    best: Pgram | None
    samples_per_boundary: int
    slack_estimate: float

    @property
    def area(self) -> float:
        return self.best.area if self.best is not None else 0.0


def slack_estimate(P: Polygon, N: int) -> float:
    return SLACK_C * P.perimeter * P.diameter / N


def oracle_map(P: Polygon, N: int = 120) -> OracleResult:
    """Best parallelogram with three corners among ``N`` arc-uniform boundary samples."""
    if N < 8:
        raise ValueError("need at least 8 samples")
    pts = np.array([P.point_at_arc(P.perimeter * m / N).point for m in range(N)])
    la, lb, lc = np.array(P.la), np.array(P.lb), np.array(P.lc)
    ctol = P.tol.containment * P.diameter
    best, best_key = 0.0, None
    jj, kk = np.triu_indices(N, 1)
    for i in range(N - 2):
        sel = jj > i
        j, k = jj[sel], kk[sel]
        a0 = pts[i]
        a1, a2 = pts[j], pts[k]
        a3 = a0 + a2 - a1
        inside = np.all(a3[:, :1] * la + a3[:, 1:] * lb + lc >= -ctol, axis=1)
        if not inside.any():
            continue
        d1, d2 = a1[inside] - a0, a2[inside] - a1[inside]
        area = np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
        m = int(np.argmax(area))
        if area[m] > best:
            best = float(area[m])
            best_key = (i, int(j[inside][m]), int(k[inside][m]))
    q = None
    if best_key is not None:
        i, j, k = best_key
        a0, a1, a2 = (tuple(map(float, pts[t])) for t in best_key)
        a3 = (a0[0] + a2[0] - a1[0], a0[1] + a2[1] - a1[1])
        q = make_pgram(a0, a1, a2, a3)
    return OracleResult(q, N, slack_estimate(P, N))


# --- Heilbronn m = 4 -----------------------------------------------------------

def max_area_triangle(P: Polygon) -> tuple[tuple[Point, Point, Point], float]:
    """Brute force over vertex triples."""
    V = np.array(P.vertices)
    n = P.n
    best, arg = -1.0, None
    for i in range(n - 2):
        j, k = np.triu_indices(n - i - 1, 1)
        j, k = j + i + 1, k + i + 1
        d1, d2 = V[j] - V[i], V[k] - V[i]
        a = 0.5 * np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
        m = int(np.argmax(a))
        if a[m] > best:
            best, arg = float(a[m]), (i, int(j[m]), int(k[m]))
    tri = tuple(P.vertex(t) for t in arg)
    return tri, best


def _tri(a: Point, b: Point, c: Point) -> float:
    return 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def min_triangle(pts) -> float:
    """Smallest triangle area over all triples of the points."""
    return min(_tri(*t) for t in itertools.combinations(pts, 3))


@dataclass
class Heilbronn4Result:
    value: float
    placement: tuple[Point, Point, Point, Point]
    t: float
    p: float


def heilbronn4(P: Polygon) -> Heilbronn4Result:
    """Four points in ``P`` maximizing the smallest triangle they span."""
    tri, t = max_area_triangle(P)
    p_c = find_map(P)
    p = p_c.area
    if t / 3 >= p / 2:
        g = (sum(x for x, _ in tri) / 3, sum(y for _, y in tri) / 3)
        place = tri + (g,)
    else:
        place = tuple(p_c.corners)
    return Heilbronn4Result(max(t / 3, p / 2), place, t, p)


def random_heilbronn4(P: Polygon, restarts: int = 10000, seed: int = 0) -> float:
    """Best min-triangle area among random 4-point sets drawn uniformly in ``P``."""
    rng = np.random.default_rng(seed)
    V = np.array(P.vertices)
    lo, hi = V.min(0), V.max(0)
    la, lb, lc = np.array(P.la), np.array(P.lb), np.array(P.lc)
    need = restarts * 4
    pts = np.empty((0, 2))
    while len(pts) < need:
        cand = rng.uniform(lo, hi, size=(2 * need, 2))
        ok = np.all(cand[:, :1] * la + cand[:, 1:] * lb + lc >= 0, axis=1)
        pts = np.vstack([pts, cand[ok]])
    q = pts[:need].reshape(restarts, 4, 2)
    best = np.full(restarts, np.inf)
    for a, b, c in itertools.combinations(range(4), 3):
        d1, d2 = q[:, b] - q[:, a], q[:, c] - q[:, a]
        best = np.minimum(best, 0.5 * np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]))
    return float(best.max())


# --- non-concavity -------------------------------------------------------------

def _objective(x) -> float:
    _, _, x1, y1, x2, y2 = x
    return abs(x1 * y2 - x2 * y1)


def nonconcavity_witness() -> tuple[float, float, float]:
    """The half-diagonal determinant at two feasible points and their midpoint."""
    x = (0, 0, 1, 1, 1, -1)
    x2 = (0, 0, -1, -1, -1, 1)
    mid = tuple((a + b) / 2 for a, b in zip(x, x2))
    return _objective(x), _objective(x2), _objective(mid)


# --- generators --------------------------------------------------------------

def regular_polygon(k: int, *, tol: Tolerances = DEFAULT_TOL, perturb: float = 0.0,
                    seed: int | None = None) -> Polygon:
    if k < 3:
        raise ValueError("k must be at least 3")
    pts = [(math.cos(math.pi / 2 - 2 * math.pi * m / k),
            math.sin(math.pi / 2 - 2 * math.pi * m / k)) for m in range(k)]
    return build_polygon(pts, tol=tol, perturb=perturb, seed=seed)


def _valtr(n: int, rng: np.random.Generator) -> list[Point]:
    """Uniformly random convex polygon with ``n`` vertices (Valtr's method)."""
    def chains(vals):
        vals = np.sort(vals)
        lo, hi = vals[0], vals[-1]
        a, b = [lo], [lo]
        for v in vals[1:-1]:
            (a if rng.random() < 0.5 else b).append(v)
        a.append(hi)
        b.append(hi)
        return np.concatenate([np.diff(a), -np.diff(b)])

    dx = chains(rng.random(n))
    dy = chains(rng.random(n))
    rng.shuffle(dy)
    ang = np.arctan2(dy, dx)
    order = np.argsort(ang)
    vec = np.stack([dx[order], dy[order]], 1)
    pts = np.cumsum(vec, 0)
    pts -= pts.mean(0)
    pts /= np.abs(pts).max()
    return [tuple(map(float, p)) for p in pts]


def convex_hull(points) -> list[Point]:
    """Monotone chain hull, counterclockwise, without collinear points."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) < 3:
        return pts

    def half(seq):
        h: list = []
        for p in seq:
            while len(h) >= 2 and ((h[-1][0] - h[-2][0]) * (p[1] - h[-2][1])
                                   - (h[-1][1] - h[-2][1]) * (p[0] - h[-2][0])) <= 0:
                h.pop()
            h.append(p)
        return h

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _disk_hull(n: int, rng: np.random.Generator) -> list[Point]:
    r = np.sqrt(rng.random(n))
    t = rng.random(n) * 2 * math.pi
    return convex_hull([(float(a), float(b)) for a, b in zip(r * np.cos(t), r * np.sin(t))])


def random_polygon(n: int, seed: int, *, method: str = "valtr", attempts: int = 1000,
                   tol: Tolerances = DEFAULT_TOL) -> Polygon:
    """Seeded random convex ``n``-gon with no parallel edges.

    ``valtr`` draws the vertex count exactly; ``disk`` takes the hull of ``n``
    uniform disk points and redraws until the hull keeps all of them.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = np.random.default_rng(seed)
    draw = {"valtr": _valtr, "disk": _disk_hull}[method]
    for _ in range(attempts):
        pts = draw(n, rng)
        if len(pts) != n:
            continue
        try:
            P = build_polygon(pts, tol=tol)
        except LmapError:
            continue
        if P.n == n:
            return P
    raise GenerationFailed(f"no valid {n}-gon after {attempts} attempts")


def gen_polygon(spec: str, *, seed: int | None = None, perturb: float = 0.0,
                tol: Tolerances = DEFAULT_TOL, method: str = "valtr") -> Polygon:
    """``regular:K`` or ``random:N`` (the latter needs ``seed``)."""
    kind, _, arg = spec.partition(":")
    k = int(arg)
    if kind == "regular":
        return regular_polygon(k, tol=tol, perturb=perturb, seed=seed)
    if kind == "random":
        if seed is None:
            raise ValueError("random generation needs a seed")
        return random_polygon(k, seed, method=method, tol=tol)
    raise ValueError(f"unknown generator {spec!r}")
