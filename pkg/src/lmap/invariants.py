"""Invariant families checked by ``selftest`` and the acceptance suite.

Each family returns a :class:`FamilyResult`; ``violations`` lists short
descriptions of whatever failed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .analysis import oracle_map, verify_interleaving
from .clamping import zeta
from .disprod import ZTable, check_unimodal, z_arrays, z_batch, z_point
from .errors import NotInscribed
from .geom import (BoundaryPortion, Chase, EDGE, Line, Polygon, line_intersection,
                   portion_contains, portion_order, unit_chasing, vertex)
from .pgram import Pgram, area_identity_check
from .search import Candidate, SearchOptions, find_all_lmaps

FAMILIES = ("unimodality", "bi-monotonicity", "area identity", "z midpoint",
            "z batch", "anchoring", "clamping", "interleaving", "count bound",
            "oracle agreement")


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    max_error: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.violations[0]})" if self.violations else ""
        return f"{status} {self.name}: {self.checked} checks{extra}"


def chasing_pairs(P: Polygon):
    n = P.n
    for i in range(n):
        for m in range(1, P.reach[i]):
            yield i, (i + m) % n


# --- Z-points ------------------------------------------------------------------

def check_unimodality(P: Polygon, samples: int = 1001) -> FamilyResult:
    r = FamilyResult("unimodality")
    for i, j in chasing_pairs(P):
        r.checked += 1
        if not check_unimodal(P, i, j, samples):
            r.violations.append(f"pair ({i},{j})")
    return r


def check_bimonotonicity(P: Polygon) -> FamilyResult:
    """Z(i, j) never moves counterclockwise when ``i`` or ``j`` advances."""
    r = FamilyResult("bi-monotonicity")
    n = P.n
    Z = ZTable(P)
    tol = P.boundary_tol
    pairs = set(chasing_pairs(P))
    for i, j in sorted(pairs):
        for i2, j2 in ((i, (j + 1) % n), ((i + 1) % n, j)):
            if (i2, j2) not in pairs:
                continue
            r.checked += 1
            a, b = Z.get(i, j), Z.get(i2, j2)
            rho = BoundaryPortion(P.unit_of_point(vertex((j + 1) % n)),
                                  P.unit_of_point(vertex(i2)))
            if portion_order(P, rho, a, b, tol) > 0:
                r.violations.append(f"Z({i},{j}) after Z({i2},{j2})")
    return r


def check_z_midpoint(P: Polygon) -> FamilyResult:
    """A Z-point inside edge ``k`` is the midpoint of that edge line's two crossings."""
    r = FamilyResult("z midpoint")
    tol = 1e-9 * P.diameter
    for i, j in chasing_pairs(P):
        z = z_point(P, i, j)
        if z.unit.kind != EDGE:
            continue
        k = z.unit.index
        lk = P.edge_line(k)
        a = line_intersection(P.edge_line(i), lk)
        b = line_intersection(P.edge_line(j), lk)
        err = math.hypot(z.point[0] - (a[0] + b[0]) / 2, z.point[1] - (a[1] + b[1]) / 2)
        r.checked += 1
        r.max_error = max(r.max_error, err)
        if err > tol:
            r.violations.append(f"Z({i},{j}) off by {err:.3g}")
    return r


def check_z_batch(P: Polygon) -> FamilyResult:
    """Row batches, column batches and the vectorized table all equal ``z_point``."""
    r = FamilyResult("z batch")
    n = P.n
    tol = 1e-9 * P.diameter
    single = {(i, j): z_point(P, i, j).point for i, j in chasing_pairs(P)}
    batches = [[(i, (i + m) % n) for m in range(1, P.reach[i])] for i in range(n)]
    cols: dict[int, list] = {}
    for i, j in single:
        cols.setdefault(j, []).append(((j - i) % n, i, j))
    for j, lst in cols.items():
        batches.append([(i, jj) for _, i, jj in sorted(lst, reverse=True)])
    for b in batches:
        for key, bp in z_batch(P, b).items():
            _compare(r, key, bp.point, single[key], tol)
    za = z_arrays(P)
    for e in range(len(za.zi)):
        key = (int(za.zi[e]), int((za.zi[e] + za.zm[e]) % n))
        _compare(r, key, (float(za.zx[e]), float(za.zy[e])), single[key], tol)
    return r


def _compare(r: FamilyResult, key, p, q, tol) -> None:
    err = math.hypot(p[0] - q[0], p[1] - q[1])
    r.checked += 1
    r.max_error = max(r.max_error, err)
    if err > tol:
        r.violations.append(f"Z{key} differs by {err:.3g}")


# --- parallelogram construction -----------------------------------------------

def random_quadrant_instance(rng: random.Random):
    """Two lines through a common point and two points in one of their quadrants."""
    o = (rng.uniform(-5, 5), rng.uniform(-5, 5))
    a1 = rng.uniform(0, math.pi)
    a2 = a1 + rng.uniform(0.2, math.pi - 0.2)
    d1 = (math.cos(a1), math.sin(a1))
    d2 = (math.cos(a2), math.sin(a2))
    s1, s2 = rng.choice((-1, 1)), rng.choice((-1, 1))

    def pt():
        u, v = rng.uniform(0.1, 3), rng.uniform(0.1, 3)
        return (o[0] + s1 * u * d1[0] + s2 * v * d2[0], o[1] + s1 * u * d1[1] + s2 * v * d2[1])

    return pt(), pt(), Line(o, d1), Line(o, d2)


def check_area_identity(count: int = 1000, seed: int = 0) -> FamilyResult:
    r = FamilyResult("area identity")
    rng = random.Random(seed)
    for _ in range(count):
        x, x2, l, l2 = random_quadrant_instance(rng)
        area, rhs = area_identity_check(x, x2, l, l2)
        err = abs(area - rhs) / max(area, rhs, 1e-300)
        r.checked += 1
        r.max_error = max(r.max_error, err)
        if err > 1e-9:
            r.violations.append(f"relative error {err:.3g}")
    return r


# --- LMAP structure --------------------------------------------------------------

def check_anchoring(P: Polygon, lmaps: list[Candidate]) -> FamilyResult:
    """Every LMAP has a corner at a polygon vertex."""
    r = FamilyResult("anchoring")
    tol = P.boundary_tol
    for idx, c in enumerate(lmaps):
        r.checked += 1
        near = min(math.hypot(x[0] - v[0], x[1] - v[1]) for x in c.corners for v in P.vertices)
        if near > tol:
            r.violations.append(f"lmap {idx} has no corner at a vertex")
    return r


def check_clamping(P: Polygon, lmaps: list[Candidate]) -> FamilyResult:
    """Broad and even corners lie in the clamping portion of their neighbours' units.

    For corner ``A_c`` the unit ``u`` houses ``A_{c+1}`` and ``u'`` houses
    ``A_{c-1}``.  When ``u`` chases ``u'`` or neither chases the other, the
    corner must lie in ``zeta(u, u')``.
    """
    r = FamilyResult("clamping")
    Z = ZTable(P)
    tol = P.boundary_tol
    for idx, c in enumerate(lmaps):
        bps = [P.locate(x)[0] for x in c.corners]
        for k in range(4):
            u, u2 = bps[(k + 1) % 4].unit, bps[(k - 1) % 4].unit
            if u == u2:
                continue
            rel = unit_chasing(P, u, u2)
            if rel is Chase.U2_CHASES:
                continue
            r.checked += 1
            rho = zeta(P, Z, u, u2).portion
            if not portion_contains(P, rho, bps[k], tol):
                kind = "broad" if rel is Chase.U_CHASES else "even"
                r.violations.append(f"lmap {idx} {kind} corner {k} outside zeta({u!r},{u2!r})")
    return r


def check_interleaving(P: Polygon, lmaps: list[Candidate]) -> FamilyResult:
    r = FamilyResult("interleaving")
    try:
        rep = verify_interleaving(P, lmaps)
    except NotInscribed as e:
        r.violations.append(str(e))
        return r
    r.checked = rep.pairs_checked
    r.violations = [f"lmaps {a} and {b}" for a, b in rep.violations]
    return r


def check_count_bound(P: Polygon, lmaps: list[Candidate]) -> FamilyResult:
    r = FamilyResult("count bound", checked=1)
    if len(lmaps) > 2 * P.n:
        r.violations.append(f"{len(lmaps)} LMAPs for n={P.n}")
    return r


def check_oracle(P: Polygon, map_area: float, samples: int = 120) -> FamilyResult:
    r = FamilyResult("oracle agreement", checked=1)
    o = oracle_map(P, samples)
    r.max_error = map_area - o.area
    if o.area > map_area + 1e-9 * map_area:
        r.violations.append(f"oracle {o.area:.12g} beats algorithm {map_area:.12g}")
    elif map_area - o.area > o.slack_estimate:
        r.violations.append(f"gap {map_area - o.area:.3g} above slack {o.slack_estimate:.3g}")
    return r


def run_families(P: Polygon, *, samples: int = 120, unimodal_samples: int = 1001,
                 probe: bool = True, corrupt: bool = False) -> list[FamilyResult]:
    """All families on one polygon, in :data:`FAMILIES` order.

    ``corrupt`` shrinks the first LMAP about its centre before the structural
    checks; it exists so tests can confirm that a broken candidate is caught.
    """
    rep = find_all_lmaps(P, SearchOptions(probe=probe))
    lmaps = list(rep.lmaps)
    if corrupt and lmaps:
        lmaps[0] = corrupted(lmaps[0])
    map_area = rep.map.area if rep.map is not None else 0.0
    return [
        check_unimodality(P, unimodal_samples),
        check_bimonotonicity(P),
        check_area_identity(),
        check_z_midpoint(P),
        check_z_batch(P),
        check_anchoring(P, lmaps),
        check_clamping(P, lmaps),
        check_interleaving(P, lmaps),
        check_count_bound(P, lmaps),
        check_oracle(P, map_area, samples),
    ]


def corrupted(c: Candidate, factor: float = 0.9) -> Candidate:
    cx, cy = c.pgram.center
    pts = tuple((cx + factor * (x - cx), cy + factor * (y - cy)) for x, y in c.corners)
    return Candidate(Pgram(pts), c.source, c.units, c.anchor)
