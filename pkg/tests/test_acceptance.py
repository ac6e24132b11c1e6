"""Acceptance criteria 1-12, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and also when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest

from conftest import TRIANGLE, corpus, same_set
from lmap.analysis import (heilbronn4, min_triangle, nonconcavity_witness, oracle_map,
                           random_heilbronn4, random_polygon, regular_polygon)
from lmap.geom import build_polygon
from lmap.invariants import (check_anchoring, check_area_identity, check_bimonotonicity,
                             check_clamping, check_count_bound, check_interleaving,
                             check_oracle, check_unimodality, check_z_batch, check_z_midpoint)
from lmap.search import find_all_lmaps, find_map

RESULTS: dict[int, str] = {}

SMALL = corpus(20, 5, 20, base=1000)
ORACLE_SET = corpus(50, 5, 12, base=2000)


def record(k: int, ok: bool, detail: str) -> None:
    RESULTS[k] = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    print(RESULTS[k])
    assert ok, RESULTS[k]


def timed(f, repeat=3):
    f()
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        out = f()
        best = min(best, time.perf_counter() - t)
    return out, best


def structure_corpus():
    return [build_polygon(TRIANGLE), regular_polygon(5)] + SMALL + ORACLE_SET


def test_c01_pentagon():
    P = regular_polygon(5)
    (rep, m), dt = timed(lambda: (find_all_lmaps(P), find_map(P)))
    areas = [c.area for c in rep.lmaps]
    spread = (max(areas) - min(areas)) / max(areas)
    in_set = any(same_set(m.corners, c.corners) for c in rep.lmaps)
    ok = len(rep.lmaps) == 5 and spread <= 1e-9 and in_set and dt < 0.05
    record(1, ok, f"{len(rep.lmaps)} LMAPs, area spread {spread:.2e}, "
                  f"map in set {in_set}, {dt * 1e3:.1f} ms")


def test_c02_triangle():
    P = build_polygon(TRIANGLE)
    (rep, _), dt = timed(lambda: (find_all_lmaps(P), find_map(P)))
    areas_ok = all(abs(c.area - 4) <= 1e-9 for c in rep.lmaps)
    anchored = any(same_set(c.corners, [(0, 0), (0, 2), (2, 2), (2, 0)]) for c in rep.lmaps)
    ok = len(rep.lmaps) == 3 and areas_ok and anchored and dt < 0.01
    record(2, ok, f"{len(rep.lmaps)} LMAPs, all area 4 {areas_ok}, "
                  f"square at (0,0) {anchored}, {dt * 1e3:.1f} ms")


def test_c03_oracle():
    t = time.perf_counter()
    bad, worst = [], 0.0
    for s, P in enumerate(ORACLE_SET):
        m = find_map(P).area
        o = oracle_map(P, 120)
        worst = max(worst, (m - o.area) / o.slack_estimate)
        if o.area > m + 1e-9 * P.area or m - o.area > o.slack_estimate:
            bad.append(s)
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    record(3, ok, f"{len(ORACLE_SET)} polygons, {len(bad)} violations, "
                  f"worst gap/slack {worst:.3f}, {dt:.1f} s")


def test_c04_area_identity():
    r = check_area_identity(1000, seed=4)
    ok = r.ok and r.checked == 1000 and r.max_error <= 1e-9
    record(4, ok, f"{r.checked} instances, max relative error {r.max_error:.2e}")


def test_c05_unimodal_bimonotone():
    checked = viol = 0
    for P in SMALL:
        for r in (check_unimodality(P, 1001), check_bimonotonicity(P)):
            checked += r.checked
            viol += len(r.violations)
    record(5, viol == 0, f"{checked} checks on {len(SMALL)} polygons, {viol} violations")


def test_c06_midpoint_batch():
    worst, checked, viol = 0.0, 0, 0
    for P in SMALL:
        for r in (check_z_midpoint(P), check_z_batch(P)):
            checked += r.checked
            viol += len(r.violations)
            worst = max(worst, r.max_error / P.diameter)
    ok = viol == 0 and worst <= 1e-9
    record(6, ok, f"{checked} checks, max deviation {worst:.2e} x diameter")


def test_c07_structure():
    checked = viol = 0
    for P in structure_corpus():
        lm = find_all_lmaps(P).lmaps
        for r in (check_anchoring(P, lm), check_clamping(P, lm)):
            checked += r.checked
            viol += len(r.violations)
    record(7, viol == 0, f"{checked} anchoring and clamping checks, {viol} violations")


def test_c08_interleave_count():
    checked = viol = 0
    for P in structure_corpus():
        lm = find_all_lmaps(P).lmaps
        for r in (check_interleaving(P, lm), check_count_bound(P, lm)):
            checked += r.checked
            viol += len(r.violations)
    record(8, viol == 0, f"{checked} pair and count checks, {viol} violations")


def test_c09_witness():
    w = nonconcavity_witness()
    record(9, w == (2, 2, 0), f"witness {w}")


def test_c10_heilbronn():
    h = heilbronn4(build_polygon(TRIANGLE))
    tri_ok = abs(h.value - 8 / 3) <= 1e-9 and abs(min_triangle(h.placement) - 8 / 3) <= 1e-9
    beaten = 0
    for s in range(10):
        P = random_polygon(5 + s, 3000 + s)
        if random_heilbronn4(P, restarts=10000, seed=s) > heilbronn4(P).value + 1e-9:
            beaten += 1
    record(10, tri_ok and beaten == 0,
           f"triangle value {h.value:.12f}, random search wins {beaten} of 10")


def test_c11_scaling():
    ns = [16, 32, 64, 128, 256, 512]
    counts = []
    for n in ns:
        P = random_polygon(n, n)
        rep = find_all_lmaps(P)
        counts.append(rep.counts["triples"])
    slope = float(np.polyfit(np.log(ns), np.log(counts), 1)[0])
    P = random_polygon(512, 512)
    _, dt = timed(lambda: find_all_lmaps(P), repeat=1)
    ok = slope <= 2.2 and dt < 2
    record(11, ok, f"triples {counts}, exponent {slope:.3f}, n=512 in {dt:.2f} s")


def test_c12_near_circle():
    P = regular_polygon(101)
    m = find_map(P).area
    ratio = m / P.area
    r = check_oracle(P, m, 200)
    ok = 0.62 <= ratio <= 0.66 and r.ok
    record(12, ok, f"ratio {ratio:.5f} (2/pi = {2 / math.pi:.5f}), oracle N=200 agrees {r.ok}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
