import math

import pytest

from lmap.analysis import random_polygon, regular_polygon
from lmap.geom import build_polygon

TRIANGLE = [(0.0, 0.0), (0.0, 4.0), (4.0, 0.0)]


@pytest.fixture
def tri():
    return build_polygon(TRIANGLE)


@pytest.fixture
def pentagon():
    return regular_polygon(5)


def close(p, q, tol=1e-9):
    return math.hypot(p[0] - q[0], p[1] - q[1]) <= tol


def same_set(ps, qs, tol=1e-9):
    return len(ps) == len(qs) and all(any(close(p, q, tol) for q in qs) for p in ps)


def corpus(count=20, lo=5, hi=20, base=0):
    """Seeded random polygons with vertex counts cycling through [lo, hi]."""
    return [random_polygon(lo + s % (hi - lo + 1), base + s) for s in range(count)]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
