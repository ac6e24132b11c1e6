"""Parallelograms and the construction from two opposite corners and two lines."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .disprod import disprod
from .errors import QuadrantMismatch
from .geom import Line, Point, cross, line_intersection, reflect, sub


class Side(enum.Enum):
    X_INSIDE = "XInside"
    X2_INSIDE = "X'Inside"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class Pgram:
    """Four corners in clockwise order (possibly degenerate)."""

    corners: tuple[Point, Point, Point, Point]

    @property
    def area(self) -> float:
        a0, a1, a2, a3 = self.corners
        return 0.5 * abs(cross(sub(a2, a0), sub(a3, a1)))

    @property
    def center(self) -> Point:
        a0, _, a2, _ = self.corners
        return ((a0[0] + a2[0]) * 0.5, (a0[1] + a2[1]) * 0.5)

    def bisection_error(self) -> float:
        a0, a1, a2, a3 = self.corners
        return math.hypot(a0[0] + a2[0] - a1[0] - a3[0], a0[1] + a2[1] - a1[1] - a3[1])


def make_pgram(a0: Point, a1: Point, a2: Point, a3: Point) -> Pgram:
    """Parallelogram with corners reordered clockwise, keeping ``a0`` first."""
    if cross(sub(a2, a0), sub(a3, a1)) > 0:
        a1, a3 = a3, a1
    return Pgram((a0, a1, a2, a3))


def midpoint_pair_on_lines(l: Line, l2: Line, m: Point) -> tuple[Point, Point]:
    """The points ``Y`` on ``l`` and ``Y'`` on ``l2`` whose midpoint is ``m``."""
    y = line_intersection(l, reflect(l2, m))
    return y, (2 * m[0] - y[0], 2 * m[1] - y[1])


def _scale(*pts: Point) -> float:
    return max([1.0] + [abs(c) for p in pts for c in p])


def _check_quadrant(x: Point, x2: Point, l: Line, l2: Line, tol: float | None) -> None:
    if tol is None:
        tol = 1e-9 * _scale(x, x2, l.point, l2.point)
    for line in (l, l2):
        s1, s2 = line.side(x), line.side(x2)
        if (s1 > tol and s2 < -tol) or (s1 < -tol and s2 > tol):
            raise QuadrantMismatch("points lie in different quadrants of the lines")


def pgram_from_opposite(x: Point, x2: Point, l: Line, l2: Line,
                        quad_tol: float | None = None) -> Pgram:
    """Parallelogram ``x Y x2 Y'`` with ``Y`` on ``l`` and ``Y'`` on ``l2``."""
    _check_quadrant(x, x2, l, l2, quad_tol)
    m = ((x[0] + x2[0]) * 0.5, (x[1] + x2[1]) * 0.5)
    y, y2 = midpoint_pair_on_lines(l, l2, m)
    return make_pgram(x, y, x2, y2)


def _sin_between(l: Line, l2: Line) -> float:
    d1, d2 = l.direction, l2.direction
    return abs(cross(d1, d2)) / (math.hypot(*d1) * math.hypot(*d2))


def area_identity_check(x: Point, x2: Point, l: Line, l2: Line,
                        quad_tol: float | None = None) -> tuple[float, float]:
    """Area of the constructed parallelogram and the distance-product formula."""
    q = pgram_from_opposite(x, x2, l, l2, quad_tol)
    rhs = abs(disprod(x, l, l2) - disprod(x2, l, l2)) / _sin_between(l, l2)
    return q.area, rhs


def triangle_side_classification(x: Point, x2: Point, l: Line, l2: Line,
                                 quad_tol: float | None = None,
                                 rel_tol: float = 1e-12) -> Side:
    """Which of ``x``, ``x2`` lies in the triangle cut off by ``Y Y'``."""
    _check_quadrant(x, x2, l, l2, quad_tol)
    d1, d2 = disprod(x, l, l2), disprod(x2, l, l2)
    if abs(d1 - d2) <= rel_tol * max(d1, d2, 1e-300):
        return Side.DEGENERATE
    return Side.X_INSIDE if d1 < d2 else Side.X2_INSIDE
