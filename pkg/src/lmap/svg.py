"""Static SVG figures of a polygon and its parallelograms."""

from __future__ import annotations

from .geom import Point, Polygon

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".")


def _points(pts) -> str:
    # y is flipped so the figure reads with y pointing up
    return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pts)


def render(P: Polygon, quads: list[tuple[Point, ...]], map_index: int | None = None,
           extra_points: tuple[Point, ...] = (), width: int = 600) -> str:
    """Polygon filled light, each quad stroked in rank order, the MAP heaviest.

    ``quads`` should already be sorted by decreasing area so colours follow
    area rank.
    """
    xs = [x for x, _ in P.vertices]
    ys = [-y for _, y in P.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = x1 - x0, y1 - y0
    m = 0.05 * max(w, h)
    vb = (x0 - m, y0 - m, w + 2 * m, h + 2 * m)
    sw = max(w, h) / 300
    height = round(width * vb[3] / vb[2])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="{" ".join(_fmt(v) for v in vb)}">',
        f'  <polygon points="{_points(P.vertices)}" fill="#eef2f7" stroke="#333333" '
        f'stroke-width="{_fmt(sw)}"/>',
    ]
    for rank, q in enumerate(quads):
        heavy = rank == map_index
        out.append(f'  <polygon points="{_points(q)}" fill="none" '
                   f'stroke="{PALETTE[rank % len(PALETTE)]}" '
                   f'stroke-width="{_fmt(sw * (3 if heavy else 1.2))}"/>')
    for x, y in extra_points:
        out.append(f'  <circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(2 * sw)}" fill="#000000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
