"""Command-line interface.

Usage: ``lmap <command> <source> [options]`` where ``source`` is a polygon JSON
file, ``regular:K`` or ``random:N``.  Exit codes: 0 ok, 1 selftest failure,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .analysis import gen_polygon, heilbronn4, oracle_map
from .errors import LmapError
from .geom import DEFAULT_TOL, Polygon, Tolerances, polygon_from_json
from .invariants import run_families
from .search import Candidate, SearchOptions, canonical_corners, find_all_lmaps, find_map
from .svg import render

COMMANDS = ("lmaps", "map", "heilbronn4", "oracle", "gen", "selftest")


@dataclass
class RunConfig:
    command: str
    source: str
    seed: int | None = None
    perturb: float = 0.0
    probe: bool = True
    samples: int = 120
    fmt: str = "json"
    keep_rejected: bool = False
    tol_scale: float = 1.0
    output: str | None = None
    inject_fault: bool = False

    @property
    def tol(self) -> Tolerances:
        return DEFAULT_TOL if self.tol_scale == 1.0 else DEFAULT_TOL.scaled(self.tol_scale)


class InputError(Exception):
    pass


def load_polygon(cfg: RunConfig) -> Polygon:
    src = cfg.source
    if src.startswith(("regular:", "random:")):
        if (src.startswith("random:") or cfg.perturb) and cfg.seed is None:
            raise InputError("MissingSeed: --seed is required for random generation and --perturb")
        return gen_polygon(src, seed=cfg.seed, perturb=cfg.perturb, tol=cfg.tol)
    if cfg.perturb and cfg.seed is None:
        raise InputError("MissingSeed: --seed is required with --perturb")
    try:
        with open(src, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"UnreadableInput: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"InvalidJson: {e}") from e
    if isinstance(data, dict) and "polygon" in data:
        data = data["polygon"]
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError("InvalidJson: expected an object with a 'vertices' list")
    return polygon_from_json(data, tol=cfg.tol, perturb=cfg.perturb or None, seed=cfg.seed)


def _pt(p) -> list[float]:
    return [float(p[0]), float(p[1])]


def candidate_json(c: Candidate) -> dict:
    return {"corners": [_pt(p) for p in canonical_corners(c.pgram)],
            "area": c.area, "source": c.source, "flags": c.flags()}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_lmaps(cfg: RunConfig) -> int:
    P = load_polygon(cfg)
    rep = find_all_lmaps(P, SearchOptions(probe=cfg.probe, keep_rejected=cfg.keep_rejected))
    if cfg.fmt == "svg":
        _write(cfg, render(P, [canonical_corners(c.pgram) for c in rep.lmaps], rep.map_index))
        return 0
    if cfg.fmt == "text":
        lines = [f"{len(rep.lmaps)} LMAPs in a {P.n}-gon"]
        for k, c in enumerate(rep.lmaps):
            tag = " MAP" if k == rep.map_index else ""
            corners = " ".join(f"({x:.9g},{y:.9g})" for x, y in canonical_corners(c.pgram))
            lines.append(f"{k}: area {c.area:.12g} {c.source} {corners}{tag}")
        _write(cfg, "\n".join(lines) + "\n")
        return 0
    out = {"polygon": P.to_dict(),
           "lmaps": [candidate_json(c) for c in rep.lmaps],
           "map_index": rep.map_index}
    if cfg.keep_rejected:
        kept = [c for c in rep.candidates if c not in rep.lmaps]
        out["rejected"] = [candidate_json(c) for c in kept]
    _write(cfg, dumps(out))
    return 0


def cmd_map(cfg: RunConfig) -> int:
    P = load_polygon(cfg)
    c = find_map(P, SearchOptions(probe=cfg.probe))
    if cfg.fmt == "svg":
        _write(cfg, render(P, [canonical_corners(c.pgram)], 0))
    elif cfg.fmt == "text":
        corners = " ".join(f"({x:.9g},{y:.9g})" for x, y in canonical_corners(c.pgram))
        _write(cfg, f"MAP area {c.area:.12g} {corners}\n")
    else:
        _write(cfg, dumps({"polygon": P.to_dict(), "map": candidate_json(c)}))
    return 0


def cmd_heilbronn4(cfg: RunConfig) -> int:
    P = load_polygon(cfg)
    h = heilbronn4(P)
    if cfg.fmt == "svg":
        _write(cfg, render(P, [], None, h.placement))
    elif cfg.fmt == "text":
        pts = " ".join(f"({x:.9g},{y:.9g})" for x, y in h.placement)
        _write(cfg, f"value {h.value:.12g} (t={h.t:.12g}, p={h.p:.12g}) placement {pts}\n")
    else:
        _write(cfg, dumps({"value": h.value, "t": h.t, "p": h.p,
                           "placement": [_pt(p) for p in h.placement]}))
    return 0


def cmd_oracle(cfg: RunConfig) -> int:
    P = load_polygon(cfg)
    o = oracle_map(P, cfg.samples)
    corners = list(o.best.corners) if o.best else []
    if cfg.fmt == "svg":
        _write(cfg, render(P, [tuple(corners)] if corners else [], 0))
    elif cfg.fmt == "text":
        pts = " ".join(f"({x:.9g},{y:.9g})" for x, y in corners)
        _write(cfg, f"best area {o.area:.12g}\ncorners {pts}\n"
                    f"slack_estimate {o.slack_estimate:.6g}\n")
    else:
        _write(cfg, dumps({"best_area": o.area, "corners": [_pt(p) for p in corners],
                           "samples_per_boundary": o.samples_per_boundary,
                           "slack_estimate": o.slack_estimate}))
    return 0


def cmd_gen(cfg: RunConfig) -> int:
    P = load_polygon(cfg)
    if cfg.fmt == "svg":
        _write(cfg, render(P, []))
    else:
        _write(cfg, dumps(P.to_dict()))
    return 0


def cmd_selftest(cfg: RunConfig) -> int:
    P = load_polygon(cfg)
    results = run_families(P, samples=cfg.samples, probe=cfg.probe, corrupt=cfg.inject_fault)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    if failed:
        print(f"selftest failed: {failed[0].name}", file=sys.stderr)
        return 1
    return 0


HANDLERS = {"lmaps": cmd_lmaps, "map": cmd_map, "heilbronn4": cmd_heilbronn4,
            "oracle": cmd_oracle, "gen": cmd_gen, "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lmap", description="Locally maximal area parallelograms "
                                "inscribed in a convex polygon.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("source", nargs="?", default="regular:5",
                   help="polygon JSON file, regular:K or random:N (default regular:5)")
    p.add_argument("--seed", type=int, help="seed for random:N and --perturb")
    p.add_argument("--perturb", type=float, default=0.0, metavar="EPS",
                   help="rotate each vertex about the centroid by up to EPS radians")
    p.add_argument("--probe", action=argparse.BooleanOptionalAction, default=True,
                   help="run the sampled local-maximality probe (default on)")
    p.add_argument("--samples", type=int, default=120, help="oracle samples per boundary")
    p.add_argument("--format", dest="fmt", choices=("json", "svg", "text"), default="json")
    p.add_argument("--keep-rejected", action="store_true",
                   help="also report candidates that failed validation")
    p.add_argument("--tol-scale", type=float, default=1.0, help="multiply every tolerance")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        return HANDLERS[cfg.command](cfg)
    except InputError as e:
        print(str(e), file=sys.stderr)
        return 2
    except LmapError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"InvalidInput: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
