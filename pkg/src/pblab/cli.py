"""Command line interface.

Every subcommand reads a scene document, runs one workflow and prints its
JSON result to stdout.  Failures print a machine-readable JSON diagnostic
to stderr and exit with status 2; `verify` exits 0 when the orbit is
periodic and 1 when it is not.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .dynamics import orbit
from .errors import GeometryError, SceneError, SchemaError
from .render import render_svg
from .runs import run_dualize, run_orbit, run_perturb, run_scan, run_verify
from .scene import Scene, parse_scalar, parse_scene
from .service import serve


def _load_scene(path: str) -> Scene:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError("$", f"cannot read scene file: {exc}") from exc
    return parse_scene(text)


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fail(exc: Exception) -> int:
    body = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, SceneError):
        body["error"]["path"] = exc.path
        body["error"]["reason"] = exc.reason
    json.dump(body, sys.stderr)
    sys.stderr.write("\n")
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pblab",
        description="Projective billiard laboratory: orbits, reflectivity checks, duality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="iterate an orbit and print its points")
    p.add_argument("scene")
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("verify", help="check m-periodicity (exit 0 iff periodic)")
    p.add_argument("scene")
    p.add_argument("--period", type=int, default=None)

    p = sub.add_parser("scan", help="periodicity over a grid of starting chords")
    p.add_argument("scene")
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("dualize", help="dual polygon and outer orbit of the scene")
    p.add_argument("scene")
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("perturb", help="fraction of perturbed tables still periodic")
    p.add_argument("scene")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--radius", required=True, help="displacement bound (scalar in the scene's mode)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--period", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("render", help="deterministic SVG of the table and orbit")
    p.add_argument("scene")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("serve", help="run the local JSON service")
    p.add_argument("--port", type=int, default=None)

    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            serve(args.port)
            return 0
        scene = _load_scene(args.scene)
        if args.command == "orbit":
            _emit(run_orbit(scene, steps=args.steps))
            return 0
        if args.command == "verify":
            result = run_verify(scene, period=args.period)
            _emit(result)
            return 0 if result["is_periodic"] else 1
        if args.command == "scan":
            _emit(run_scan(scene, period=args.period, grid=args.grid))
            return 0
        if args.command == "dualize":
            _emit(run_dualize(scene, steps=args.steps))
            return 0
        if args.command == "perturb":
            if scene.is_exact:
                radius = parse_scalar(args.radius, "exact", "radius")
            else:
                radius = float(args.radius)
            _emit(
                run_perturb(
                    scene,
                    vertex=args.vertex,
                    radius=radius,
                    samples=args.samples,
                    period=args.period,
                    seed=args.seed,
                )
            )
            return 0
        if args.command == "render":
            steps = args.steps if args.steps is not None else scene.run.steps
            if steps is None:
                steps = 2 * scene.table.n + 1
            orb = None
            if scene.chord is not None:
                orb = orbit(scene.table, scene.chord, steps)
            svg = render_svg(scene.table, orb)
            if args.out:
                Path(args.out).write_text(svg, encoding="utf-8")
            else:
                sys.stdout.write(svg)
            return 0
        raise SystemExit(f"unknown command {args.command}")  # pragma: no cover
    except (SceneError, GeometryError, ValueError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
