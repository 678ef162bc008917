"""Shared run workflows behind the CLI subcommands and the HTTP endpoints.

Each function takes a parsed Scene plus optional overrides, performs one
unit of work and returns a plain JSON-compatible dict, so the two front
ends cannot drift apart.  Steps/period/grid resolution order: explicit
override, then the scene's run block, then a documented default (steps
2n+1, period n, grid 20).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .duality import dual_orbit, dual_polygon
from .dynamics import check_periodic, orbit, reflectivity_scan
from .errors import (
    DualityError,
    DynamicsError,
    NotMultipleOfN,
    TableError,
    ValidationError,
)
from .projective import ProjPoint, residual_is_zero
from .scene import Scene, scalar_to_json, triple_to_json
from .tables import Family, Table, centrally_projective, custom_table, right_spherical


def _require_chord(scene: Scene):
    if scene.chord is None:
        raise ValidationError("chord", "this run needs a scene with a chord")
    return scene.chord


def _resolve(override: Optional[int], from_scene: Optional[int], default: int) -> int:
    if override is not None:
        return override
    if from_scene is not None:
        return from_scene
    return default


def _result_header(scene: Scene, command: str) -> dict:
    return {
        "schema": 1,
        "numeric_mode": scene.numeric_mode,
        "command": command,
    }


def _affine_to_json(point: ProjPoint, mode: str):
    x, y = point.to_affine()
    return [scalar_to_json(x, mode), scalar_to_json(y, mode)]


def run_orbit(scene: Scene, steps: Optional[int] = None) -> dict:
    chord = _require_chord(scene)
    n = scene.table.n
    steps = _resolve(steps, scene.run.steps, 2 * n + 1)
    orb = orbit(scene.table, chord, steps)
    mode = scene.numeric_mode
    out = _result_header(scene, "orbit")
    out.update(
        {
            "steps": steps,
            "points": [triple_to_json(p, mode) for p in orb.points],
            "edge_indices": [k % n for k in range(len(orb.points))],
            "chords": [triple_to_json(c, mode) for c in orb.chords],
            "on_segment": orb.on_segment,
            "collapsed_at": orb.collapsed_at,
        }
    )
    return out


def run_verify(scene: Scene, period: Optional[int] = None) -> dict:
    chord = _require_chord(scene)
    m = _resolve(period, scene.run.period, scene.table.n)
    report = check_periodic(scene.table, chord, m)
    mode = scene.numeric_mode
    out = _result_header(scene, "verify")
    out.update(
        {
            "period": m,
            "is_periodic": report.is_periodic,
            "line_residual": scalar_to_json(report.line_residual, mode),
            "point_residuals": [
                scalar_to_json(r, mode) for r in report.point_residuals
            ],
            "collapsed": report.collapsed,
        }
    )
    return out


def run_scan(
    scene: Scene, period: Optional[int] = None, grid: Optional[int] = None
) -> dict:
    m = _resolve(period, scene.run.period, scene.table.n)
    g = _resolve(grid, scene.run.grid, 20)
    report = reflectivity_scan(scene.table, m, g)
    mode = scene.numeric_mode
    out = _result_header(scene, "scan")
    out.update(
        {
            "period": m,
            "grid": g,
            "fraction_periodic": (
                str(report.fraction_periodic)
                if report.fraction_periodic is not None
                else None
            ),
            "max_residual": scalar_to_json(report.max_residual, mode),
            "max_point_residual": scalar_to_json(report.max_point_residual, mode),
            "evaluated": report.evaluated,
            "skipped": report.skipped,
            "failures": [
                {
                    "i": f.i,
                    "j": f.j,
                    "t0": scalar_to_json(f.t0, mode),
                    "t1": scalar_to_json(f.t1, mode),
                    "reason": f.reason,
                    "line_residual": scalar_to_json(f.line_residual, mode),
                }
                for f in report.failures
            ],
        }
    )
    return out


def run_dualize(scene: Scene, steps: Optional[int] = None) -> dict:
    chord = _require_chord(scene)
    n = scene.table.n
    steps = _resolve(steps, scene.run.steps, 2 * n + 1)
    try:
        dual = dual_polygon(scene.table)
    except (TableError, DualityError) as exc:
        raise ValidationError("table", str(exc)) from exc
    orb = orbit(scene.table, chord, steps)
    outer = dual_orbit(scene.table, orb)
    mode = scene.numeric_mode
    out = _result_header(scene, "dualize")
    out.update(
        {
            "steps": steps,
            "center": _affine_to_json(dual.center, mode),
            "dual_vertices": [_affine_to_json(q, mode) for q in dual.dual_vertices],
            "outer": {
                "start_index": outer.start_index,
                "points": [
                    None if p is None else _affine_to_json(p, mode)
                    for p in outer.points
                ],
                "infinite_at": outer.infinite_at,
            },
        }
    )
    if scene.run.period is not None and scene.run.period <= len(outer.points) - 1:
        res = outer.period_residual(scene.run.period)
        out["outer"]["is_periodic"] = None if res is None else residual_is_zero(res)
    return out


def _rebuild_with_vertices(scene: Scene, verts) -> Table:
    family = scene.table.family
    if family == Family.RIGHT_SPHERICAL:
        return right_spherical(*verts)
    if family == Family.CENTRALLY_PROJECTIVE:
        return centrally_projective(scene.table.central_origin(), verts)
    if family == Family.CUSTOM:
        return custom_table(verts, [e.field for e in scene.table.edges])
    raise ValidationError("table", "this family has no movable vertices")


def run_perturb(
    scene: Scene,
    vertex: int,
    radius,
    samples: int,
    period: Optional[int] = None,
    seed: int = 0,
) -> dict:
    """Fraction of random vertex displacements that keep the chord periodic.

    Displacements are drawn from the square [-radius, radius]^2 with a
    seeded generator; exact scenes use rational displacements so verdicts
    stay exact.
    """
    chord = _require_chord(scene)
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not 0 <= vertex < len(scene.table.vertices):
        raise ValidationError("table", f"no vertex {vertex} to perturb")
    m = _resolve(period, scene.run.period, scene.table.n)
    if m % scene.table.n != 0:
        raise NotMultipleOfN(f"period {m} is not a multiple of n={scene.table.n}")
    rng = random.Random(seed)
    base = list(scene.table.vertices)
    exact = scene.is_exact
    periodic = 0
    invalid = 0
    denom = 10_000
    for _ in range(samples):
        if exact:
            dx = Fraction(rng.randint(-denom, denom), denom) * radius
            dy = Fraction(rng.randint(-denom, denom), denom) * radius
        else:
            dx = rng.uniform(-radius, radius)
            dy = rng.uniform(-radius, radius)
        verts = list(base)
        x, y = verts[vertex].to_affine()
        verts[vertex] = ProjPoint.affine(x + dx, y + dy)
        try:
            table = _rebuild_with_vertices(scene, verts)
            report = check_periodic(table, chord, m)
        except (TableError, DynamicsError, ValueError):
            invalid += 1
            continue
        if report.is_periodic:
            periodic += 1
    valid = samples - invalid
    out = _result_header(scene, "perturb")
    out.update(
        {
            "vertex": vertex,
            "radius": scalar_to_json(radius, scene.numeric_mode),
            "samples": samples,
            "invalid": invalid,
            "period": m,
            "fraction_periodic": str(Fraction(periodic, valid)) if valid else None,
        }
    )
    return out
