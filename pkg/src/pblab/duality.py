"""Polar duality about a centre point and the induced outer orbit dynamics.

Polarity is taken in the unit circle centred at a finite point O: a point P
maps to the line of points X with (P - O) . (X - O) = 1, and a line maps
back to its pole.  The map is an involution and transports incidence both
ways.  Dualising the edges of a table whose fields all point through O
yields a dual polygon Q_0 .. Q_{n-1}, and dualising the chords of a billiard
orbit yields a sequence of points that advances by point reflection in the
successive Q_k: the reflection law's harmonic quadruple contains a line
through O, whose dual is at infinity, turning the quadruple into a midpoint
relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import IndexOutOfRange, InfinitePoint, StartsAtVertex, WrongFamily
from .dynamics import Orbit
from .projective import (
    ProjLine,
    ProjPoint,
    triple_residual,
    residual_is_zero,
)
from .scalars import Scalar
from .tables import Table


def _require_finite(p: ProjPoint, what: str) -> Tuple:
    if p.is_infinite():
        raise InfinitePoint(f"{what} must be a finite point")
    return p.to_affine()


def polar_point(p: ProjPoint, center: ProjPoint) -> ProjLine:
    """Polar line of a point in the unit circle about ``center``.

    The centre itself maps to the line at infinity.  In centred coordinates
    (X, Y, Z) the conic has matrix diag(1, 1, -1), so (X, Y, Z) maps to
    the line with coefficients (X, Y, -Z).
    """
    cx, cy = _require_finite(center, "polarity centre")
    x, y, z = p.coords
    a = x - cx * z
    b = y - cy * z
    c = -z
    return ProjLine(a, b, c - a * cx - b * cy)


def polar_line(l: ProjLine, center: ProjPoint) -> ProjPoint:
    """Pole of a line in the unit circle about ``center``; inverse of
    polar_point.  The line at infinity maps to the centre; a line through
    the centre maps to a point at infinity."""
    cx, cy = _require_finite(center, "polarity centre")
    a, b, c = l.coords
    cz = c + a * cx + b * cy
    return ProjPoint(a - cx * cz, b - cy * cz, -cz)


@dataclass(frozen=True)
class DualSystem:
    """Dual polygon of a central table: Q_k is the pole of edge k's support."""

    center: ProjPoint
    dual_vertices: Tuple[ProjPoint, ...]

    @property
    def n(self) -> int:
        return len(self.dual_vertices)


def dual_polygon(table: Table) -> DualSystem:
    """Dualise a table whose edges all share one central field origin.

    The origin misses every supporting line, so every dual vertex is a
    finite point.
    """
    center = table.central_origin()  # raises WrongFamily otherwise
    if center.is_infinite():
        raise InfinitePoint("polarity centre must be a finite point")
    duals = tuple(polar_line(e.support, center) for e in table.edges)
    return DualSystem(center=center, dual_vertices=duals)


def outer_step(q: ProjPoint, n_point: ProjPoint) -> ProjPoint:
    """Point reflection of n_point through q: the next outer orbit point."""
    qx, qy = _require_finite(q, "outer orbit vertex")
    nx, ny = _require_finite(n_point, "outer orbit point")
    return ProjPoint.affine(2 * qx - nx, 2 * qy - ny)


@dataclass
class OuterOrbit:
    """Outer (point-reflection) orbit N_s, N_{s+1}, ... around a dual polygon.

    ``start_index`` is the vertex offset s: the step from points[i] to
    points[i+1] reflects through Q_{(s + i) mod n}.  A fresh orbit starts at
    s = 0; an orbit dualised from a billiard orbit starts at s = 1 because
    its first point is the dual of the chord M_0 M_1, which is reflected
    through Q_1.  ``infinite_at`` flags indices whose point is at infinity
    (a dualised chord passing through the centre); steps at those indices
    are undefined and the sequence is split there.
    """

    dual: DualSystem
    points: List[Optional[ProjPoint]]
    start_index: int = 0
    infinite_at: List[int] = field(default_factory=list)

    def is_periodic(self, m: int) -> bool:
        """Whether N_{s+m} returns to N_s as a point."""
        res = self.period_residual(m)
        return res is not None and residual_is_zero(res)

    def period_residual(self, m: int) -> Optional[Scalar]:
        if m < 1 or m > len(self.points) - 1:
            raise IndexOutOfRange(f"period {m} outside materialised range")
        first, last = self.points[0], self.points[m]
        if first is None or last is None:
            return None
        return triple_residual(last, first)


def outer_orbit(dual: DualSystem, start: ProjPoint, steps: int) -> OuterOrbit:
    """Iterate the outer point-reflection map ``steps`` times from a finite
    starting point that is not a dual polygon vertex."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    _require_finite(start, "outer orbit start")
    for q in dual.dual_vertices:
        if start.same(q):
            raise StartsAtVertex("outer orbit must not start at a dual vertex")
    points: List[Optional[ProjPoint]] = [start]
    for i in range(steps):
        q = dual.dual_vertices[i % dual.n]
        points.append(outer_step(q, points[i]))
    return OuterOrbit(dual=dual, points=points, start_index=0)


def dual_orbit(table: Table, orb: Orbit) -> OuterOrbit:
    """Dualise a billiard orbit's chords into an outer orbit.

    Point k of the result is the pole of the chord M_k M_{k+1}; the
    sequence starts at vertex offset 1.  Chords through the centre dualise
    to points at infinity and are flagged rather than rejected.
    """
    dual = dual_polygon(table)
    points: List[Optional[ProjPoint]] = []
    infinite_at: List[int] = []
    for idx, chord in enumerate(orb.chords):
        pole = polar_line(chord, dual.center)
        if pole.is_infinite():
            infinite_at.append(idx)
            points.append(None)
        else:
            points.append(pole)
    return OuterOrbit(dual=dual, points=points, start_index=1, infinite_at=infinite_at)
