"""Billiard tables: polygonal boundaries equipped with transverse line fields.

Each edge carries a field rule assigning a transverse line to every boundary
point M on it: either all lines through a fixed origin O off the edge
(a central field) or all lines through a fixed apex point (an apex field).
The table families built here are the ones with known reflectivity
behaviour: triangles whose edge fields point at the opposite vertex,
polygons with a common central origin, and a pair of parallel mirrors whose
fields are perpendicular to them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .errors import (
    CollinearConsecutiveVertices,
    CollinearVertices,
    DegenerateTable,
    ExactnessUnavailable,
    FieldSingular,
    OriginOnEdge,
    PointOffEdge,
    WrongFamily,
)
from .projective import ProjLine, ProjPoint, incident, join
from .scalars import SQRT3, Sqrt3, is_exact_scalar, scalar_sign


@dataclass(frozen=True)
class CentralField:
    """Transverse line at M is the line through M and a fixed origin."""

    origin: ProjPoint


@dataclass(frozen=True)
class ApexField:
    """Transverse line at M is the line through M and a fixed apex."""

    apex: ProjPoint


FieldRule = Union[CentralField, ApexField]


def _field_pivot(field: FieldRule) -> ProjPoint:
    return field.origin if isinstance(field, CentralField) else field.apex


@dataclass(frozen=True)
class Edge:
    """One boundary component: supporting line, the two points delimiting the
    chord-parameter chart on it, and the transverse field rule."""

    support: ProjLine
    endpoints: Tuple[ProjPoint, ProjPoint]
    field: FieldRule

    def __post_init__(self):
        e0, e1 = self.endpoints
        if not (incident(e0, self.support) and incident(e1, self.support)):
            raise DegenerateTable("edge endpoints must lie on the supporting line")
        if e0.same(e1):
            raise DegenerateTable("edge endpoints must be distinct")
        if incident(_field_pivot(self.field), self.support):
            raise DegenerateTable(
                "field pivot on the supporting line leaves no transverse direction"
            )


class Family(Enum):
    RIGHT_SPHERICAL = "right_spherical"
    CENTRALLY_PROJECTIVE = "centrally_projective"
    CONVERGING_MIRRORS = "converging_mirrors"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Table:
    """A cyclic sequence of edges; orbit point k lives on edge k mod n."""

    family: Family
    vertices: Tuple[ProjPoint, ...]
    edges: Tuple[Edge, ...]

    @property
    def n(self) -> int:
        return len(self.edges)

    def edge(self, k: int) -> Edge:
        return self.edges[k % self.n]

    def central_origin(self) -> ProjPoint:
        """Common origin when every edge carries the same central field."""
        origin = None
        for e in self.edges:
            if not isinstance(e.field, CentralField):
                raise WrongFamily("table has a non-central edge field")
            if origin is None:
                origin = e.field.origin
            elif not origin.same(e.field.origin):
                raise WrongFamily("edges do not share one central origin")
        if origin is None:
            raise WrongFamily("table has no edges")
        return origin


def transverse_line_at(table: Table, edge_index: int, point: ProjPoint) -> ProjLine:
    """The field's transverse line at a boundary point of one edge.

    Raises PointOffEdge when the point misses the supporting line and
    FieldSingular at the single point of the edge where the field pivot
    itself sits (no transverse direction is defined there).  On a mirror
    pair the basepoint under the opposite apex is excluded the same way:
    the field is only declared on the punctured line.
    """
    edge = table.edge(edge_index)
    if not incident(point, edge.support):
        raise PointOffEdge(f"point {point!r} is not on edge {edge_index % table.n}")
    pivot = _field_pivot(edge.field)
    if point.same(pivot):
        raise FieldSingular("transverse field undefined at its own pivot")
    if table.family is Family.CONVERGING_MIRRORS and point.same(edge.endpoints[0]):
        raise FieldSingular("mirror field undeclared at its basepoint")
    return join(point, pivot)


def _pt(x, y) -> ProjPoint:
    return ProjPoint.affine(x, y)


def right_spherical(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint) -> Table:
    """Triangle whose edge fields aim at the opposite vertex.

    Edge i joins P_i to P_{i+1} and carries the apex field of P_{i+2}
    (indices mod 3).
    """
    verts = (p0, p1, p2)
    if p0.same(p1) or p1.same(p2) or p2.same(p0):
        raise DegenerateTable("triangle vertices must be pairwise distinct")
    supports = []
    for i in range(3):
        line = join(verts[i], verts[(i + 1) % 3])
        if incident(verts[(i + 2) % 3], line):
            raise CollinearVertices("triangle vertices lie on one line")
        supports.append(line)
    edges = tuple(
        Edge(
            support=supports[i],
            endpoints=(verts[i], verts[(i + 1) % 3]),
            field=ApexField(verts[(i + 2) % 3]),
        )
        for i in range(3)
    )
    return Table(Family.RIGHT_SPHERICAL, verts, edges)


def centrally_projective(
    origin: ProjPoint, vertices: Sequence[ProjPoint], family: Family = Family.CENTRALLY_PROJECTIVE
) -> Table:
    """Polygon whose every edge carries the central field through one origin."""
    verts = tuple(vertices)
    n = len(verts)
    if n < 3:
        raise DegenerateTable("a centrally projective table needs at least 3 vertices")
    for i in range(n):
        if verts[i].same(verts[(i + 1) % n]):
            raise DegenerateTable("consecutive vertices must be distinct")
    supports = []
    for i in range(n):
        line = join(verts[i], verts[(i + 1) % n])
        if incident(verts[(i + 2) % n], line):
            raise CollinearConsecutiveVertices(
                "three consecutive vertices lie on one line"
            )
        if incident(origin, line):
            raise OriginOnEdge(f"origin lies on the supporting line of edge {i}")
        supports.append(line)
    field = CentralField(origin)
    edges = tuple(
        Edge(support=supports[i], endpoints=(verts[i], verts[(i + 1) % n]), field=field)
        for i in range(n)
    )
    return Table(family, verts, edges)


def converging_mirrors(gap, offset) -> Table:
    """Two horizontal mirrors y = 0 and y = gap with perpendicular fields.

    The field on each mirror aims at the basepoint (offset, ...) of the other
    one, so every transverse line at (x, 0) or (x, gap) is vertical-free:
    it passes through the opposite basepoint.  Endpoints of each edge are
    parameterization anchors one unit apart, not polygon vertices; the two
    supporting lines meet only at infinity.
    """
    if isinstance(gap, float):
        positive = gap > 0
    elif is_exact_scalar(gap):
        positive = scalar_sign(gap) > 0
    else:
        raise TypeError("gap must be a scalar")
    if not positive:
        raise DegenerateTable("mirror gap must be positive")
    use_float = isinstance(gap, float) or isinstance(offset, float)
    one = 1.0 if use_float else 1
    zero = 0.0 if use_float else 0
    base0 = _pt(offset, zero)
    base1 = _pt(offset, gap)
    anchor0 = _pt(offset + one, zero)
    anchor1 = _pt(offset + one, gap)
    edge0 = Edge(
        support=join(base0, anchor0), endpoints=(base0, anchor0), field=ApexField(base1)
    )
    edge1 = Edge(
        support=join(base1, anchor1), endpoints=(base1, anchor1), field=ApexField(base0)
    )
    return Table(Family.CONVERGING_MIRRORS, (base0, base1), (edge0, edge1))


def custom_table(
    vertices: Sequence[ProjPoint], fields: Sequence[FieldRule]
) -> Table:
    """Polygon with an explicit per-edge field rule (edge i joins P_i, P_{i+1})."""
    verts = tuple(vertices)
    n = len(verts)
    if n < 3:
        raise DegenerateTable("a custom table needs at least 3 vertices")
    if len(fields) != n:
        raise DegenerateTable("need exactly one field rule per edge")
    edges = []
    for i in range(n):
        if verts[i].same(verts[(i + 1) % n]):
            raise DegenerateTable("consecutive vertices must be distinct")
        support = join(verts[i], verts[(i + 1) % n])
        edges.append(
            Edge(support=support, endpoints=(verts[i], verts[(i + 1) % n]), field=fields[i])
        )
    return Table(Family.CUSTOM, verts, tuple(edges))


# vertices of the regular n-gon, clockwise from (-r, 0); exact coordinates
# exist over Q(sqrt 3) only for n = 3, 4, 6
_EXACT_REGULAR = {
    3: ((-1, 0), (Fraction(1, 2), Sqrt3(0, Fraction(1, 2))), (Fraction(1, 2), Sqrt3(0, Fraction(-1, 2)))),
    4: ((-1, 0), (0, 1), (1, 0), (0, -1)),
    6: (
        (-1, 0),
        (Fraction(-1, 2), Sqrt3(0, Fraction(1, 2))),
        (Fraction(1, 2), Sqrt3(0, Fraction(1, 2))),
        (1, 0),
        (Fraction(1, 2), Sqrt3(0, Fraction(-1, 2))),
        (Fraction(-1, 2), Sqrt3(0, Fraction(-1, 2))),
    ),
}


def regular_polygon_vertices(n: int, radius) -> Tuple[ProjPoint, ...]:
    """Vertices of the regular n-gon of given circumradius, centred at the
    origin, listed clockwise starting from (-radius, 0).

    An exact radius yields exact vertices for n in {3, 4, 6}; other n only
    support float radii.
    """
    if n < 3:
        raise DegenerateTable("a polygon needs at least 3 vertices")
    if is_exact_scalar(radius):
        if n not in _EXACT_REGULAR:
            raise ExactnessUnavailable(
                f"regular {n}-gon has no exact coordinates here; pass a float radius"
            )
        return tuple(
            _pt(radius * x, radius * y) for x, y in _EXACT_REGULAR[n]
        )
    r = float(radius)
    verts = []
    for k in range(n):
        theta = math.pi - 2.0 * math.pi * k / n
        verts.append(_pt(r * math.cos(theta), r * math.sin(theta)))
    return tuple(verts)
