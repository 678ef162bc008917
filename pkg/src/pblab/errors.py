"""Exception taxonomy shared across the geometry, table, dynamics and scene layers."""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for every geometric failure raised by this package."""


# -- projective kernel ------------------------------------------------------

class DegenerateJoin(GeometryError):
    """Both points coincide, so they do not span a line."""


class DegenerateMeet(GeometryError):
    """Both lines coincide, so they do not intersect in a single point."""


class NotCollinear(GeometryError):
    """An operation on collinear points received a point off the common line."""


class NotConcurrent(GeometryError):
    """An operation on a pencil received a line missing the common point."""


class IllConditioned(GeometryError):
    """Float-mode configuration too degenerate to evaluate reliably."""


class BadTransversal(GeometryError):
    """Supplied transversal passes through the pencil vertex."""


class DegeneratePencil(GeometryError):
    """The two reference lines of a pencil coincide."""


class InfinitePoint(GeometryError):
    """A finite (affine) point was required."""


# -- tables -----------------------------------------------------------------

class TableError(GeometryError):
    """Base class for invalid table constructions."""


class CollinearVertices(TableError):
    """Triangle vertices lie on one line."""


class CollinearConsecutiveVertices(TableError):
    """Three consecutive polygon vertices lie on one line."""


class OriginOnEdge(TableError):
    """The projection origin lies on an edge's supporting line."""


class DegenerateTable(TableError):
    """Table data fails a basic size or separation requirement."""


class PointOffEdge(TableError):
    """A boundary point does not lie on the requested edge."""


class FieldSingular(TableError):
    """The transverse field is undefined at this point (it is the field's pivot)."""


class ExactnessUnavailable(TableError):
    """Exact coordinates were requested for a shape that has none in this scalar field."""


# -- dynamics ---------------------------------------------------------------

class DynamicsError(GeometryError):
    """Base class for orbit iteration failures."""


class ChordDegenerate(DynamicsError):
    """The two starting points of a chord coincide."""


class OrbitCollapse(DynamicsError):
    """The reflected line fell onto the next edge, so the next point is undefined."""


class NotMultipleOfN(DynamicsError):
    """A tested period must be a positive multiple of the edge count."""


class IndexOutOfRange(DynamicsError):
    """An orbit index outside the materialised range was requested."""


# -- duality ----------------------------------------------------------------

class DualityError(GeometryError):
    """Base class for polarity and outer-orbit failures."""


class WrongFamily(DualityError):
    """The operation needs a table whose every edge carries the same central field."""


class StartsAtVertex(DualityError):
    """An outer orbit may not start at a vertex of the dual polygon."""


# -- scenes -----------------------------------------------------------------

class SceneError(Exception):
    """Base class for scene document problems."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class SchemaError(SceneError):
    """Structurally malformed scene document (missing/ill-typed fields)."""


class ValidationError(SceneError):
    """Well-formed scene whose data violates a geometric requirement."""
