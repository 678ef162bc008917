"""pblab: a laboratory for polygonal projective billiards.

Projective billiards replace the metric reflection law by a purely
incidence-theoretic one: a table edge carries a field of transverse lines,
and an incoming chord reflects to the unique outgoing line forming a
harmonic quadruple with the transverse line and the edge.  This package
provides the exact homogeneous-coordinate kernel, the classical table
families, orbit iteration with periodicity verification, polar duality to
outer (point-reflection) orbits, and a scene format served over a CLI and
a local HTTP API.
"""

from .dynamics import (
    ChordParam,
    Orbit,
    PeriodReport,
    ScanReport,
    check_periodic,
    diagonal_concurrency_check,
    orbit,
    orbit_from_points,
    reflect,
    reflectivity_scan,
    step,
)
from .duality import (
    DualSystem,
    OuterOrbit,
    dual_orbit,
    dual_polygon,
    outer_orbit,
    outer_step,
    polar_line,
    polar_point,
)
from .projective import (
    INF,
    LINE_AT_INFINITY,
    ProjLine,
    ProjPoint,
    cross_ratio_lines,
    cross_ratio_points,
    harmonic_conjugate_line,
    harmonic_conjugate_point,
    incident,
    join,
    meet,
    triple_residual,
)
from .scalars import EPS, SQRT3, Sqrt3
from .scene import Scene, parse_scene, scene_to_dict, scene_to_json
from .tables import (
    ApexField,
    CentralField,
    Edge,
    Family,
    Table,
    centrally_projective,
    converging_mirrors,
    custom_table,
    regular_polygon_vertices,
    right_spherical,
    transverse_line_at,
)

__version__ = "0.1.0"
