"""Orbit iteration and reflectivity verification.

A reflection takes the incoming chord at a boundary point M on edge k to
the unique outgoing line forming a harmonic quadruple with the edge's
transverse line at M and the edge's supporting line.  An orbit follows the
edges cyclically; the table is m-reflective at a chord when the chord
returns to itself as a line after m edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    ChordDegenerate,
    DegenerateJoin,
    DegenerateMeet,
    FieldSingular,
    IndexOutOfRange,
    InfinitePoint,
    NotMultipleOfN,
    OrbitCollapse,
)
from .projective import (
    ProjLine,
    ProjPoint,
    harmonic_conjugate_line,
    join,
    meet,
    triple_residual,
    residual_is_zero,
)
from .scalars import Scalar, is_exact_scalar, scalar_sign
from .tables import Table, transverse_line_at


@dataclass(frozen=True)
class ChordParam:
    """Starting chord given by edge-chart parameters.

    t0 positions M_0 on edge 0 and t1 positions M_1 on edge 1, each as the
    affine combination (1-t) * start + t * end of the edge's endpoints,
    with 0 < t < 1.
    """

    t0: Scalar
    t1: Scalar

    def __post_init__(self):
        for name, t in (("t0", self.t0), ("t1", self.t1)):
            if is_exact_scalar(t):
                inside = scalar_sign(t) > 0 and scalar_sign(1 - t) > 0
            else:
                inside = 0.0 < t < 1.0
            if not inside:
                raise ValueError(f"{name} must lie strictly between 0 and 1")


@dataclass
class Orbit:
    """Materialised forward orbit M_0 .. M_s with its chord lines.

    ``chords[k]`` is the line M_k M_{k+1}.  ``collapsed_at`` is the index of
    the last computed point when iteration had to stop early (the reflected
    line fell onto the next edge), otherwise None.  ``on_segment[k]`` tells
    whether M_k lies between the endpoints of its edge (None when that is
    undecidable, e.g. an edge with an endpoint at infinity).
    """

    table: Table
    points: List[ProjPoint]
    chords: List[ProjLine]
    collapsed_at: Optional[int] = None
    on_segment: List[Optional[bool]] = field(default_factory=list)

    @property
    def collapsed(self) -> bool:
        return self.collapsed_at is not None


@dataclass
class PeriodReport:
    """Verdict of one periodicity check.

    In exact mode ``is_periodic`` holds iff ``line_residual`` is exactly 0;
    in float mode the residual is compared against the ambient tolerance.
    Residuals are None when the orbit collapsed before reaching index m+1.
    """

    period_tested: int
    is_periodic: bool
    line_residual: Optional[Scalar]
    point_residuals: Tuple[Optional[Scalar], Optional[Scalar]]
    collapsed: bool = False


@dataclass
class CellFailure:
    i: int
    j: int
    t0: Scalar
    t1: Scalar
    reason: str
    line_residual: Optional[Scalar] = None


@dataclass
class ScanReport:
    """Aggregate of check_periodic over a grid of starting chords.

    ``evaluated`` counts cells with a definite verdict; the fraction is
    periodic / evaluated (None when no cell got a verdict).  Collapsed cells
    appear in ``failures`` only, skipped cells in ``skipped`` only.
    """

    fraction_periodic: Optional[Fraction]
    max_residual: Scalar
    max_point_residual: Scalar
    evaluated: int
    skipped: int
    failures: List[CellFailure]


def reflect(table: Table, edge_index: int, point: ProjPoint, incoming: ProjLine) -> ProjLine:
    """Outgoing line of the reflection at a boundary point.

    The quadruple (incoming, outgoing, transverse line at the point, edge
    supporting line) is harmonic.  Applying the map twice returns the
    incoming line, and the two reference lines are its fixed lines.
    """
    transverse = transverse_line_at(table, edge_index, point)
    support = table.edge(edge_index).support
    return harmonic_conjugate_line(incoming, transverse, support)


def step(table: Table, edge_index: int, m_prev: ProjPoint, m_cur: ProjPoint) -> ProjPoint:
    """Next orbit point: reflect the chord at m_cur (on edge edge_index) and
    intersect the outgoing line with the next edge's supporting line."""
    if m_prev.same(m_cur):
        raise ChordDegenerate("consecutive orbit points coincide")
    incoming = join(m_prev, m_cur)
    outgoing = reflect(table, edge_index, m_cur, incoming)
    next_support = table.edge(edge_index + 1).support
    if outgoing.same(next_support):
        raise OrbitCollapse("reflected line equals the next edge's supporting line")
    nxt = meet(outgoing, next_support)
    if nxt.same(m_cur):
        # m_cur sits on both supporting lines (a corner); every line through
        # it meets the next support there again, so no new chord can form.
        raise ChordDegenerate("orbit point is stuck on two supporting lines")
    return nxt


def _edge_chart_point(table: Table, edge_index: int, t) -> ProjPoint:
    """Point (1-t) * start + t * end on the edge's endpoint chart."""
    e0, e1 = table.edge(edge_index).endpoints
    if e0.is_infinite() or e1.is_infinite():
        raise InfinitePoint("edge chart needs finite endpoints")
    x0, y0 = e0.to_affine()
    x1, y1 = e1.to_affine()
    s = 1 - t
    return ProjPoint.affine(s * x0 + t * x1, s * y0 + t * y1)


def chord_points(table: Table, chord: ChordParam) -> Tuple[ProjPoint, ProjPoint]:
    """Starting points M_0 on edge 0 and M_1 on edge 1 for a chord parameter."""
    m0 = _edge_chart_point(table, 0, chord.t0)
    m1 = _edge_chart_point(table, 1, chord.t1)
    if m0.same(m1):
        raise ChordDegenerate("chord endpoints coincide")
    return m0, m1


def _on_segment_verdict(point: ProjPoint, e0: ProjPoint, e1: ProjPoint):
    """Whether a point lies between the edge endpoints; None when undecidable."""
    if e0.is_infinite() or e1.is_infinite():
        return None
    if point.is_infinite():
        return False  # certainly not between finite endpoints
    x0, y0 = e0.to_affine()
    x1, y1 = e1.to_affine()
    px, py = point.to_affine()
    dx, dy = x1 - x0, y1 - y0
    use_x = abs(float(dx)) >= abs(float(dy))
    t = (px - x0) / dx if use_x else (py - y0) / dy
    if is_exact_scalar(t):
        return scalar_sign(t) >= 0 and scalar_sign(1 - t) >= 0
    return 0.0 <= t <= 1.0


def orbit_from_points(table: Table, m0: ProjPoint, m1: ProjPoint, steps: int) -> Orbit:
    """Forward orbit from two explicit starting points (M_0 on edge 0, M_1 on
    edge 1), producing points M_0 .. M_steps unless iteration collapses."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if m0.same(m1):
        raise ChordDegenerate("chord endpoints coincide")
    points = [m0, m1]
    chords = [join(m0, m1)]
    collapsed_at = None
    for k in range(1, steps):
        try:
            nxt = step(table, k, points[k - 1], points[k])
        except (OrbitCollapse, ChordDegenerate, FieldSingular, DegenerateJoin, DegenerateMeet):
            collapsed_at = k
            break
        points.append(nxt)
        chords.append(join(points[k], nxt))
    on_segment = []
    for k, p in enumerate(points):
        e0, e1 = table.edge(k).endpoints
        on_segment.append(_on_segment_verdict(p, e0, e1))
    return Orbit(table, points, chords, collapsed_at, on_segment)


def orbit(table: Table, chord: ChordParam, steps: int) -> Orbit:
    """Forward orbit from a chord parameter; see orbit_from_points."""
    m0, m1 = chord_points(table, chord)
    return orbit_from_points(table, m0, m1, steps)


def _periodicity_from_orbit(orb: Orbit, m: int) -> PeriodReport:
    if len(orb.points) < m + 2:
        return PeriodReport(
            period_tested=m,
            is_periodic=False,
            line_residual=None,
            point_residuals=(None, None),
            collapsed=True,
        )
    line_res = triple_residual(orb.chords[m], orb.chords[0])
    p_res0 = triple_residual(orb.points[m], orb.points[0])
    p_res1 = triple_residual(orb.points[m + 1], orb.points[1])
    return PeriodReport(
        period_tested=m,
        is_periodic=residual_is_zero(line_res),
        line_residual=line_res,
        point_residuals=(p_res0, p_res1),
        collapsed=False,
    )


def check_periodic(table: Table, chord: Union[ChordParam, Tuple[ProjPoint, ProjPoint]], m: int) -> PeriodReport:
    """Is the chord's orbit m-periodic as a line sequence?

    m must be a positive multiple of the edge count.  Periodicity means the
    chord M_m M_{m+1} equals the starting chord M_0 M_1 as a projective
    line; the point residuals report the stricter point-wise return.
    """
    if m <= 0 or m % table.n != 0:
        raise NotMultipleOfN(f"period {m} is not a positive multiple of n={table.n}")
    if isinstance(chord, ChordParam):
        orb = orbit(table, chord, m + 1)
    else:
        m0, m1 = chord
        orb = orbit_from_points(table, m0, m1, m + 1)
    return _periodicity_from_orbit(orb, m)


def reflectivity_scan(table: Table, m: int, grid: int) -> ScanReport:
    """check_periodic over a grid x grid lattice of chord parameters.

    Parameters run over t = i / (grid + 1) for i = 1 .. grid, staying a
    margin of 1/(grid+1) away from the edges' endpoints.  Exact tables use
    exact rational parameters.  Chords that fail to start (coincident
    points, a field pivot hit) are skipped.  Orbits that collapse before the
    period is reached carry no verdict: they are listed under failures with
    reason "collapsed" but excluded from the periodic fraction, which is
    taken over verdict cells only.  Non-periodic verdicts are failures with
    reason "not_periodic".
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    exact = all(v.is_exact for e in table.edges for v in e.endpoints)
    denom = grid + 1
    periodic = 0
    evaluated = 0
    skipped = 0
    failures: List[CellFailure] = []
    max_res = Fraction(0) if exact else 0.0
    max_pt_res = Fraction(0) if exact else 0.0
    for i in range(1, grid + 1):
        for j in range(1, grid + 1):
            if exact:
                t0, t1 = Fraction(i, denom), Fraction(j, denom)
            else:
                t0, t1 = i / denom, j / denom
            try:
                chord = ChordParam(t0, t1)
                report = check_periodic(table, chord, m)
            except (ChordDegenerate, FieldSingular, InfinitePoint):
                skipped += 1
                continue
            if report.collapsed:
                failures.append(CellFailure(i, j, t0, t1, "collapsed"))
                continue
            evaluated += 1
            if report.line_residual is not None and report.line_residual > max_res:
                max_res = report.line_residual
            worst_pt = max(
                (r for r in report.point_residuals if r is not None), default=None
            )
            if worst_pt is not None and worst_pt > max_pt_res:
                max_pt_res = worst_pt
            if report.is_periodic:
                periodic += 1
            else:
                failures.append(
                    CellFailure(i, j, t0, t1, "not_periodic", report.line_residual)
                )
    fraction = Fraction(periodic, evaluated) if evaluated else None
    return ScanReport(
        fraction_periodic=fraction,
        max_residual=max_res,
        max_point_residual=max_pt_res,
        evaluated=evaluated,
        skipped=skipped,
        failures=failures,
    )


def diagonal_concurrency_check(table: Table, orb: Orbit, m: int, r: int) -> bool:
    """For an even n-gon with a great diagonal joining opposite vertices,
    test whether the chords M_{m-r-2} M_{m-r-1} and M_{m+r} M_{m+r+1} meet
    the diagonal through vertex m (i.e. P_{m mod n} P_{(m+k) mod n},
    k = n/2) in the same point."""
    n = table.n
    if n < 4 or n % 2 != 0:
        raise ValueError("diagonal concurrency needs an even edge count >= 4")
    if r < 0 or m - r - 2 < 0 or m + r + 1 > len(orb.points) - 1:
        raise IndexOutOfRange(
            f"need orbit points {m - r - 2} .. {m + r + 1}, have 0 .. {len(orb.points) - 1}"
        )
    k = n // 2
    diagonal = join(table.vertices[m % n], table.vertices[(m + k) % n])
    first = meet(orb.chords[m - r - 2], diagonal)
    second = meet(orb.chords[m + r], diagonal)
    return first.same(second)
