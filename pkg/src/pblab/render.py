"""Deterministic SVG rendering of a table and an orbit.

Coordinates are formatted with a fixed precision and elements are emitted
in a fixed order, so rendering the same scene twice yields byte-identical
documents.  Points at infinity cannot be drawn; a chord with an endpoint
at infinity is rendered as its full supporting line clipped to the view
box and marked at both clip points.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Tuple

from .dynamics import Orbit
from .tables import Family, Table, _field_pivot

_F = "{:.4f}"

_EDGE_STYLE = 'stroke="#1f2937" stroke-width="{w}" fill="none"'
_FIELD_STYLE = 'stroke="#9ca3af" stroke-width="{w}" stroke-dasharray="{d}" fill="none"'
_ORBIT_STYLE = 'stroke="#2563eb" stroke-width="{w}" fill="none"'
_CLIP_MARK_STYLE = 'fill="#dc2626"'
_VERTEX_STYLE = 'fill="#111827"'
_PIVOT_STYLE = 'fill="#059669"'


def _fmt(value: float) -> str:
    out = _F.format(value)
    # avoid the two distinct zeros "0.0000" / "-0.0000"
    return "0.0000" if out == "-0.0000" else out


def _affine_float(point) -> Optional[Tuple[float, float]]:
    if point.is_infinite():
        return None
    x, y = point.to_affine()
    return (float(x), -float(y))  # SVG y axis points down


def _line_float(line) -> Tuple[float, float, float]:
    a, b, c = (float(v) for v in line.coords)
    return (a, -b, c)  # same chart flip as _affine_float


def _clip_line_to_box(a, b, c, box) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Segment of the line a x + b y + c = 0 inside an axis-aligned box."""
    x0, y0, x1, y1 = box
    pts: List[Tuple[float, float]] = []
    if abs(b) > 1e-12:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                pts.append((x, y))
    if abs(a) > 1e-12:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                pts.append((x, y))
    # dedupe corners
    uniq: List[Tuple[float, float]] = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def _collect_box(points: Iterable[Optional[Tuple[float, float]]]) -> Tuple[float, float, float, float]:
    xs, ys = [], []
    for p in points:
        if p is None:
            continue
        xs.append(p[0])
        ys.append(p[1])
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-6)
    pad = 0.15 * span
    return (x0 - pad, y0 - pad, x1 + pad, y1 + pad)


def render_svg(table: Table, orb: Optional[Orbit] = None) -> str:
    """SVG document showing the table, its transverse field and an orbit."""
    anchors: List[Optional[Tuple[float, float]]] = []
    for v in table.vertices:
        anchors.append(_affine_float(v))
    for e in table.edges:
        anchors.append(_affine_float(_field_pivot(e.field)))
        for p in e.endpoints:
            anchors.append(_affine_float(p))
    if orb is not None:
        for p in orb.points:
            anchors.append(_affine_float(p))
    box = _collect_box(anchors)
    x0, y0, x1, y1 = box
    width, height = x1 - x0, y1 - y0
    diag = math.hypot(width, height)
    stroke = diag * 0.004
    dash = f"{_fmt(diag * 0.012)},{_fmt(diag * 0.012)}"

    parts: List[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">'.format(
            _fmt(x0), _fmt(y0), _fmt(width), _fmt(height)
        )
    )
    parts.append("<desc>projective billiard table and orbit</desc>")

    # -- boundary --
    edge_style = _EDGE_STYLE.format(w=_fmt(stroke))
    if table.family is Family.CONVERGING_MIRRORS:
        for e in table.edges:
            a, b, c = _line_float(e.support)
            seg = _clip_line_to_box(a, b, c, box)
            if seg:
                parts.append(_svg_line(seg[0], seg[1], edge_style))
    else:
        for i in range(table.n):
            pa = _affine_float(table.vertices[i])
            pb = _affine_float(table.vertices[(i + 1) % table.n])
            if pa is not None and pb is not None:
                parts.append(_svg_line(pa, pb, edge_style))
            else:
                a, b, c = _line_float(table.edges[i].support)
                seg = _clip_line_to_box(a, b, c, box)
                if seg:
                    parts.append(_svg_line(seg[0], seg[1], edge_style))

    # -- transverse field samples --
    field_style = _FIELD_STYLE.format(w=_fmt(stroke * 0.75), d=dash)
    tick = diag * 0.05
    for e in table.edges:
        p0 = _affine_float(e.endpoints[0])
        p1 = _affine_float(e.endpoints[1])
        pivot = _affine_float(_field_pivot(e.field))
        if p0 is None or p1 is None:
            continue
        for i in range(1, 6):
            t = i / 6.0
            mx = (1 - t) * p0[0] + t * p1[0]
            my = (1 - t) * p0[1] + t * p1[1]
            if pivot is None:
                continue
            dx, dy = pivot[0] - mx, pivot[1] - my
            norm = math.hypot(dx, dy)
            if norm < 1e-12:
                continue
            dx, dy = dx / norm * tick, dy / norm * tick
            parts.append(
                _svg_line((mx - dx, my - dy), (mx + dx, my + dy), field_style)
            )

    # -- orbit --
    if orb is not None:
        orbit_style = _ORBIT_STYLE.format(w=_fmt(stroke * 1.5))
        mark_r = _fmt(diag * 0.01)
        for k in range(len(orb.points) - 1):
            pa = _affine_float(orb.points[k])
            pb = _affine_float(orb.points[k + 1])
            if pa is not None and pb is not None:
                parts.append(_svg_line(pa, pb, orbit_style))
            else:
                a, b, c = _line_float(orb.chords[k])
                seg = _clip_line_to_box(a, b, c, box)
                if seg:
                    parts.append(_svg_line(seg[0], seg[1], orbit_style))
                    for q in seg:
                        parts.append(
                            f'<circle cx="{_fmt(q[0])}" cy="{_fmt(q[1])}" r="{mark_r}" {_CLIP_MARK_STYLE}/>'
                        )
        for p in orb.points:
            pa = _affine_float(p)
            if pa is not None:
                parts.append(
                    f'<circle cx="{_fmt(pa[0])}" cy="{_fmt(pa[1])}" r="{mark_r}" {_VERTEX_STYLE}/>'
                )

    # -- field pivots --
    pivot_r = _fmt(diag * 0.012)
    seen: List[Tuple[float, float]] = []
    for e in table.edges:
        pv = _affine_float(_field_pivot(e.field))
        if pv is None:
            continue
        if any(abs(pv[0] - q[0]) + abs(pv[1] - q[1]) < 1e-9 for q in seen):
            continue
        seen.append(pv)
        parts.append(
            f'<circle cx="{_fmt(pv[0])}" cy="{_fmt(pv[1])}" r="{pivot_r}" {_PIVOT_STYLE}/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _svg_line(p: Tuple[float, float], q: Tuple[float, float], style: str) -> str:
    return '<line x1="{}" y1="{}" x2="{}" y2="{}" {}/>'.format(
        _fmt(p[0]), _fmt(p[1]), _fmt(q[0]), _fmt(q[1]), style
    )
