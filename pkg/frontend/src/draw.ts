/*
Canvas drawing as data. Builders turn scene inputs and view models into
draw commands in chart coordinates; replay() maps them through the
viewport onto a 2d context. Points at infinity have no chart position, so
they become direction arrows pinned to the frame edge.
*/

import type { Handle, HandleRef, TableChart } from './state.js';
import type { ChartPoint, DualView, OrbitView } from './viewmodel.js';

export const COLORS = {
  edge: '#1f2937',
  field: '#9ca3af',
  orbit: '#2563eb',
  point: '#111827',
  pivot: '#059669',
  infinity: '#dc2626',
  dual: '#0891b2',
  outer: '#ea580c',
  handle: '#f59e0b',
};

export type DrawCmd =
  | { op: 'polyline'; pts: ChartPoint[]; closed: boolean; stroke: string; width: number; dash?: number[] }
  | { op: 'fullline'; through: ChartPoint; dir: ChartPoint; stroke: string; width: number; dash?: number[] }
  | { op: 'dot'; at: ChartPoint; r: number; fill: string }
  | { op: 'ring'; at: ChartPoint; r: number; stroke: string }
  | { op: 'arrow'; dir: ChartPoint; stroke: string };

export function tableCommands(chart: TableChart, showField: boolean): DrawCmd[] {
  const out: DrawCmd[] = [];
  if (chart.kind === 'mirrors') {
    const [a, b, c, d] = chart.vertices;
    out.push({ op: 'fullline', through: a, dir: { x: 1, y: 0 }, stroke: COLORS.edge, width: 2 });
    out.push({ op: 'fullline', through: c, dir: { x: 1, y: 0 }, stroke: COLORS.edge, width: 2 });
    for (const p of [a, b, c, d]) out.push({ op: 'dot', at: p, r: 2.5, fill: COLORS.edge });
  } else {
    out.push({ op: 'polyline', pts: chart.vertices, closed: true, stroke: COLORS.edge, width: 2 });
    for (const v of chart.vertices) out.push({ op: 'dot', at: v, r: 3, fill: COLORS.edge });
  }
  if (showField) {
    for (const pivot of chart.pivots) out.push({ op: 'dot', at: pivot.at, r: 4, fill: COLORS.pivot });
  }
  if (chart.origin !== null) out.push({ op: 'ring', at: chart.origin, r: 6, stroke: COLORS.pivot });
  return out;
}

export function orbitCommands(view: OrbitView): DrawCmd[] {
  const out: DrawCmd[] = [];
  for (const [a, b] of view.segments) {
    out.push({ op: 'polyline', pts: [a, b], closed: false, stroke: COLORS.orbit, width: 1.5 });
  }
  view.positions.forEach((pos, i) => {
    if (pos.finite) {
      out.push({ op: 'dot', at: { x: pos.x, y: pos.y }, r: 3, fill: COLORS.point });
      if (view.collapsedAt === i) out.push({ op: 'ring', at: { x: pos.x, y: pos.y }, r: 7, stroke: COLORS.infinity });
    } else {
      out.push({ op: 'arrow', dir: { x: pos.dx, y: pos.dy }, stroke: COLORS.infinity });
    }
  });
  return out;
}

export function dualCommands(view: DualView, overlays: { dual: boolean; outer: boolean }): DrawCmd[] {
  const out: DrawCmd[] = [];
  if (overlays.dual) {
    out.push({ op: 'polyline', pts: view.dualVertices, closed: true, stroke: COLORS.dual, width: 1.5, dash: [6, 4] });
    for (const q of view.dualVertices) out.push({ op: 'dot', at: q, r: 3, fill: COLORS.dual });
    out.push({ op: 'dot', at: view.center, r: 2.5, fill: COLORS.dual });
  }
  if (overlays.outer) {
    let runStart: ChartPoint[] = [];
    for (const p of view.outerPoints) {
      if (p === null) {
        if (runStart.length > 1) {
          out.push({ op: 'polyline', pts: runStart, closed: false, stroke: COLORS.outer, width: 1.5 });
        }
        runStart = [];
        continue;
      }
      runStart.push(p);
      out.push({ op: 'dot', at: p, r: 3, fill: COLORS.outer });
    }
    if (runStart.length > 1) {
      out.push({ op: 'polyline', pts: runStart, closed: false, stroke: COLORS.outer, width: 1.5 });
    }
  }
  return out;
}

export function handleCommands(handles: Handle[], hot: HandleRef | null): DrawCmd[] {
  return handles.map((h) => ({
    op: 'ring',
    at: h.at,
    r: sameRef(h.ref, hot) ? 9 : 6,
    stroke: COLORS.handle,
  }));
}

export function sameRef(a: HandleRef, b: HandleRef | null): boolean {
  if (b === null) return false;
  if (a.kind !== b.kind) return false;
  if (a.kind === 'vertex' && b.kind === 'vertex') return a.index === b.index;
  if (a.kind === 'chord' && b.kind === 'chord') return a.index === b.index;
  return true;
}

// ---------------------------------------------------------------------------
// viewport
// ---------------------------------------------------------------------------

export interface Viewport {
  scale: number; // pixels per chart unit
  cx: number; // pixel position of chart (0, 0)
  cy: number;
  width: number;
  height: number;
}

export function fitViewport(points: ChartPoint[], width: number, height: number): Viewport {
  let minX = -1;
  let maxX = 1;
  let minY = -1;
  let maxY = 1;
  if (points.length > 0) {
    minX = Math.min(...points.map((p) => p.x));
    maxX = Math.max(...points.map((p) => p.x));
    minY = Math.min(...points.map((p) => p.y));
    maxY = Math.max(...points.map((p) => p.y));
  }
  const spanX = Math.max(maxX - minX, 1e-6);
  const spanY = Math.max(maxY - minY, 1e-6);
  const scale = 0.8 * Math.min(width / spanX, height / spanY);
  const midX = (minX + maxX) / 2;
  const midY = (minY + maxY) / 2;
  return { scale, cx: width / 2 - midX * scale, cy: height / 2 + midY * scale, width, height };
}

export function chartToPixel(vp: Viewport, p: ChartPoint): ChartPoint {
  return { x: vp.cx + p.x * vp.scale, y: vp.cy - p.y * vp.scale };
}

export function pixelToChart(vp: Viewport, p: ChartPoint): ChartPoint {
  return { x: (p.x - vp.cx) / vp.scale, y: (vp.cy - p.y) / vp.scale };
}

export function replay(ctx: CanvasRenderingContext2D, vp: Viewport, cmds: DrawCmd[]): void {
  for (const cmd of cmds) {
    switch (cmd.op) {
      case 'polyline': {
        if (cmd.pts.length < 2) break;
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = cmd.width;
        ctx.setLineDash(cmd.dash ?? []);
        ctx.beginPath();
        const first = chartToPixel(vp, cmd.pts[0]);
        ctx.moveTo(first.x, first.y);
        for (const p of cmd.pts.slice(1)) {
          const q = chartToPixel(vp, p);
          ctx.lineTo(q.x, q.y);
        }
        if (cmd.closed) ctx.closePath();
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      }
      case 'fullline': {
        // long segment through the point; the canvas clips it at the frame
        const span = (vp.width + vp.height) / vp.scale;
        const a = chartToPixel(vp, {
          x: cmd.through.x - cmd.dir.x * span,
          y: cmd.through.y - cmd.dir.y * span,
        });
        const b = chartToPixel(vp, {
          x: cmd.through.x + cmd.dir.x * span,
          y: cmd.through.y + cmd.dir.y * span,
        });
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = cmd.width;
        ctx.setLineDash(cmd.dash ?? []);
        ctx.beginPath();
        ctx.moveTo(a.x, a.y);
        ctx.lineTo(b.x, b.y);
        ctx.stroke();
        ctx.setLineDash([]);
        break;
      }
      case 'dot': {
        const p = chartToPixel(vp, cmd.at);
        ctx.fillStyle = cmd.fill;
        ctx.beginPath();
        ctx.arc(p.x, p.y, cmd.r, 0, 2 * Math.PI);
        ctx.fill();
        break;
      }
      case 'ring': {
        const p = chartToPixel(vp, cmd.at);
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = 1.5;
        ctx.beginPath();
        ctx.arc(p.x, p.y, cmd.r, 0, 2 * Math.PI);
        ctx.stroke();
        break;
      }
      case 'arrow': {
        // direction marker at the frame edge for a point at infinity
        const len = Math.hypot(cmd.dir.x, cmd.dir.y);
        if (len === 0) break;
        const ux = cmd.dir.x / len;
        const uy = -cmd.dir.y / len; // pixel y grows downward
        const margin = 16;
        const tx = ux > 0 ? (vp.width - margin - vp.width / 2) / ux : ux < 0 ? (margin - vp.width / 2) / ux : Infinity;
        const ty = uy > 0 ? (vp.height - margin - vp.height / 2) / uy : uy < 0 ? (margin - vp.height / 2) / uy : Infinity;
        const t = Math.min(tx, ty);
        const px = vp.width / 2 + ux * t;
        const py = vp.height / 2 + uy * t;
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.moveTo(px - ux * 18, py - uy * 18);
        ctx.lineTo(px, py);
        ctx.moveTo(px - ux * 7 - uy * 5, py - uy * 7 + ux * 5);
        ctx.lineTo(px, py);
        ctx.lineTo(px - ux * 7 + uy * 5, py - uy * 7 - ux * 5);
        ctx.stroke();
        break;
      }
    }
  }
}
