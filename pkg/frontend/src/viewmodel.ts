/*
View models: the one seam between service responses and the screen.

Everything the panel prints and every coordinate the canvas plots is built
here from a response payload, verbatim where it is text and through the
affine chart map (x/z, y/z) where it is a canvas position. The editor adds
no geometry of its own, which is what the fixture contract tests pin down.
*/

import type {
  DualizeResult,
  ErrorBody,
  OrbitResult,
  ScanResult,
  TripleJson,
  VerifyResult,
} from './api.js';
import { scalarToNumber, type ScalarJson } from './scene.js';

export interface ChartPoint {
  x: number;
  y: number;
}

export type ChartPosition =
  | { finite: true; x: number; y: number }
  | { finite: false; dx: number; dy: number };

/** Chart position of a homogeneous triple; z = 0 keeps only a direction. */
export function tripleToChart(triple: TripleJson): ChartPosition {
  const x = scalarToNumber(triple[0]);
  const y = scalarToNumber(triple[1]);
  const z = scalarToNumber(triple[2]);
  if (z === 0) return { finite: false, dx: x, dy: y };
  return { finite: true, x: x / z, y: y / z };
}

export function pairToChart(pair: [ScalarJson, ScalarJson]): ChartPoint {
  return { x: scalarToNumber(pair[0]), y: scalarToNumber(pair[1]) };
}

/** Panel text of one response scalar: exact strings verbatim, floats via String(). */
export function scalarText(value: ScalarJson | null): string {
  if (value === null) return 'n/a';
  return typeof value === 'number' ? String(value) : value;
}

function tripleText(triple: TripleJson): string {
  return `[${triple.map(scalarText).join(', ')}]`;
}

function pairText(pair: [ScalarJson, ScalarJson]): string {
  return `[${scalarText(pair[0])}, ${scalarText(pair[1])}]`;
}

// ---------------------------------------------------------------------------
// orbit
// ---------------------------------------------------------------------------

export interface OrbitView {
  steps: number;
  positions: ChartPosition[];
  segments: [ChartPoint, ChartPoint][];
  collapsedAt: number | null;
  readout: string[];
}

export function orbitView(result: OrbitResult): OrbitView {
  const positions = result.points.map(tripleToChart);
  const segments: [ChartPoint, ChartPoint][] = [];
  for (let i = 0; i + 1 < positions.length; i++) {
    const a = positions[i];
    const b = positions[i + 1];
    if (a.finite && b.finite) segments.push([{ x: a.x, y: a.y }, { x: b.x, y: b.y }]);
  }
  const readout = [`orbit: ${result.points.length} points over ${result.steps} steps`];
  if (result.collapsed_at !== null) readout.push(`collapsed at index ${result.collapsed_at}`);
  result.points.forEach((triple, i) => {
    const tags: string[] = [`edge ${result.edge_indices[i]}`];
    if (result.on_segment[i] === false) tags.push('off segment');
    if (!positions[i].finite) tags.push('at infinity');
    readout.push(`M${i} ${tripleText(triple)} ${tags.join(', ')}`);
  });
  return { steps: result.steps, positions, segments, collapsedAt: result.collapsed_at, readout };
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

export type Tone = 'ok' | 'bad' | 'warn';

export interface VerifyView {
  badge: string;
  tone: Tone;
  lines: string[];
}

export function verifyView(result: VerifyResult): VerifyView {
  let badge: string;
  let tone: Tone;
  if (result.collapsed) {
    badge = `COLLAPSED before m=${result.period}`;
    tone = 'warn';
  } else if (result.is_periodic) {
    badge = `PERIODIC m=${result.period}`;
    tone = 'ok';
  } else {
    badge = `NOT PERIODIC m=${result.period}`;
    tone = 'bad';
  }
  const lines = [`line residual ${scalarText(result.line_residual)}`];
  if (result.point_residuals.length > 0) {
    lines.push(`point residuals ${result.point_residuals.map(scalarText).join(', ')}`);
  }
  return { badge, tone, lines };
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

export interface ScanView {
  headline: string;
  lines: string[];
  failures: string[];
}

export function scanView(result: ScanResult): ScanView {
  const fraction = result.fraction_periodic === null ? 'n/a' : result.fraction_periodic;
  const headline = `fraction periodic ${fraction} at m=${result.period} over a ${result.grid}x${result.grid} grid`;
  const lines = [
    `evaluated ${result.evaluated}, skipped ${result.skipped}`,
    `max line residual ${scalarText(result.max_residual)}`,
    `max point residual ${scalarText(result.max_point_residual)}`,
  ];
  const failures = result.failures.map(
    (f) =>
      `cell (${f.i}, ${f.j}) t=(${scalarText(f.t0)}, ${scalarText(f.t1)}) ${f.reason}` +
      (f.line_residual === null ? '' : `, residual ${scalarText(f.line_residual)}`),
  );
  return { headline, lines, failures };
}

// ---------------------------------------------------------------------------
// dualize
// ---------------------------------------------------------------------------

export interface DualView {
  center: ChartPoint;
  dualVertices: ChartPoint[];
  outerPoints: (ChartPoint | null)[];
  startIndex: number;
  infiniteAt: number[];
  badge: string | null;
  readout: string[];
}

export function dualizeView(result: DualizeResult): DualView {
  const outer = result.outer;
  const readout = [`center ${pairText(result.center)}`];
  result.dual_vertices.forEach((q, k) => readout.push(`Q${k} ${pairText(q)}`));
  outer.points.forEach((p, i) => {
    const label = `N${outer.start_index + i}`;
    readout.push(p === null ? `${label} on the center's polar (no finite pole)` : `${label} ${pairText(p)}`);
  });
  let badge: string | null = null;
  if (outer.is_periodic !== undefined) {
    badge =
      outer.is_periodic === null
        ? 'OUTER ORBIT UNDECIDED'
        : outer.is_periodic
          ? 'OUTER ORBIT PERIODIC'
          : 'OUTER ORBIT NOT PERIODIC';
  }
  return {
    center: pairToChart(result.center),
    dualVertices: result.dual_vertices.map(pairToChart),
    outerPoints: outer.points.map((p) => (p === null ? null : pairToChart(p))),
    startIndex: outer.start_index,
    infiniteAt: outer.infinite_at,
    badge,
    readout,
  };
}

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

/** Inline banner for a service diagnostic; shown without tearing down the canvas. */
export function errorBanner(status: number, body: ErrorBody | null): string {
  if (body === null) return `service error (${status})`;
  const e = body.error;
  const where = e.path !== undefined ? ` at ${e.path}` : '';
  const why = e.reason ?? e.message;
  return `${e.type}${where}: ${why} (${status})`;
}

export function offlineBanner(baseUrl: string): string {
  return `service unreachable at ${baseUrl}; edits stay local until it is back`;
}
