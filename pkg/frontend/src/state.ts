/*
Editor state and gestures. The scene document is the single source of
truth; drags rewrite it and nothing else. Exact scenes stay exact under
dragging by snapping chart positions to hundredths, so the service keeps
giving exact verdicts on edited tables.
*/

import type { DualizeResult, OrbitResult, ScanResult, VerifyResult } from './api.js';
import {
  canonicalSceneText,
  cloneScene,
  frac,
  fracMul,
  fracSub,
  fracText,
  hundredth,
  parseExactText,
  scalarToNumber,
  type Frac,
  type PairJson,
  type ScalarJson,
  type SceneDoc,
} from './scene.js';
import type { ChartPoint } from './viewmodel.js';

export type HandleRef = { kind: 'vertex'; index: number } | { kind: 'origin' } | { kind: 'chord'; index: 0 | 1 };

export interface Handle {
  ref: HandleRef;
  at: ChartPoint;
}

export interface Overlays {
  field: boolean;
  dual: boolean;
  outer: boolean;
}

export interface ResultSlots {
  orbit?: OrbitResult;
  verify?: VerifyResult;
  scan?: ScanResult;
  dualize?: DualizeResult;
}

export interface EditorState {
  scene: SceneDoc;
  overlays: Overlays;
  last: ResultSlots;
  banner: string | null;
}

export function initialState(scene: SceneDoc): EditorState {
  return {
    scene: cloneScene(scene),
    overlays: { field: true, dual: false, outer: false },
    last: {},
    banner: null,
  };
}

// ---------------------------------------------------------------------------
// chart geometry of the scene inputs (never of results)
// ---------------------------------------------------------------------------

function pairChart(pair: PairJson): ChartPoint {
  return { x: scalarToNumber(pair[0]), y: scalarToNumber(pair[1]) };
}

export interface TableChart {
  kind: 'polygon' | 'mirrors';
  vertices: ChartPoint[]; // mirrors: the two edge anchor segments flattened
  origin: ChartPoint | null;
  pivots: { at: ChartPoint; label: string }[];
  mirrorY?: [number, number];
}

/** Display shape of the table; regular polygons use their documented layout. */
export function tableChart(scene: SceneDoc): TableChart {
  const t = scene.table;
  switch (t.family) {
    case 'right_spherical': {
      const vs = t.vertices.map(pairChart);
      const pivots = vs.map((_, i) => ({ at: vs[(i + 2) % 3], label: `apex of edge ${i}` }));
      return { kind: 'polygon', vertices: vs, origin: null, pivots };
    }
    case 'centrally_projective': {
      const vs = t.vertices.map(pairChart);
      const o = pairChart(t.origin);
      return { kind: 'polygon', vertices: vs, origin: o, pivots: [{ at: o, label: 'origin' }] };
    }
    case 'regular_polygon': {
      const r = scalarToNumber(t.radius);
      const vs: ChartPoint[] = [];
      for (let k = 0; k < t.n; k++) {
        const theta = Math.PI - (2 * Math.PI * k) / t.n;
        vs.push({ x: r * Math.cos(theta), y: r * Math.sin(theta) });
      }
      const o = { x: 0, y: 0 };
      return { kind: 'polygon', vertices: vs, origin: o, pivots: [{ at: o, label: 'origin' }] };
    }
    case 'converging_mirrors': {
      const gap = scalarToNumber(t.gap);
      const offset = scalarToNumber(t.offset);
      const vs: ChartPoint[] = [
        { x: offset, y: 0 },
        { x: offset + 1, y: 0 },
        { x: offset, y: gap },
        { x: offset + 1, y: gap },
      ];
      const pivots = [
        { at: { x: offset, y: gap }, label: 'apex of mirror 0' },
        { at: { x: offset, y: 0 }, label: 'apex of mirror 1' },
      ];
      return { kind: 'mirrors', vertices: vs, origin: null, pivots, mirrorY: [0, gap] };
    }
    case 'custom': {
      const vs = t.vertices.map(pairChart);
      const pivots = t.fields.map((f, i) => ({
        at: pairChart(f.point),
        label: `${f.type} field of edge ${i}`,
      }));
      return { kind: 'polygon', vertices: vs, origin: null, pivots };
    }
  }
}

/** Endpoints of the edge hosting a chord parameter (edges 0 and 1). */
export function edgeEndpoints(scene: SceneDoc, edge: 0 | 1): [ChartPoint, ChartPoint] {
  const chart = tableChart(scene);
  if (chart.kind === 'mirrors') {
    const [a, b, c, d] = chart.vertices;
    return edge === 0 ? [a, b] : [c, d];
  }
  const n = chart.vertices.length;
  return [chart.vertices[edge], chart.vertices[(edge + 1) % n]];
}

function lerp(a: ChartPoint, b: ChartPoint, t: number): ChartPoint {
  return { x: a.x + (b.x - a.x) * t, y: a.y + (b.y - a.y) * t };
}

export function chordHandlePoint(scene: SceneDoc, index: 0 | 1): ChartPoint | null {
  if (scene.chord === undefined) return null;
  const t = scalarToNumber(index === 0 ? scene.chord.t0 : scene.chord.t1);
  const [a, b] = edgeEndpoints(scene, index);
  return lerp(a, b, t);
}

const VERTEX_FAMILIES = new Set(['right_spherical', 'centrally_projective', 'custom']);

/** All draggable handles of the current scene at their chart positions. */
export function listHandles(scene: SceneDoc): Handle[] {
  const out: Handle[] = [];
  const t = scene.table;
  if (VERTEX_FAMILIES.has(t.family) && 'vertices' in t) {
    t.vertices.forEach((v, index) => out.push({ ref: { kind: 'vertex', index }, at: pairChart(v) }));
  }
  if (t.family === 'centrally_projective') {
    out.push({ ref: { kind: 'origin' }, at: pairChart(t.origin) });
  }
  for (const index of [0, 1] as const) {
    const at = chordHandlePoint(scene, index);
    if (at !== null) out.push({ ref: { kind: 'chord', index }, at });
  }
  return out;
}

// ---------------------------------------------------------------------------
// drags
// ---------------------------------------------------------------------------

function scalarAt(scene: SceneDoc, value: number): ScalarJson {
  return scene.numeric_mode === 'exact' ? hundredth(value) : value;
}

function clamp(v: number, lo: number, hi: number): number {
  return Math.min(Math.max(v, lo), hi);
}

/** Parameter of the point on segment a-b nearest to p. */
function segmentParam(a: ChartPoint, b: ChartPoint, p: ChartPoint): number {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len2 = dx * dx + dy * dy;
  if (len2 === 0) return 0.5;
  return ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
}

/**
 * Apply one drag gesture: move a handle to a chart position, rewriting the
 * scene document. Chord parameters are clamped to [1/100, 99/100] so a
 * handle cannot be dropped onto an edge endpoint.
 */
export function dragHandle(state: EditorState, ref: HandleRef, to: ChartPoint): EditorState {
  const scene = cloneScene(state.scene);
  const t = scene.table;
  switch (ref.kind) {
    case 'vertex': {
      if (!VERTEX_FAMILIES.has(t.family) || !('vertices' in t)) return state;
      if (ref.index < 0 || ref.index >= t.vertices.length) return state;
      t.vertices[ref.index] = [scalarAt(scene, to.x), scalarAt(scene, to.y)];
      break;
    }
    case 'origin': {
      if (t.family !== 'centrally_projective') return state;
      t.origin = [scalarAt(scene, to.x), scalarAt(scene, to.y)];
      break;
    }
    case 'chord': {
      if (scene.chord === undefined) return state;
      const [a, b] = edgeEndpoints(scene, ref.index);
      const raw = clamp(segmentParam(a, b, to), 0.01, 0.99);
      const value = scene.numeric_mode === 'exact' ? hundredth(raw) : raw;
      if (ref.index === 0) scene.chord.t0 = value;
      else scene.chord.t1 = value;
      break;
    }
  }
  return { ...state, scene };
}

// ---------------------------------------------------------------------------
// origin snapping
// ---------------------------------------------------------------------------

interface FracPoint {
  x: Frac;
  y: Frac;
}

function fracPair(pair: PairJson): FracPoint | null {
  const parse = (v: ScalarJson): Frac | null => {
    if (typeof v === 'number') return null;
    const e = parseExactText(v);
    return e === null || e.b.n !== 0n ? null : e.a;
  };
  if (typeof pair[0] === 'number' || typeof pair[1] === 'number') return null;
  const x = parse(pair[0]);
  const y = parse(pair[1]);
  return x === null || y === null ? null : { x, y };
}

function diagonalMeetExact(vs: FracPoint[]): FracPoint | null {
  // join(V0,V2) x join(V1,V3) via homogeneous cross products over Q
  const line = (p: FracPoint, q: FracPoint): [Frac, Frac, Frac] => [
    fracSub(p.y, q.y),
    fracSub(q.x, p.x),
    fracSub(fracMul(p.x, q.y), fracMul(p.y, q.x)),
  ];
  const l1 = line(vs[0], vs[2]);
  const l2 = line(vs[1], vs[3]);
  const x = fracSub(fracMul(l1[1], l2[2]), fracMul(l1[2], l2[1]));
  const y = fracSub(fracMul(l1[2], l2[0]), fracMul(l1[0], l2[2]));
  const z = fracSub(fracMul(l1[0], l2[1]), fracMul(l1[1], l2[0]));
  if (z.n === 0n) return null;
  const inv = frac(z.d, z.n);
  return { x: fracMul(x, inv), y: fracMul(y, inv) };
}

function diagonalMeetFloat(vs: ChartPoint[]): ChartPoint | null {
  const line = (p: ChartPoint, q: ChartPoint): [number, number, number] => [
    p.y - q.y,
    q.x - p.x,
    p.x * q.y - p.y * q.x,
  ];
  const l1 = line(vs[0], vs[2]);
  const l2 = line(vs[1], vs[3]);
  const x = l1[1] * l2[2] - l1[2] * l2[1];
  const y = l1[2] * l2[0] - l1[0] * l2[2];
  const z = l1[0] * l2[1] - l1[1] * l2[0];
  if (z === 0) return null;
  return { x: x / z, y: y / z };
}

/**
 * Snap O to the diagonal intersection of a quadrilateral. A gesture
 * affordance, not a result: the placement only matters because the service
 * is then asked to verify the 4-periodic orbit it makes possible.
 */
export function snapOriginToDiagonal(state: EditorState): EditorState | null {
  const t = state.scene.table;
  if (t.family !== 'centrally_projective' || t.vertices.length !== 4) return null;
  const scene = cloneScene(state.scene);
  const table = scene.table as typeof t;
  if (scene.numeric_mode === 'exact') {
    const vs = t.vertices.map(fracPair);
    if (vs.some((v) => v === null)) return null;
    const meet = diagonalMeetExact(vs as FracPoint[]);
    if (meet === null) return null;
    table.origin = [fracText(meet.x), fracText(meet.y)];
  } else {
    const meet = diagonalMeetFloat(t.vertices.map(pairChart));
    if (meet === null) return null;
    table.origin = [meet.x, meet.y];
  }
  return { ...state, scene };
}

/** Snap O to the chart origin (the regular polygon's center). */
export function snapOriginToCenter(state: EditorState): EditorState | null {
  const t = state.scene.table;
  if (t.family !== 'centrally_projective') return null;
  const scene = cloneScene(state.scene);
  (scene.table as typeof t).origin = scene.numeric_mode === 'exact' ? ['0', '0'] : [0.0, 0.0];
  return { ...state, scene };
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

/** Canonical scene text for download; verifies identically under the CLI. */
export function exportSceneText(state: EditorState): string {
  return canonicalSceneText(state.scene);
}
