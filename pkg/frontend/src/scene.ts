/*
Scene documents: the JSON format shared with the service and the CLI.

The editor keeps the whole scene in this shape and never invents its own.
Exact scenes carry every scalar as a canonical string ("p/q", "a*sqrt(3)"
or "a+b*sqrt(3)" over rationals); float scenes carry plain JSON numbers.
Serialisation here is byte-identical to the service's canonical form
(two-space indent, trailing newline, Python float repr), so a scene
exported from the editor re-parses to the same document everywhere.
*/

export type ScalarJson = string | number;
export type NumericMode = 'exact' | 'float';
export type PairJson = [ScalarJson, ScalarJson];

export interface ChordDoc {
  t0: ScalarJson;
  t1: ScalarJson;
}

export interface RunDoc {
  steps?: number;
  period?: number;
  grid?: number;
}

export interface RightSphericalTable {
  family: 'right_spherical';
  vertices: PairJson[];
}

export interface CentralTable {
  family: 'centrally_projective';
  origin: PairJson;
  vertices: PairJson[];
}

export interface RegularPolygonTable {
  family: 'regular_polygon';
  n: number;
  radius: ScalarJson;
}

export interface MirrorsTable {
  family: 'converging_mirrors';
  gap: ScalarJson;
  offset: ScalarJson;
}

export interface FieldDoc {
  type: 'central' | 'apex';
  point: PairJson;
}

export interface CustomTable {
  family: 'custom';
  vertices: PairJson[];
  fields: FieldDoc[];
}

export type TableDoc =
  | RightSphericalTable
  | CentralTable
  | RegularPolygonTable
  | MirrorsTable
  | CustomTable;

export interface SceneDoc {
  schema: 1;
  numeric_mode: NumericMode;
  table: TableDoc;
  chord?: ChordDoc;
  run?: RunDoc;
}

/** Load failure with the offending document path, like the service reports. */
export class SceneFormatError extends Error {
  constructor(
    public readonly path: string,
    public readonly reason: string,
  ) {
    super(`${path}: ${reason}`);
  }
}

// ---------------------------------------------------------------------------
// exact scalars: rationals and rational combinations of sqrt(3)
// ---------------------------------------------------------------------------

export interface Frac {
  n: bigint;
  d: bigint; // always > 0, fraction always reduced
}

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function frac(n: bigint, d: bigint): Frac {
  if (d === 0n) throw new SceneFormatError('$', 'zero denominator');
  if (d < 0n) {
    n = -n;
    d = -d;
  }
  const g = gcd(n, d);
  return g > 1n ? { n: n / g, d: d / g } : { n, d };
}

export function fracFromText(s: string): Frac {
  const slash = s.indexOf('/');
  if (slash < 0) return frac(BigInt(s), 1n);
  return frac(BigInt(s.slice(0, slash)), BigInt(s.slice(slash + 1)));
}

export function fracText(f: Frac): string {
  return f.d === 1n ? String(f.n) : `${f.n}/${f.d}`;
}

export function fracToNumber(f: Frac): number {
  return Number(f.n) / Number(f.d);
}

export function fracAdd(x: Frac, y: Frac): Frac {
  return frac(x.n * y.d + y.n * x.d, x.d * y.d);
}

export function fracSub(x: Frac, y: Frac): Frac {
  return frac(x.n * y.d - y.n * x.d, x.d * y.d);
}

export function fracMul(x: Frac, y: Frac): Frac {
  return frac(x.n * y.n, x.d * y.d);
}

/** Value a + b*sqrt(3) with rational a, b. */
export interface ExactValue {
  a: Frac;
  b: Frac;
}

const RAT = '-?\\d+(?:/[1-9]\\d*)?';
const PLAIN_RE = new RegExp(`^(${RAT})$`);
const ROOT_ONLY_RE = new RegExp(`^(${RAT})\\*sqrt\\(3\\)$`);
const MIXED_RE = new RegExp(`^(${RAT})([+-]\\d+(?:/[1-9]\\d*)?)\\*sqrt\\(3\\)$`);

export function parseExactText(s: string): ExactValue | null {
  const t = s.trim();
  let m = PLAIN_RE.exec(t);
  if (m) return { a: fracFromText(m[1]), b: frac(0n, 1n) };
  m = ROOT_ONLY_RE.exec(t);
  if (m) return { a: frac(0n, 1n), b: fracFromText(m[1]) };
  m = MIXED_RE.exec(t);
  if (m) return { a: fracFromText(m[1]), b: fracFromText(m[2]) };
  return null;
}

/** Canonical text of an exact value; matches the service's serialiser. */
export function exactText(v: ExactValue): string {
  if (v.b.n === 0n) return fracText(v.a);
  if (v.a.n === 0n) return `${fracText(v.b)}*sqrt(3)`;
  const sign = v.b.n > 0n ? '+' : '-';
  const abs = { n: v.b.n < 0n ? -v.b.n : v.b.n, d: v.b.d };
  return `${fracText(v.a)}${sign}${fracText(abs)}*sqrt(3)`;
}

const SQRT3 = Math.sqrt(3);

export function exactToNumber(v: ExactValue): number {
  return fracToNumber(v.a) + fracToNumber(v.b) * SQRT3;
}

/** Chart value of one scalar in either numeric mode. */
export function scalarToNumber(value: ScalarJson): number {
  if (typeof value === 'number') return value;
  const parsed = parseExactText(value);
  if (parsed === null) throw new SceneFormatError('$', `unreadable exact scalar ${JSON.stringify(value)}`);
  return exactToNumber(parsed);
}

/**
 * Snap a chart coordinate to the nearest hundredth as a canonical exact
 * scalar, so drags in exact mode keep the scene rational.
 */
export function hundredth(x: number): string {
  return fracText(frac(BigInt(Math.round(x * 100)), 100n));
}

// ---------------------------------------------------------------------------
// canonical text
// ---------------------------------------------------------------------------

/**
 * Python repr of a float, which is what the service embeds in canonical
 * documents: shortest round-trip digits, a forced ".0" on integral values,
 * scientific notation outside [1e-4, 1e16) with a signed two-digit exponent.
 */
export function pyFloatText(v: number): string {
  if (!Number.isFinite(v)) throw new SceneFormatError('$', 'scene floats must be finite');
  if (v === 0) return Object.is(v, -0) ? '-0.0' : '0.0';
  const [mant, expPart] = Math.abs(v).toExponential().split('e');
  const digits = mant.replace('.', '');
  const e = parseInt(expPart, 10);
  let out: string;
  if (e >= 16 || e < -4) {
    const m = digits.length === 1 ? digits : `${digits[0]}.${digits.slice(1)}`;
    out = `${m}e${e < 0 ? '-' : '+'}${String(Math.abs(e)).padStart(2, '0')}`;
  } else if (e >= digits.length - 1) {
    out = `${digits}${'0'.repeat(e - digits.length + 1)}.0`;
  } else if (e >= 0) {
    out = `${digits.slice(0, e + 1)}.${digits.slice(e + 1)}`;
  } else {
    out = `0.${'0'.repeat(-e - 1)}${digits}`;
  }
  return v < 0 ? `-${out}` : out;
}

type JNode =
  | { k: 'raw'; text: string }
  | { k: 'arr'; items: JNode[] }
  | { k: 'obj'; entries: [string, JNode][] };

function raw(text: string): JNode {
  return { k: 'raw', text };
}

function emit(node: JNode, indent: number): string {
  const pad = ' '.repeat(indent);
  const inner = ' '.repeat(indent + 2);
  switch (node.k) {
    case 'raw':
      return node.text;
    case 'arr': {
      if (node.items.length === 0) return '[]';
      const body = node.items.map((it) => inner + emit(it, indent + 2)).join(',\n');
      return `[\n${body}\n${pad}]`;
    }
    case 'obj': {
      if (node.entries.length === 0) return '{}';
      const body = node.entries
        .map(([key, val]) => `${inner}${JSON.stringify(key)}: ${emit(val, indent + 2)}`)
        .join(',\n');
      return `{\n${body}\n${pad}}`;
    }
  }
}

function scalarNode(value: ScalarJson, mode: NumericMode, path: string): JNode {
  if (mode === 'float') {
    if (typeof value !== 'number') throw new SceneFormatError(path, 'float scenes carry scalars as JSON numbers');
    return raw(pyFloatText(value));
  }
  const text = normalizeExactScalar(value, path);
  return raw(JSON.stringify(text));
}

function pairNode(pair: PairJson, mode: NumericMode, path: string): JNode {
  return { k: 'arr', items: [scalarNode(pair[0], mode, `${path}[0]`), scalarNode(pair[1], mode, `${path}[1]`)] };
}

function tableNode(table: TableDoc, mode: NumericMode): JNode {
  const entries: [string, JNode][] = [['family', raw(JSON.stringify(table.family))]];
  const pairs = (vs: PairJson[], path: string): JNode => ({
    k: 'arr',
    items: vs.map((v, i) => pairNode(v, mode, `${path}[${i}]`)),
  });
  switch (table.family) {
    case 'right_spherical':
      entries.push(['vertices', pairs(table.vertices, 'table.vertices')]);
      break;
    case 'centrally_projective':
      entries.push(['origin', pairNode(table.origin, mode, 'table.origin')]);
      entries.push(['vertices', pairs(table.vertices, 'table.vertices')]);
      break;
    case 'regular_polygon':
      entries.push(['n', raw(String(table.n))]);
      entries.push(['radius', scalarNode(table.radius, mode, 'table.radius')]);
      break;
    case 'converging_mirrors':
      entries.push(['gap', scalarNode(table.gap, mode, 'table.gap')]);
      entries.push(['offset', scalarNode(table.offset, mode, 'table.offset')]);
      break;
    case 'custom':
      entries.push(['vertices', pairs(table.vertices, 'table.vertices')]);
      entries.push([
        'fields',
        {
          k: 'arr',
          items: table.fields.map((f, i) => ({
            k: 'obj',
            entries: [
              ['type', raw(JSON.stringify(f.type))],
              ['point', pairNode(f.point, mode, `table.fields[${i}].point`)],
            ],
          })),
        },
      ]);
      break;
  }
  return { k: 'obj', entries };
}

/** Canonical JSON text of a scene: the byte form the service itself emits. */
export function canonicalSceneText(doc: SceneDoc): string {
  const mode = doc.numeric_mode;
  const entries: [string, JNode][] = [
    ['schema', raw('1')],
    ['numeric_mode', raw(JSON.stringify(mode))],
    ['table', tableNode(doc.table, mode)],
  ];
  if (doc.chord !== undefined) {
    entries.push([
      'chord',
      {
        k: 'obj',
        entries: [
          ['t0', scalarNode(doc.chord.t0, mode, 'chord.t0')],
          ['t1', scalarNode(doc.chord.t1, mode, 'chord.t1')],
        ],
      },
    ]);
  }
  if (doc.run !== undefined) {
    const run: [string, JNode][] = [];
    if (doc.run.steps !== undefined) run.push(['steps', raw(String(doc.run.steps))]);
    if (doc.run.period !== undefined) run.push(['period', raw(String(doc.run.period))]);
    if (doc.run.grid !== undefined) run.push(['grid', raw(String(doc.run.grid))]);
    if (run.length > 0) entries.push(['run', { k: 'obj', entries: run }]);
  }
  return emit({ k: 'obj', entries }, 0) + '\n';
}

// ---------------------------------------------------------------------------
// loading
// ---------------------------------------------------------------------------

function normalizeExactScalar(value: unknown, path: string): string {
  if (typeof value === 'boolean') throw new SceneFormatError(path, 'expected a scalar, got a boolean');
  if (typeof value === 'number') {
    // JSON.parse cannot tell 2 from 2.0, so integral floats pass here; the
    // normalized document only ever sends the canonical string onward.
    if (!Number.isInteger(value)) {
      throw new SceneFormatError(path, "exact scenes may not contain JSON floats; use 'p/q' strings");
    }
    return String(value);
  }
  if (typeof value !== 'string') throw new SceneFormatError(path, 'expected an exact scalar (integer or string)');
  const parsed = parseExactText(value);
  if (parsed === null) throw new SceneFormatError(path, `unreadable exact scalar ${JSON.stringify(value)}`);
  return exactText(parsed);
}

function normalizeScalar(value: unknown, mode: NumericMode, path: string): ScalarJson {
  if (mode === 'float') {
    if (typeof value === 'boolean' || typeof value !== 'number') {
      throw new SceneFormatError(path, 'float scenes carry scalars as JSON numbers');
    }
    return value;
  }
  return normalizeExactScalar(value, path);
}

function normalizePair(value: unknown, mode: NumericMode, path: string): PairJson {
  if (!Array.isArray(value) || value.length !== 2) {
    throw new SceneFormatError(path, 'expected an affine point as a two-entry array');
  }
  return [normalizeScalar(value[0], mode, `${path}[0]`), normalizeScalar(value[1], mode, `${path}[1]`)];
}

function expectObject(value: unknown, path: string): Record<string, unknown> {
  if (typeof value !== 'object' || value === null || Array.isArray(value)) {
    throw new SceneFormatError(path, 'expected an object');
  }
  return value as Record<string, unknown>;
}

function expectInt(value: unknown, path: string, minimum?: number): number {
  if (typeof value === 'boolean' || typeof value !== 'number' || !Number.isInteger(value)) {
    throw new SceneFormatError(path, 'expected an integer');
  }
  if (minimum !== undefined && value < minimum) {
    throw new SceneFormatError(path, `expected an integer >= ${minimum}`);
  }
  return value;
}

function checkKeys(d: Record<string, unknown>, allowed: string[], required: string[], path: string): void {
  for (const key of Object.keys(d)) {
    if (!allowed.includes(key)) throw new SceneFormatError(`${path}.${key}`, 'unknown field');
  }
  for (const key of required) {
    if (!(key in d)) throw new SceneFormatError(`${path}.${key}`, 'missing required field');
  }
}

function normalizeVertices(value: unknown, mode: NumericMode, minimum: number): PairJson[] {
  if (!Array.isArray(value) || value.length < minimum) {
    throw new SceneFormatError('table.vertices', `expected at least ${minimum} entries`);
  }
  return value.map((v, i) => normalizePair(v, mode, `table.vertices[${i}]`));
}

function normalizeTable(value: unknown, mode: NumericMode): TableDoc {
  const spec = expectObject(value, 'table');
  const family = spec.family;
  switch (family) {
    case 'right_spherical': {
      checkKeys(spec, ['family', 'vertices'], ['vertices'], 'table');
      const vertices = normalizeVertices(spec.vertices, mode, 3);
      if (vertices.length !== 3) throw new SceneFormatError('table.vertices', 'expected exactly 3 entries');
      return { family, vertices };
    }
    case 'centrally_projective': {
      checkKeys(spec, ['family', 'origin', 'vertices'], ['origin', 'vertices'], 'table');
      return {
        family,
        origin: normalizePair(spec.origin, mode, 'table.origin'),
        vertices: normalizeVertices(spec.vertices, mode, 3),
      };
    }
    case 'regular_polygon': {
      checkKeys(spec, ['family', 'n', 'radius'], ['n', 'radius'], 'table');
      return {
        family,
        n: expectInt(spec.n, 'table.n', 3),
        radius: normalizeScalar(spec.radius, mode, 'table.radius'),
      };
    }
    case 'converging_mirrors': {
      checkKeys(spec, ['family', 'gap', 'offset'], ['gap', 'offset'], 'table');
      return {
        family,
        gap: normalizeScalar(spec.gap, mode, 'table.gap'),
        offset: normalizeScalar(spec.offset, mode, 'table.offset'),
      };
    }
    case 'custom': {
      checkKeys(spec, ['family', 'vertices', 'fields'], ['vertices', 'fields'], 'table');
      const vertices = normalizeVertices(spec.vertices, mode, 3);
      if (!Array.isArray(spec.fields) || spec.fields.length !== vertices.length) {
        throw new SceneFormatError('table.fields', `expected exactly ${vertices.length} entries`);
      }
      const fields = spec.fields.map((f, i): FieldDoc => {
        const fpath = `table.fields[${i}]`;
        const fd = expectObject(f, fpath);
        checkKeys(fd, ['type', 'point'], ['type', 'point'], fpath);
        if (fd.type !== 'central' && fd.type !== 'apex') {
          throw new SceneFormatError(`${fpath}.type`, "expected 'central' or 'apex'");
        }
        return { type: fd.type, point: normalizePair(fd.point, mode, `${fpath}.point`) };
      });
      return { family, vertices, fields };
    }
    default:
      throw new SceneFormatError('table.family', `unknown family ${JSON.stringify(family)}`);
  }
}

/**
 * Parse scene JSON into a canonical document: structural checks mirror the
 * service schema so load errors read the same; geometric validation stays
 * with the service, which is the sole geometry authority here.
 */
export function parseSceneDoc(source: string | unknown): SceneDoc {
  let docRaw: unknown;
  if (typeof source === 'string') {
    try {
      docRaw = JSON.parse(source);
    } catch (exc) {
      throw new SceneFormatError('$', `invalid JSON: ${exc instanceof Error ? exc.message : exc}`);
    }
  } else {
    docRaw = source;
  }
  const doc = expectObject(docRaw, '$');
  checkKeys(doc, ['schema', 'numeric_mode', 'table', 'chord', 'run'], ['schema', 'numeric_mode', 'table'], '$');
  if (doc.schema !== 1) throw new SceneFormatError('schema', `unsupported schema version ${JSON.stringify(doc.schema)}`);
  const mode = doc.numeric_mode;
  if (mode !== 'exact' && mode !== 'float') throw new SceneFormatError('numeric_mode', "expected 'exact' or 'float'");

  const out: SceneDoc = { schema: 1, numeric_mode: mode, table: normalizeTable(doc.table, mode) };

  if ('chord' in doc) {
    const cspec = expectObject(doc.chord, 'chord');
    checkKeys(cspec, ['t0', 't1'], ['t0', 't1'], 'chord');
    out.chord = {
      t0: normalizeScalar(cspec.t0, mode, 'chord.t0'),
      t1: normalizeScalar(cspec.t1, mode, 'chord.t1'),
    };
  }

  if ('run' in doc) {
    const rspec = expectObject(doc.run, 'run');
    checkKeys(rspec, ['steps', 'period', 'grid'], [], 'run');
    const run: RunDoc = {};
    if ('steps' in rspec) run.steps = expectInt(rspec.steps, 'run.steps', 1);
    if ('period' in rspec) run.period = expectInt(rspec.period, 'run.period', 1);
    if ('grid' in rspec) run.grid = expectInt(rspec.grid, 'run.grid', 2);
    if (Object.keys(run).length > 0) out.run = run;
  }

  return out;
}

/** Deep copy; scene docs are plain JSON data. */
export function cloneScene(doc: SceneDoc): SceneDoc {
  return JSON.parse(JSON.stringify(doc)) as SceneDoc;
}
