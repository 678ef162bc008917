/*
Browser wiring. Edits rewrite the scene document, a debounced loop posts
it to the service, and sequence-numbered runners make sure a slow reply
never paints over a newer one. All geometry on screen is either the scene
the user drew or a response from the service.
*/

import { debounce, ServiceClient, ServiceError, SequencedRunner } from './api.js';
import {
  chartToPixel,
  dualCommands,
  fitViewport,
  handleCommands,
  orbitCommands,
  pixelToChart,
  replay,
  sameRef,
  tableCommands,
  type DrawCmd,
  type Viewport,
} from './draw.js';
import { SAMPLES } from './samples.js';
import { parseSceneDoc, SceneFormatError, type SceneDoc } from './scene.js';
import {
  dragHandle,
  exportSceneText,
  initialState,
  listHandles,
  snapOriginToCenter,
  snapOriginToDiagonal,
  tableChart,
  type EditorState,
  type HandleRef,
} from './state.js';
import {
  dualizeView,
  errorBanner,
  offlineBanner,
  orbitView,
  scanView,
  verifyView,
  type ChartPoint,
} from './viewmodel.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>('canvas');
const ctx = canvas.getContext('2d')!;
const sceneSelect = el<HTMLSelectElement>('scene-select');
const sceneText = el<HTMLTextAreaElement>('scene-text');
const badge = el<HTMLElement>('badge');
const readout = el<HTMLPreElement>('readout');
const scanOut = el<HTMLPreElement>('scan-out');
const dualOut = el<HTMLPreElement>('dual-out');
const banner = el<HTMLElement>('banner');
const connBanner = el<HTMLElement>('conn-banner');

function serviceBase(): string {
  const fromQuery = new URLSearchParams(location.search).get('service');
  if (fromQuery) return fromQuery.replace(/\/$/, '');
  return 'http://127.0.0.1:8173';
}

const client = new ServiceClient(serviceBase());
const runners = {
  orbit: new SequencedRunner(),
  verify: new SequencedRunner(),
  scan: new SequencedRunner(),
  dualize: new SequencedRunner(),
};

let state: EditorState = initialState(SAMPLES[0].make());
let vp: Viewport | null = null;
let hot: HandleRef | null = null;
let dragging: HandleRef | null = null;
let panning: { fromX: number; fromY: number; cx: number; cy: number } | null = null;

// ---------------------------------------------------------------------------
// service plumbing
// ---------------------------------------------------------------------------

function showServiceError(exc: unknown): void {
  if (exc instanceof ServiceError) {
    banner.textContent = errorBanner(exc.status, exc.body);
    banner.hidden = false;
  } else {
    connBanner.textContent = offlineBanner(client.baseUrl);
    connBanner.hidden = false;
  }
}

function clearBanners(): void {
  banner.hidden = true;
  connBanner.hidden = true;
}

function intOr(idOf: string, fallback: undefined): number | undefined {
  const raw = el<HTMLInputElement>(idOf).value.trim();
  if (raw === '') return fallback;
  const v = Number(raw);
  return Number.isInteger(v) && v > 0 ? v : fallback;
}

function rerunOrbitAndVerify(): void {
  const scene = state.scene;
  void runners.orbit.run(
    () => client.orbit(scene, intOr('steps', undefined)),
    (r) => {
      state.last.orbit = r;
      clearBanners();
      refresh();
    },
    showServiceError,
  );
  void runners.verify.run(
    () => client.verify(scene, intOr('period', undefined)),
    (r) => {
      state.last.verify = r;
      clearBanners();
      refresh();
    },
    showServiceError,
  );
  if (state.overlays.dual || state.overlays.outer) rerunDualize();
}

function rerunDualize(): void {
  const scene = state.scene;
  void runners.dualize.run(
    () => client.dualize(scene, intOr('steps', undefined)),
    (r) => {
      state.last.dualize = r;
      refresh();
    },
    showServiceError,
  );
}

function rerunScan(): void {
  const scene = state.scene;
  scanOut.textContent = 'scanning...';
  void runners.scan.run(
    () => client.scan(scene, { period: intOr('period', undefined), grid: intOr('grid', undefined) }),
    (r) => {
      state.last.scan = r;
      refresh();
    },
    (exc) => {
      scanOut.textContent = '';
      showServiceError(exc);
    },
  );
}

const scheduleRerun = debounce(rerunOrbitAndVerify, 150);

function sceneEdited(): void {
  state.last = {};
  sceneText.value = exportSceneText(state);
  refresh();
  scheduleRerun();
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

function sizeCanvas(): void {
  const rect = canvas.getBoundingClientRect();
  const dpr = window.devicePixelRatio || 1;
  if (canvas.width !== Math.round(rect.width * dpr) || canvas.height !== Math.round(rect.height * dpr)) {
    canvas.width = Math.round(rect.width * dpr);
    canvas.height = Math.round(rect.height * dpr);
  }
  ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
}

function currentViewport(): Viewport {
  const rect = canvas.getBoundingClientRect();
  if (vp === null || vp.width !== rect.width || vp.height !== rect.height) {
    const chart = tableChart(state.scene);
    const pts = [...chart.vertices];
    if (chart.origin) pts.push(chart.origin);
    vp = fitViewport(pts, rect.width, rect.height);
  }
  return vp;
}

function refresh(): void {
  sizeCanvas();
  const view = currentViewport();
  ctx.clearRect(0, 0, view.width, view.height);

  const cmds: DrawCmd[] = [];
  cmds.push(...tableCommands(tableChart(state.scene), state.overlays.field));
  if (state.last.dualize && (state.overlays.dual || state.overlays.outer)) {
    const dv = dualizeView(state.last.dualize);
    cmds.push(...dualCommands(dv, state.overlays));
    dualOut.textContent = (dv.badge ? dv.badge + '\n' : '') + dv.readout.join('\n');
  } else {
    dualOut.textContent = '';
  }
  if (state.last.orbit) {
    const ov = orbitView(state.last.orbit);
    cmds.push(...orbitCommands(ov));
    readout.textContent = ov.readout.join('\n');
  } else {
    readout.textContent = '';
  }
  cmds.push(...handleCommands(listHandles(state.scene), dragging ?? hot));
  replay(ctx, view, cmds);

  if (state.last.verify) {
    const vv = verifyView(state.last.verify);
    badge.textContent = vv.badge;
    badge.className = `badge ${vv.tone}`;
    badge.title = vv.lines.join('\n');
    if (state.last.orbit) {
      readout.textContent += (readout.textContent ? '\n' : '') + vv.lines.join('\n');
    }
  } else {
    badge.textContent = 'no verdict yet';
    badge.className = 'badge';
  }

  if (state.last.scan) {
    const sv = scanView(state.last.scan);
    const failures = sv.failures.slice(0, 12);
    if (sv.failures.length > failures.length) failures.push(`(+${sv.failures.length - failures.length} more)`);
    scanOut.textContent = [sv.headline, ...sv.lines, ...failures].join('\n');
  }
}

// ---------------------------------------------------------------------------
// pointer gestures
// ---------------------------------------------------------------------------

function pointerChart(ev: PointerEvent): ChartPoint {
  const rect = canvas.getBoundingClientRect();
  return pixelToChart(currentViewport(), { x: ev.clientX - rect.left, y: ev.clientY - rect.top });
}

function handleAt(ev: PointerEvent): HandleRef | null {
  const rect = canvas.getBoundingClientRect();
  const px = { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
  const view = currentViewport();
  for (const h of listHandles(state.scene)) {
    const hp = chartToPixel(view, h.at);
    if (Math.hypot(hp.x - px.x, hp.y - px.y) <= 10) return h.ref;
  }
  return null;
}

canvas.addEventListener('pointerdown', (ev) => {
  canvas.setPointerCapture(ev.pointerId);
  const ref = handleAt(ev);
  if (ref) {
    dragging = ref;
  } else {
    const view = currentViewport();
    panning = { fromX: ev.clientX, fromY: ev.clientY, cx: view.cx, cy: view.cy };
  }
});

canvas.addEventListener('pointermove', (ev) => {
  if (dragging) {
    state = dragHandle(state, dragging, pointerChart(ev));
    sceneEdited();
    return;
  }
  if (panning && vp) {
    vp = { ...vp, cx: panning.cx + (ev.clientX - panning.fromX), cy: panning.cy + (ev.clientY - panning.fromY) };
    refresh();
    return;
  }
  const ref = handleAt(ev);
  const unchanged = ref === null ? hot === null : sameRef(ref, hot);
  if (!unchanged) {
    hot = ref;
    canvas.style.cursor = ref ? 'grab' : 'default';
    refresh();
  }
});

function endDrag(): void {
  dragging = null;
  panning = null;
}

canvas.addEventListener('pointerup', endDrag);
canvas.addEventListener('pointerleave', endDrag);

canvas.addEventListener('wheel', (ev) => {
  ev.preventDefault();
  const view = currentViewport();
  const rect = canvas.getBoundingClientRect();
  const px = { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
  const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
  vp = {
    ...view,
    scale: view.scale * factor,
    cx: px.x - (px.x - view.cx) * factor,
    cy: px.y - (px.y - view.cy) * factor,
  };
  refresh();
});

// ---------------------------------------------------------------------------
// panel wiring
// ---------------------------------------------------------------------------

function loadScene(doc: SceneDoc): void {
  state = { ...initialState(doc), overlays: state.overlays };
  vp = null;
  sceneText.value = exportSceneText(state);
  clearBanners();
  scanOut.textContent = '';
  refresh();
  scheduleRerun();
}

for (const sample of SAMPLES) {
  const opt = document.createElement('option');
  opt.textContent = sample.name;
  sceneSelect.appendChild(opt);
}
sceneSelect.addEventListener('change', () => {
  const sample = SAMPLES[sceneSelect.selectedIndex];
  if (sample) loadScene(sample.make());
});

el<HTMLButtonElement>('load-btn').addEventListener('click', () => {
  try {
    loadScene(parseSceneDoc(sceneText.value));
  } catch (exc) {
    if (exc instanceof SceneFormatError) {
      banner.textContent = `SchemaError at ${exc.path}: ${exc.reason}`;
      banner.hidden = false;
    } else {
      throw exc;
    }
  }
});

el<HTMLButtonElement>('export-btn').addEventListener('click', () => {
  const blob = new Blob([exportSceneText(state)], { type: 'application/json' });
  const a = document.createElement('a');
  a.href = URL.createObjectURL(blob);
  a.download = 'scene.json';
  a.click();
  URL.revokeObjectURL(a.href);
});

el<HTMLButtonElement>('snap-center').addEventListener('click', () => {
  const next = snapOriginToCenter(state);
  if (next) {
    state = next;
    sceneEdited();
  }
});

el<HTMLButtonElement>('snap-diagonal').addEventListener('click', () => {
  const next = snapOriginToDiagonal(state);
  if (next) {
    state = next;
    sceneEdited();
  }
});

el<HTMLButtonElement>('run-orbit').addEventListener('click', rerunOrbitAndVerify);
el<HTMLButtonElement>('run-verify').addEventListener('click', rerunOrbitAndVerify);
el<HTMLButtonElement>('run-scan').addEventListener('click', rerunScan);
el<HTMLButtonElement>('run-dualize').addEventListener('click', () => {
  state.overlays.dual = true;
  el<HTMLInputElement>('toggle-dual').checked = true;
  rerunDualize();
});

for (const key of ['field', 'dual', 'outer'] as const) {
  const box = el<HTMLInputElement>(`toggle-${key}`);
  box.checked = state.overlays[key];
  box.addEventListener('change', () => {
    state.overlays[key] = box.checked;
    if ((key === 'dual' || key === 'outer') && box.checked && !state.last.dualize) rerunDualize();
    refresh();
  });
}

window.addEventListener('resize', refresh);

void client.health().then(
  () => {
    connBanner.hidden = true;
  },
  () => {
    connBanner.textContent = offlineBanner(client.baseUrl);
    connBanner.hidden = false;
  },
);

loadScene(SAMPLES[0].make());
