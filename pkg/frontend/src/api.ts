/*
Typed client for the billiard service. The editor talks to the package
through these five HTTP routes and nothing else; every number it renders
comes back in one of the response shapes below.
*/

import type { ScalarJson, SceneDoc } from './scene.js';

export interface HealthResult {
  status: string;
}

export type TripleJson = [ScalarJson, ScalarJson, ScalarJson];

export interface OrbitResult {
  schema: 1;
  numeric_mode: string;
  command: 'orbit';
  steps: number;
  points: TripleJson[];
  edge_indices: number[];
  chords: TripleJson[];
  on_segment: (boolean | null)[];
  collapsed_at: number | null;
}

export interface VerifyResult {
  schema: 1;
  numeric_mode: string;
  command: 'verify';
  period: number;
  is_periodic: boolean;
  line_residual: ScalarJson | null;
  point_residuals: (ScalarJson | null)[];
  collapsed: boolean;
}

export interface ScanFailure {
  i: number;
  j: number;
  t0: ScalarJson;
  t1: ScalarJson;
  reason: string;
  line_residual: ScalarJson | null;
}

export interface ScanResult {
  schema: 1;
  numeric_mode: string;
  command: 'scan';
  period: number;
  grid: number;
  fraction_periodic: string | null;
  max_residual: ScalarJson | null;
  max_point_residual: ScalarJson | null;
  evaluated: number;
  skipped: number;
  failures: ScanFailure[];
}

export interface OuterOrbitJson {
  start_index: number;
  points: ([ScalarJson, ScalarJson] | null)[];
  infinite_at: number[];
  is_periodic?: boolean | null;
}

export interface DualizeResult {
  schema: 1;
  numeric_mode: string;
  command: 'dualize';
  steps: number;
  center: [ScalarJson, ScalarJson];
  dual_vertices: [ScalarJson, ScalarJson][];
  outer: OuterOrbitJson;
}

export interface ErrorBody {
  error: {
    type: string;
    message: string;
    path?: string;
    reason?: string;
  };
}

/** Non-2xx service reply, carrying the decoded diagnostic body. */
export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ErrorBody | null,
  ) {
    super(body ? `${body.error.type}: ${body.error.message}` : `service returned ${status}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(
    public readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async health(): Promise<HealthResult> {
    const res = await this.fetchFn(`${this.baseUrl}/api/health`);
    if (!res.ok) throw new ServiceError(res.status, await decodeError(res));
    return (await res.json()) as HealthResult;
  }

  orbit(scene: SceneDoc, steps?: number): Promise<OrbitResult> {
    return this.post<OrbitResult>('/api/orbit', { scene, ...(steps !== undefined && { steps }) });
  }

  verify(scene: SceneDoc, period?: number): Promise<VerifyResult> {
    return this.post<VerifyResult>('/api/verify', { scene, ...(period !== undefined && { period }) });
  }

  scan(scene: SceneDoc, opts: { period?: number; grid?: number } = {}): Promise<ScanResult> {
    return this.post<ScanResult>('/api/scan', { scene, ...opts });
  }

  dualize(scene: SceneDoc, steps?: number): Promise<DualizeResult> {
    return this.post<DualizeResult>('/api/dualize', { scene, ...(steps !== undefined && { steps }) });
  }

  private async post<T>(route: string, body: unknown): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${route}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!res.ok) throw new ServiceError(res.status, await decodeError(res));
    return (await res.json()) as T;
  }
}

async function decodeError(res: Response): Promise<ErrorBody | null> {
  try {
    const body = (await res.json()) as unknown;
    if (typeof body === 'object' && body !== null && 'error' in body) return body as ErrorBody;
  } catch {
    // non-JSON error body; status alone has to do
  }
  return null;
}

/**
 * Discards stale responses: each run() takes a ticket, and a response is
 * applied only if no later ticket has been applied yet. One runner per
 * route keeps a slow early reply from clobbering a fast later one.
 */
export class SequencedRunner {
  private issued = 0;
  private applied = 0;

  async run<T>(task: () => Promise<T>, apply: (value: T) => void, onError?: (exc: unknown) => void): Promise<void> {
    const ticket = ++this.issued;
    try {
      const value = await task();
      if (ticket > this.applied) {
        this.applied = ticket;
        apply(value);
      }
    } catch (exc) {
      if (ticket > this.applied) {
        this.applied = ticket;
        if (onError) onError(exc);
      }
    }
  }
}

/** Trailing-edge debounce for the edit-and-rerun loop. */
export function debounce<A extends unknown[]>(fn: (...args: A) => void, ms: number): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}
