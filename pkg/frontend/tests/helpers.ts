// Shared plumbing for the suite: fixture loading, a spawned service for the
// live tests, and the numeric audit that backs the fixture contract.

import { spawn } from 'node:child_process';
import { readdirSync, readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

const here = dirname(fileURLToPath(import.meta.url));

export const fixtureDir = join(here, 'fixtures');
export const sceneDir = join(here, '..', '..', 'scenes');

export interface Fixture {
  name: string;
  method: 'GET' | 'POST';
  route: string;
  status: number;
  request?: unknown;
  raw_request?: string;
  response: any;
}

export function loadFixture(name: string): Fixture {
  return JSON.parse(readFileSync(join(fixtureDir, `${name}.json`), 'utf8')) as Fixture;
}

export function allFixtures(): Fixture[] {
  return readdirSync(fixtureDir)
    .filter((f) => f.endsWith('.json'))
    .sort()
    .map((f) => JSON.parse(readFileSync(join(fixtureDir, f), 'utf8')) as Fixture);
}

// Round-trip through JSON text. Collapses -0 to 0 the same way the fixture
// files did when they were written, so live bodies compare equal under the
// Object.is semantics toEqual applies to numbers. Rendering is unaffected:
// String(-0) is "0".
export function jsonClone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

// ---------------------------------------------------------------------------
// live service
// ---------------------------------------------------------------------------

export interface LiveService {
  baseUrl: string;
  stop: () => Promise<void>;
}

/** Spawn the service on an ephemeral port and wait for its address line. */
export function startService(): Promise<LiveService> {
  return new Promise((resolve, reject) => {
    const child = spawn('python3', ['-m', 'pblab.cli', 'serve', '--port', '0'], {
      stdio: ['ignore', 'pipe', 'pipe'],
    });
    let buffer = '';
    let settled = false;
    const timer = setTimeout(() => {
      if (!settled) {
        settled = true;
        child.kill('SIGKILL');
        reject(new Error('service did not announce a port in time'));
      }
    }, 20000);
    child.stdout.on('data', (chunk: Buffer) => {
      buffer += chunk.toString();
      const m = buffer.match(/listening on (http:\/\/[\d.]+:\d+)/);
      if (m && !settled) {
        settled = true;
        clearTimeout(timer);
        resolve({
          baseUrl: m[1],
          stop: () =>
            new Promise<void>((done) => {
              child.once('exit', () => done());
              child.kill('SIGINT');
              setTimeout(() => child.kill('SIGKILL'), 3000).unref();
            }),
        });
      }
    });
    child.on('error', (exc) => {
      if (!settled) {
        settled = true;
        clearTimeout(timer);
        reject(exc);
      }
    });
    child.on('exit', (code) => {
      if (!settled) {
        settled = true;
        clearTimeout(timer);
        reject(new Error(`service exited early with code ${code}`));
      }
    });
  });
}

// ---------------------------------------------------------------------------
// numeric audit
// ---------------------------------------------------------------------------

/** Every scalar leaf of a response, as the text the panel would print. */
export function responseTexts(node: unknown, out: Set<string> = new Set()): Set<string> {
  if (typeof node === 'number') out.add(String(node));
  else if (typeof node === 'string') out.add(node);
  else if (Array.isArray(node)) for (const item of node) responseTexts(item, out);
  else if (node !== null && typeof node === 'object') {
    for (const item of Object.values(node)) responseTexts(item, out);
  }
  return out;
}

// longest alternatives first, so "3-1/2*sqrt(3)" is one token, not three
const NUMBER_TOKEN =
  /-?\d+(?:\/\d+)?(?:[+-]\d+(?:\/\d+)?)?\*sqrt\(3\)|-?\d+\.\d+(?:e[+-]?\d+)?|-?\d+e[+-]?\d+|-?\d+(?:\/\d+)?/g;

/**
 * Numeric tokens of rendered text that do not occur in the response.
 * Point labels like M3/Q0/N12 are positional, not measurements, and are
 * stripped before matching; everything else must be response-sourced.
 */
export function unsourcedNumbers(lines: string[], response: unknown, alsoAllowed: string[] = []): string[] {
  const allowed = responseTexts(response);
  for (const extra of alsoAllowed) allowed.add(extra);
  const offenders: string[] = [];
  for (const line of lines) {
    const stripped = line.replace(/\b[MQN]\d+\b/g, ' ');
    for (const token of stripped.match(NUMBER_TOKEN) ?? []) {
      if (!allowed.has(token)) offenders.push(`${token} in "${line}"`);
    }
  }
  return offenders;
}
