/*
Built-in starting scenes. The float hexagon is the default: nudging any of
its vertices is the quickest way to watch a fully periodic table lose
every one of its 6-periodic orbits.
*/

import type { SceneDoc } from './scene.js';

const S = 0.8660254037844386; // sin 60 degrees in the float chart

export function floatHexagon(): SceneDoc {
  return {
    schema: 1,
    numeric_mode: 'float',
    table: {
      family: 'centrally_projective',
      origin: [0.0, 0.0],
      vertices: [
        [-1.0, 0.0],
        [-0.5, S],
        [0.5, S],
        [1.0, 0.0],
        [0.5, -S],
        [-0.5, -S],
      ],
    },
    chord: { t0: 0.3, t1: 0.45 },
    run: { period: 6, grid: 20 },
  };
}

export function cornerSquare(): SceneDoc {
  return {
    schema: 1,
    numeric_mode: 'exact',
    table: {
      family: 'centrally_projective',
      origin: ['0', '0'],
      vertices: [
        ['-1', '-1'],
        ['-1', '1'],
        ['1', '1'],
        ['1', '-1'],
      ],
    },
    chord: { t0: '1/2', t1: '1/2' },
    run: { period: 4 },
  };
}

export function centralTriangle(): SceneDoc {
  return {
    schema: 1,
    numeric_mode: 'exact',
    table: {
      family: 'centrally_projective',
      origin: ['1/10', '1/7'],
      vertices: [
        ['0', '0'],
        ['1', '0'],
        ['0', '1'],
      ],
    },
    chord: { t0: '1/3', t1: '2/5' },
    run: { period: 6 },
  };
}

export function mirrors(): SceneDoc {
  return {
    schema: 1,
    numeric_mode: 'exact',
    table: { family: 'converging_mirrors', gap: '1', offset: '0' },
    chord: { t0: '1/3', t1: '2/7' },
    run: { period: 4, grid: 20 },
  };
}

export function customMixed(): SceneDoc {
  return {
    schema: 1,
    numeric_mode: 'exact',
    table: {
      family: 'custom',
      vertices: [
        ['0', '0'],
        ['4', '0'],
        ['0', '4'],
      ],
      fields: [
        { type: 'apex', point: ['0', '4'] },
        { type: 'central', point: ['1', '1'] },
        { type: 'apex', point: ['4', '0'] },
      ],
    },
    chord: { t0: '1/2', t1: '1/3' },
  };
}

export const SAMPLES: { name: string; make: () => SceneDoc }[] = [
  { name: 'hexagon (float, drag me)', make: floatHexagon },
  { name: 'corner square (exact)', make: cornerSquare },
  { name: 'triangle, generic origin (exact)', make: centralTriangle },
  { name: 'converging mirrors (exact)', make: mirrors },
  { name: 'mixed fields (exact)', make: customMixed },
];
