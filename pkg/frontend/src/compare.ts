/** Contour comparison in grid-index space ("within one cell" checks). */

import type { Polyline } from "./types.js";

/** Map a coordinate to its fractional index on a monotone axis. */
export function fractionalIndex(axis: number[], value: number): number {
  if (value <= axis[0]) return 0;
  const last = axis.length - 1;
  if (value >= axis[last]) return last;
  let lo = 0;
  let hi = last;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (axis[mid] <= value) lo = mid;
    else hi = mid;
  }
  return lo + (value - axis[lo]) / (axis[hi] - axis[lo]);
}

function toIndexSpace(line: Polyline, fx: number[], fy: number[]): Polyline {
  return line.map(([x, y]) => [fractionalIndex(fx, x), fractionalIndex(fy, y)]);
}

function pointSegmentDistance(
  [px, py]: [number, number],
  [ax, ay]: [number, number],
  [bx, by]: [number, number]
): number {
  const dx = bx - ax;
  const dy = by - ay;
  const len2 = dx * dx + dy * dy;
  let t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0;
  t = Math.min(1, Math.max(0, t));
  return Math.hypot(px - (ax + t * dx), py - (ay + t * dy));
}

function pointToPolylines(p: [number, number], lines: Polyline[]): number {
  let best = Infinity;
  for (const line of lines) {
    if (line.length === 1) {
      best = Math.min(best, Math.hypot(p[0] - line[0][0], p[1] - line[0][1]));
      continue;
    }
    for (let k = 0; k + 1 < line.length; k++) {
      best = Math.min(best, pointSegmentDistance(p, line[k], line[k + 1]));
      if (best === 0) return 0;
    }
  }
  return best;
}

/**
 * Symmetric vertex-to-polyline distance in index units: every vertex of one
 * set must lie within the returned distance of the other set.  A value at or
 * below sqrt(2) means the contours agree within one grid cell diagonal.
 */
export function contourDistance(
  a: Polyline[],
  b: Polyline[],
  freqAxis: number[],
  ampAxis: number[]
): number {
  const ai = a.map((l) => toIndexSpace(l, freqAxis, ampAxis));
  const bi = b.map((l) => toIndexSpace(l, freqAxis, ampAxis));
  let worst = 0;
  for (const line of ai) {
    for (const p of line) worst = Math.max(worst, pointToPolylines(p, bi));
  }
  for (const line of bi) {
    for (const p of line) worst = Math.max(worst, pointToPolylines(p, ai));
  }
  return worst;
}
