/** Zero-contour extraction by marching squares with edge interpolation. */

import type { Polyline } from "./types.js";

interface Segment {
  a: string;
  b: string;
}

/**
 * Extract level contours of values[j][i] sampled at (xs[i], ys[j]).
 * Returns polylines in data coordinates; open curves end on the grid
 * boundary, closed loops repeat their first vertex.  Cells containing NaN
 * corners are skipped.  Returns [] when the field has uniform sign.
 */
export function marchingSquares(
  xs: number[],
  ys: number[],
  values: Float64Array,
  level = 0
): Polyline[] {
  const nF = xs.length;
  const nA = ys.length;
  const v = (j: number, i: number) => values[j * nF + i] - level;

  // Crossing-point registry keyed by the grid edge, so shared endpoints of
  // adjacent cells are exact.
  const points = new Map<string, [number, number]>();
  const adjacency = new Map<string, string[]>();
  const segments: Segment[] = [];

  function edgeKey(j0: number, i0: number, j1: number, i1: number): string {
    return j0 < j1 || (j0 === j1 && i0 <= i1)
      ? `${j0},${i0}-${j1},${i1}`
      : `${j1},${i1}-${j0},${i0}`;
  }

  function crossing(j0: number, i0: number, j1: number, i1: number): string {
    const key = edgeKey(j0, i0, j1, i1);
    if (!points.has(key)) {
      const va = v(j0, i0);
      const vb = v(j1, i1);
      const t = va / (va - vb);
      points.set(key, [
        xs[i0] + t * (xs[i1] - xs[i0]),
        ys[j0] + t * (ys[j1] - ys[j0]),
      ]);
    }
    return key;
  }

  function addSegment(e1: [number, number, number, number], e2: [number, number, number, number]) {
    const a = crossing(...e1);
    const b = crossing(...e2);
    segments.push({ a, b });
    if (!adjacency.has(a)) adjacency.set(a, []);
    if (!adjacency.has(b)) adjacency.set(b, []);
    adjacency.get(a)!.push(b);
    adjacency.get(b)!.push(a);
  }

  for (let j = 0; j + 1 < nA; j++) {
    for (let i = 0; i + 1 < nF; i++) {
      const c0 = v(j, i);
      const c1 = v(j, i + 1);
      const c2 = v(j + 1, i + 1);
      const c3 = v(j + 1, i);
      if ([c0, c1, c2, c3].some((x) => !Number.isFinite(x))) continue;
      let code = 0;
      if (c0 <= 0) code |= 1;
      if (c1 <= 0) code |= 2;
      if (c2 <= 0) code |= 4;
      if (c3 <= 0) code |= 8;
      if (code === 0 || code === 15) continue;

      const bottom: [number, number, number, number] = [j, i, j, i + 1];
      const right: [number, number, number, number] = [j, i + 1, j + 1, i + 1];
      const top: [number, number, number, number] = [j + 1, i + 1, j + 1, i];
      const left: [number, number, number, number] = [j + 1, i, j, i];

      switch (code) {
        case 1:
        case 14:
          addSegment(left, bottom);
          break;
        case 2:
        case 13:
          addSegment(bottom, right);
          break;
        case 3:
        case 12:
          addSegment(left, right);
          break;
        case 4:
        case 11:
          addSegment(right, top);
          break;
        case 6:
        case 9:
          addSegment(bottom, top);
          break;
        case 7:
        case 8:
          addSegment(top, left);
          break;
        case 5: {
          if ((c0 + c1 + c2 + c3) / 4 <= 0) {
            addSegment(left, top);
            addSegment(bottom, right);
          } else {
            addSegment(left, bottom);
            addSegment(right, top);
          }
          break;
        }
        case 10: {
          if ((c0 + c1 + c2 + c3) / 4 <= 0) {
            addSegment(bottom, left);
            addSegment(top, right);
          } else {
            addSegment(bottom, right);
            addSegment(top, left);
          }
          break;
        }
      }
    }
  }

  if (segments.length === 0) return [];

  // Chain the segment graph into polylines: open paths first, then loops.
  const visited = new Set<string>();
  const polylines: Polyline[] = [];

  function walk(start: string): string[] {
    const path = [start];
    visited.add(start);
    let current = start;
    for (;;) {
      const next = (adjacency.get(current) ?? []).filter((n) => !visited.has(n));
      if (next.length === 0) {
        if (path.length > 2 && (adjacency.get(current) ?? []).includes(start)) {
          path.push(start);
        }
        return path;
      }
      current = next[0];
      visited.add(current);
      path.push(current);
    }
  }

  const keys = [...adjacency.keys()].sort();
  for (const key of keys) {
    if (!visited.has(key) && adjacency.get(key)!.length === 1) {
      polylines.push(walk(key).map((k) => points.get(k)!));
    }
  }
  for (const key of keys) {
    if (!visited.has(key)) {
      polylines.push(walk(key).map((k) => points.get(k)!));
    }
  }
  return polylines;
}
