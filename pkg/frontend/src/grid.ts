/** Pivot the long sweep table into dense (amplitude x frequency) grids. */

import { readFileSync } from "node:fs";
import { SchemaError, type SweepGrids, type SweepMeta, type SweepTable } from "./types.js";

function uniqueSorted(arr: Float64Array): number[] {
  return [...new Set(arr)].sort((a, b) => a - b);
}

/**
 * Build dense grids from the long table. Every (s_tilde, freq_hz) pair must
 * appear exactly once; values of failed cells stay NaN and are flagged.
 */
export function pivotToGrids(table: SweepTable): SweepGrids {
  const freq = table.values.get("freq_hz")!;
  const amp = table.values.get("s_tilde")!;
  const freqHz = uniqueSorted(freq);
  const sTilde = uniqueSorted(amp);
  const nF = freqHz.length;
  const nA = sTilde.length;
  if (nF * nA !== table.nRows) {
    throw new SchemaError(
      `table is not a dense grid: ${nF} x ${nA} axes but ${table.nRows} rows`
    );
  }
  const fIndex = new Map(freqHz.map((v, i) => [v, i]));
  const aIndex = new Map(sTilde.map((v, i) => [v, i]));

  const fields = new Map<string, Float64Array>();
  for (const [name, _] of table.values) {
    if (name !== "freq_hz" && name !== "s_tilde") {
      fields.set(name, new Float64Array(nA * nF).fill(NaN));
    }
  }
  const failed = new Array(nA * nF).fill(false);
  const seen = new Uint8Array(nA * nF);

  for (let r = 0; r < table.nRows; r++) {
    const i = fIndex.get(freq[r]);
    const j = aIndex.get(amp[r]);
    if (i === undefined || j === undefined) {
      throw new SchemaError(`row ${r}: coordinates not on the grid axes`);
    }
    const cell = j * nF + i;
    if (seen[cell]) throw new SchemaError(`duplicate cell at row ${r}`);
    seen[cell] = 1;
    for (const [name, col] of table.values) {
      if (name !== "freq_hz" && name !== "s_tilde") fields.get(name)![cell] = col[r];
    }
    failed[cell] = table.errors[r] !== "";
  }
  return { freqHz, sTilde, fields, failed };
}

export function readMeta(path: string): SweepMeta {
  const meta = JSON.parse(readFileSync(path, "utf-8")) as SweepMeta;
  if (!meta.grid || !Array.isArray(meta.grid.freq_hz) || !Array.isArray(meta.grid.s_tilde)) {
    throw new SchemaError("sweep_meta.json: missing grid axes");
  }
  return meta;
}

/** Row of a field at fixed amplitude index. */
export function fieldRow(grids: SweepGrids, name: string, jAmp: number): number[] {
  const f = grids.fields.get(name);
  if (!f) throw new SchemaError(`missing field: ${name}`);
  const nF = grids.freqHz.length;
  return Array.from(f.subarray(jAmp * nF, (jAmp + 1) * nF));
}

/** Index of the grid amplitude nearest to the requested cut value. */
export function nearestAmpIndex(grids: SweepGrids, sTilde: number): number {
  let best = 0;
  let bestDist = Infinity;
  grids.sTilde.forEach((v, j) => {
    const d = Math.abs(Math.log(v) - Math.log(sTilde));
    if (d < bestDist) {
      bestDist = d;
      best = j;
    }
  });
  return best;
}
