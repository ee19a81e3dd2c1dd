/** Synthetic sweep.csv/meta builders mirroring the producer's format. */

import { REQUIRED_COLUMNS } from "../src/csv.js";

export const ALL_COLUMNS = [...REQUIRED_COLUMNS, "sync_capable", "error"];

export interface SyntheticCell {
  alpha1?: (f: number, s: number) => number;
  alpha2?: (f: number, s: number) => number;
  db?: (f: number, s: number) => number;
  error?: (f: number, s: number) => string;
}

export function makeSweepCsv(
  freqs: number[],
  amps: number[],
  cell: SyntheticCell = {}
): string {
  const a1 = cell.alpha1 ?? (() => -1);
  const a2 = cell.alpha2 ?? (() => 0.5);
  const db = cell.db ?? (() => -3);
  const err = cell.error ?? (() => "");
  const lines = ["# abs_db = 20*log10(|S_ij|) (amplitude ratio)", ALL_COLUMNS.join(",")];
  for (const s of amps) {
    for (const f of freqs) {
      const d = db(f, s);
      const mag = 10 ** (d / 20);
      const row = [
        f,
        s,
        mag,
        0,
        mag,
        0,
        mag,
        0,
        mag,
        0,
        d,
        d,
        d,
        d,
        a1(f, s),
        a2(f, s),
        1,
        1,
        "true",
        err(f, s),
      ];
      lines.push(row.join(","));
    }
  }
  return lines.join("\n") + "\n";
}

export function makeMeta(freqs: number[], amps: number[]): string {
  return JSON.stringify({
    version: "0.1.0",
    config: {},
    derived: { g: 1.0 },
    grid: { freq_hz: freqs, s_tilde: amps },
    db_convention: "abs_db = 20*log10(|S_ij|) (amplitude ratio)",
  });
}

export function linspace(a: number, b: number, n: number): number[] {
  return Array.from({ length: n }, (_, k) => a + ((b - a) * k) / (n - 1));
}

export function logspace(a: number, b: number, n: number): number[] {
  return linspace(Math.log10(a), Math.log10(b), n).map((x) => 10 ** x);
}
