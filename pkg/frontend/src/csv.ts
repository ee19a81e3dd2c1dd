/** Strict reader for the sweep.csv long format. */

import { readFileSync } from "node:fs";
import { SchemaError, type SweepTable } from "./types.js";

/** Columns every sweep.csv must provide (the error column is text). */
export const REQUIRED_COLUMNS = [
  "freq_hz",
  "s_tilde",
  "re_s11",
  "im_s11",
  "re_s12",
  "im_s12",
  "re_s21",
  "im_s21",
  "re_s22",
  "im_s22",
  "abs_db_s11",
  "abs_db_s12",
  "abs_db_s21",
  "abs_db_s22",
  "alpha1",
  "alpha2",
  "n_roots_1",
  "n_roots_2",
];

function parseFloatStrict(token: string, column: string, line: number): number {
  if (token === "nan" || token === "") return NaN;
  if (token === "inf") return Infinity;
  if (token === "-inf") return -Infinity;
  if (token === "true") return 1;
  if (token === "false") return 0;
  const v = Number(token);
  if (Number.isNaN(v)) {
    throw new SchemaError(
      `line ${line}: column ${column}: cannot parse number from ${JSON.stringify(token)}`
    );
  }
  return v;
}

/**
 * Parse sweep.csv text. Lines starting with '#' are comments; the first
 * non-comment line is the header. Fields never contain quoted separators
 * except the trailing error column, which is unescaped by the csv writer's
 * minimal quoting.
 */
export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  let headerIdx = 0;
  while (headerIdx < lines.length && lines[headerIdx].startsWith("#")) headerIdx++;
  if (headerIdx >= lines.length) throw new SchemaError("empty csv: no header row");
  const columns = lines[headerIdx].split(",");

  const missing = REQUIRED_COLUMNS.filter((c) => !columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`missing required columns: ${missing.join(", ")}`);
  }
  const errorIdx = columns.indexOf("error");

  const dataLines = lines.slice(headerIdx + 1);
  const nRows = dataLines.length;
  const values = new Map<string, Float64Array>();
  for (const c of columns) {
    if (c !== "error") values.set(c, new Float64Array(nRows));
  }
  const errors: string[] = new Array(nRows).fill("");

  for (let r = 0; r < nRows; r++) {
    const fields = splitCsvLine(dataLines[r]);
    if (fields.length !== columns.length) {
      throw new SchemaError(
        `line ${headerIdx + 2 + r}: expected ${columns.length} fields, got ${fields.length}`
      );
    }
    for (let k = 0; k < columns.length; k++) {
      if (k === errorIdx) {
        errors[r] = fields[k];
      } else {
        values.get(columns[k])![r] = parseFloatStrict(
          fields[k],
          columns[k],
          headerIdx + 2 + r
        );
      }
    }
  }
  return { columns, values, errors, nRows };
}

/** Minimal CSV field splitter honoring double-quoted fields. */
export function splitCsvLine(line: string): string[] {
  const out: string[] = [];
  let cur = "";
  let inQuotes = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (inQuotes) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          cur += '"';
          i++;
        } else {
          inQuotes = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch === '"') {
      inQuotes = true;
    } else if (ch === ",") {
      out.push(cur);
      cur = "";
    } else {
      cur += ch;
    }
  }
  out.push(cur);
  return out;
}

export function readSweepCsv(path: string): SweepTable {
  return parseSweepCsv(readFileSync(path, "utf-8"));
}
