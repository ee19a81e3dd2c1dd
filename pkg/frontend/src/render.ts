/** Orchestrates panel rendering from sweep.csv + sweep_meta.json. */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { alphaColor, dbColor } from "./colormap.js";
import { marchingSquares } from "./contour.js";
import { readSweepCsv } from "./csv.js";
import { fieldRow, nearestAmpIndex, pivotToGrids, readMeta } from "./grid.js";
import { cutsPanel, heatmapPanel, type CutsRow } from "./svg.js";
import { LINE_COLORS } from "./colormap.js";
import {
  DEFAULT_ALPHA_RANGE,
  DEFAULT_CUT_VALUES,
  DEFAULT_DB_RANGE,
  SchemaError,
  type FigureSpec,
  type PanelName,
  type SweepGrids,
} from "./types.js";

const S_PANELS: ReadonlyArray<[PanelName, string]> = [
  ["S11", "abs_db_s11"],
  ["S12", "abs_db_s12"],
  ["S21", "abs_db_s21"],
  ["S22", "abs_db_s22"],
];

export function defaultSpec(csvPath: string, metaPath: string, outDir: string): FigureSpec {
  return {
    csvPath,
    metaPath,
    panels: ["S11", "S12", "S21", "S22", "alpha1", "alpha2", "cuts"],
    dbRange: [...DEFAULT_DB_RANGE] as [number, number],
    highlightUnitInterval: true,
    alphaRange: [...DEFAULT_ALPHA_RANGE] as [number, number],
    cutValues: [...DEFAULT_CUT_VALUES],
    outDir,
  };
}

function validateSpec(spec: FigureSpec): void {
  if (!(spec.dbRange[0] < spec.dbRange[1])) {
    throw new SchemaError(`dbRange min must be < max, got [${spec.dbRange}]`);
  }
  if (!(spec.alphaRange[0] < spec.alphaRange[1])) {
    throw new SchemaError(`alphaRange min must be < max, got [${spec.alphaRange}]`);
  }
}

/** alpha_j = 0 contours re-extracted from the CSV grids (not the upstream file). */
export function extractAlphaContours(grids: SweepGrids, port: 1 | 2) {
  const field = grids.fields.get(`alpha${port}`);
  if (!field) throw new SchemaError(`missing field: alpha${port}`);
  return marchingSquares(grids.freqHz, grids.sTilde, field, 0);
}

function renderSPanel(grids: SweepGrids, name: PanelName, column: string, spec: FigureSpec): string {
  const field = grids.fields.get(column);
  if (!field) throw new SchemaError(`missing field: ${column}`);
  const [vmin, vmax] = spec.dbRange;
  return heatmapPanel(grids, {
    title: `|${name}| (dB)`,
    values: field,
    colorAt: (v) => dbColor(v, vmin, vmax, spec.highlightUnitInterval),
    colorbarLabel: "dB",
    colorbarRange: spec.dbRange,
    colorbarMarks: [vmin, 0, vmax],
    failed: grids.failed,
  });
}

function renderAlphaPanel(grids: SweepGrids, port: 1 | 2, spec: FigureSpec): string {
  const field = grids.fields.get(`alpha${port}`);
  if (!field) throw new SchemaError(`missing field: alpha${port}`);
  const [vmin, vmax] = spec.alphaRange;
  return heatmapPanel(grids, {
    title: `alpha_${port} with zero contour`,
    values: field,
    colorAt: (v) => alphaColor(v, vmin, vmax),
    colorbarLabel: "alpha",
    colorbarRange: spec.alphaRange,
    colorbarMarks: [vmin, 0, vmax],
    contours: extractAlphaContours(grids, port),
    failed: grids.failed,
  });
}

function renderCutPanels(grids: SweepGrids, spec: FigureSpec): Map<string, string> {
  const sRows: CutsRow[] = [];
  const aRows: CutsRow[] = [];
  for (const cut of spec.cutValues) {
    const j = nearestAmpIndex(grids, cut);
    const heading = `s~ = ${grids.sTilde[j].toPrecision(3)}`;
    sRows.push({
      heading,
      yLabel: "|S_ij|",
      curves: S_PANELS.map(([label, col], k) => ({
        label: `|${label}|`,
        color: LINE_COLORS[k],
        values: fieldRow(grids, col, j).map((db) => 10 ** (db / 20)),
      })),
    });
    aRows.push({
      heading,
      yLabel: "alpha_j",
      curves: [1, 2].map((port, k) => ({
        label: `alpha_${port}`,
        color: LINE_COLORS[k],
        values: fieldRow(grids, `alpha${port}`, j),
      })),
    });
  }
  return new Map([
    ["cuts_s.svg", cutsPanel(grids.freqHz, sRows, "|S_ij| line cuts at fixed amplitude")],
    ["cuts_alpha.svg", cutsPanel(grids.freqHz, aRows, "absorption line cuts at fixed amplitude")],
  ]);
}

/** Render all requested panels; returns the written file paths. */
export function renderFigures(spec: FigureSpec): string[] {
  validateSpec(spec);
  const table = readSweepCsv(spec.csvPath);
  const meta = readMeta(spec.metaPath);
  const grids = pivotToGrids(table);

  // Axis sanity: the CSV grid must match the meta echo.
  const metaAxes = meta.grid;
  if (
    metaAxes.freq_hz.length !== grids.freqHz.length ||
    metaAxes.s_tilde.length !== grids.sTilde.length
  ) {
    throw new SchemaError("sweep_meta.json grid axes do not match sweep.csv");
  }

  const files = new Map<string, string>();
  for (const panel of spec.panels) {
    if (panel === "cuts") {
      for (const [name, svg] of renderCutPanels(grids, spec)) files.set(name, svg);
      continue;
    }
    const sPanel = S_PANELS.find(([n]) => n === panel);
    if (sPanel) {
      files.set(`${panel.toLowerCase()}.svg`, renderSPanel(grids, panel, sPanel[1], spec));
    } else if (panel === "alpha1" || panel === "alpha2") {
      const port = panel === "alpha1" ? 1 : 2;
      files.set(`${panel}.svg`, renderAlphaPanel(grids, port as 1 | 2, spec));
    } else {
      throw new SchemaError(`unknown panel: ${panel}`);
    }
  }

  mkdirSync(spec.outDir, { recursive: true });
  const written: string[] = [];
  for (const [name, svg] of files) {
    const path = join(spec.outDir, name);
    writeFileSync(path, svg, "utf-8");
    written.push(path);
  }
  return written.sort();
}
