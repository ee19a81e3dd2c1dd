/** SVG panel builders: heatmaps with colorbars, contour overlays, line cuts. */

import { alphaColor, dbColor, LINE_COLORS, MISSING_COLOR } from "./colormap.js";
import type { Polyline, SweepGrids } from "./types.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 70, right: 110, top: 42, bottom: 52 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a < 0.01 || a >= 10000)) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

/** Linear or logarithmic axis mapping onto pixel ranges. */
class Scale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly p0: number,
    readonly p1: number,
    readonly log: boolean
  ) {}

  toPx(v: number): number {
    const t = this.log
      ? (Math.log(v) - Math.log(this.d0)) / (Math.log(this.d1) - Math.log(this.d0))
      : (v - this.d0) / (this.d1 - this.d0);
    return this.p0 + t * (this.p1 - this.p0);
  }

  ticks(n = 5): number[] {
    if (this.log) {
      const lo = Math.ceil(Math.log10(this.d0));
      const hi = Math.floor(Math.log10(this.d1));
      const out: number[] = [];
      for (let e = lo; e <= hi; e++) out.push(10 ** e);
      if (out.length < 2) {
        return [this.d0, Math.sqrt(this.d0 * this.d1), this.d1];
      }
      return out;
    }
    const out: number[] = [];
    for (let k = 0; k < n; k++) out.push(this.d0 + ((this.d1 - this.d0) * k) / (n - 1));
    return out;
  }
}

/** Midpoint edges of an axis (log midpoints when log-scaled). */
function cellEdges(axis: number[], log: boolean): number[] {
  const mid = (a: number, b: number) => (log ? Math.sqrt(a * b) : (a + b) / 2);
  const edges = [axis[0]];
  for (let k = 0; k + 1 < axis.length; k++) edges.push(mid(axis[k], axis[k + 1]));
  edges.push(axis[axis.length - 1]);
  return edges;
}

function axesSvg(x: Scale, y: Scale, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" fill="none" stroke="#333" stroke-width="1"/>`
  );
  for (const t of x.ticks()) {
    const px = x.toPx(t);
    parts.push(`<line x1="${px}" y1="${MARGIN.top + PLOT_H}" x2="${px}" y2="${MARGIN.top + PLOT_H + 5}" stroke="#333"/>`);
    parts.push(
      `<text x="${px}" y="${MARGIN.top + PLOT_H + 18}" font-size="11" text-anchor="middle">${fmtTick(t)}</text>`
    );
  }
  for (const t of y.ticks()) {
    const py = y.toPx(t);
    parts.push(`<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="#333"/>`);
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${py + 4}" font-size="11" text-anchor="end">${fmtTick(t)}</text>`
    );
  }
  parts.push(
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 14}" font-size="13" text-anchor="middle">${esc(xLabel)}</text>`
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + PLOT_H / 2}" font-size="13" text-anchor="middle" transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})">${esc(yLabel)}</text>`
  );
  return parts.join("\n");
}

function colorbarSvg(
  vmin: number,
  vmax: number,
  colorAt: (v: number) => string,
  label: string,
  marks: number[]
): string {
  const x0 = WIDTH - MARGIN.right + 28;
  const w = 16;
  const n = 64;
  const parts: string[] = [];
  for (let k = 0; k < n; k++) {
    const v = vmax - ((vmax - vmin) * k) / (n - 1);
    const y = MARGIN.top + (PLOT_H * k) / n;
    parts.push(
      `<rect x="${x0}" y="${y}" width="${w}" height="${PLOT_H / n + 0.5}" fill="${colorAt(v)}"/>`
    );
  }
  parts.push(
    `<rect x="${x0}" y="${MARGIN.top}" width="${w}" height="${PLOT_H}" fill="none" stroke="#333"/>`
  );
  for (const m of marks) {
    const t = (vmax - m) / (vmax - vmin);
    const y = MARGIN.top + PLOT_H * t;
    parts.push(`<line x1="${x0 + w}" y1="${y}" x2="${x0 + w + 4}" y2="${y}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 + w + 7}" y="${y + 4}" font-size="11" text-anchor="start">${fmtTick(m)}</text>`
    );
  }
  parts.push(
    `<text x="${x0 + w / 2}" y="${MARGIN.top - 10}" font-size="12" text-anchor="middle">${esc(label)}</text>`
  );
  return parts.join("\n");
}

export interface HeatmapOptions {
  title: string;
  values: Float64Array; // row-major [jAmp * nFreq + iFreq]
  colorAt: (v: number) => string;
  colorbarLabel: string;
  colorbarRange: [number, number];
  colorbarMarks: number[];
  contours?: Polyline[];
  failed?: boolean[];
}

/** Heatmap over (freq_hz, s_tilde) with log amplitude axis. */
export function heatmapPanel(grids: SweepGrids, opts: HeatmapOptions): string {
  const { freqHz, sTilde } = grids;
  if (freqHz.length < 2 || sTilde.length < 2) {
    throw new Error("grid too small for heatmap; use the cuts mode instead");
  }
  const x = new Scale(freqHz[0], freqHz[freqHz.length - 1], MARGIN.left, MARGIN.left + PLOT_W, false);
  const y = new Scale(sTilde[0], sTilde[sTilde.length - 1], MARGIN.top + PLOT_H, MARGIN.top, true);
  const ex = cellEdges(freqHz, false);
  const ey = cellEdges(sTilde, true);

  const cells: string[] = [];
  for (let j = 0; j < sTilde.length; j++) {
    for (let i = 0; i < freqHz.length; i++) {
      const v = opts.values[j * freqHz.length + i];
      const failedCell = opts.failed?.[j * freqHz.length + i] ?? false;
      const px0 = x.toPx(ex[i]);
      const px1 = x.toPx(ex[i + 1]);
      const py0 = y.toPx(ey[j + 1]);
      const py1 = y.toPx(ey[j]);
      const fill = failedCell ? MISSING_COLOR : opts.colorAt(v);
      cells.push(
        `<rect x="${px0.toFixed(2)}" y="${py0.toFixed(2)}" width="${(px1 - px0 + 0.4).toFixed(2)}" height="${(py1 - py0 + 0.4).toFixed(2)}" fill="${fill}"/>`
      );
    }
  }

  const overlays: string[] = [];
  for (const line of opts.contours ?? []) {
    const pts = line.map(([fx, fy]) => `${x.toPx(fx).toFixed(2)},${y.toPx(fy).toFixed(2)}`).join(" ");
    overlays.push(
      `<polyline points="${pts}" fill="none" stroke="#e02020" stroke-width="2" class="zero-contour"/>`
    );
  }

  const [vmin, vmax] = opts.colorbarRange;
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<title>${esc(opts.title)}</title>`,
    `<text x="${MARGIN.left + PLOT_W / 2}" y="24" font-size="15" text-anchor="middle">${esc(opts.title)}</text>`,
    `<g shape-rendering="crispEdges">`,
    ...cells,
    `</g>`,
    ...overlays,
    axesSvg(x, y, "frequency (Hz)", "normalized amplitude s~"),
    colorbarSvg(vmin, vmax, opts.colorAt, opts.colorbarLabel, opts.colorbarMarks),
    `</svg>`,
  ].join("\n");
}

export interface CutCurve {
  label: string;
  values: number[];
  color: string;
}

export interface CutsRow {
  heading: string;
  curves: CutCurve[];
  yLabel: string;
}

/** Stacked line-cut rows sharing the frequency axis. */
export function cutsPanel(freqHz: number[], rows: CutsRow[], title: string): string {
  const rowH = 190;
  const width = WIDTH;
  const height = MARGIN.top + rows.length * rowH + 30;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${width / 2}" y="24" font-size="15" text-anchor="middle">${esc(title)}</text>`,
  ];
  rows.forEach((row, r) => {
    const top = MARGIN.top + r * rowH + 12;
    const plotH = rowH - 58;
    const finite = row.curves.flatMap((c) => c.values.filter(Number.isFinite));
    const lo = Math.min(...finite);
    const hi = Math.max(...finite);
    const pad = (hi - lo) * 0.06 || 1;
    const x = new Scale(freqHz[0], freqHz[freqHz.length - 1], MARGIN.left, width - 40, false);
    const y = new Scale(lo - pad, hi + pad, top + plotH, top, false);
    parts.push(
      `<rect x="${MARGIN.left}" y="${top}" width="${width - 40 - MARGIN.left}" height="${plotH}" fill="none" stroke="#333"/>`
    );
    parts.push(
      `<text x="${MARGIN.left + 6}" y="${top + 16}" font-size="12">${esc(row.heading)}</text>`
    );
    for (const t of x.ticks()) {
      parts.push(
        `<text x="${x.toPx(t)}" y="${top + plotH + 16}" font-size="10" text-anchor="middle">${fmtTick(t)}</text>`
      );
    }
    for (const t of [lo, hi]) {
      parts.push(
        `<text x="${MARGIN.left - 6}" y="${y.toPx(t) + 4}" font-size="10" text-anchor="end">${fmtTick(t)}</text>`
      );
    }
    parts.push(
      `<text x="20" y="${top + plotH / 2}" font-size="11" text-anchor="middle" transform="rotate(-90 20 ${top + plotH / 2})">${esc(row.yLabel)}</text>`
    );
    for (const curve of row.curves) {
      const pts = curve.values
        .map((v, i) => (Number.isFinite(v) ? `${x.toPx(freqHz[i]).toFixed(2)},${y.toPx(v).toFixed(2)}` : null))
        .filter((p): p is string => p !== null)
        .join(" ");
      parts.push(`<polyline points="${pts}" fill="none" stroke="${curve.color}" stroke-width="1.6"/>`);
    }
    // legend
    row.curves.forEach((curve, k) => {
      const lx = MARGIN.left + 90 + k * 90;
      parts.push(`<line x1="${lx}" y1="${top + 12}" x2="${lx + 18}" y2="${top + 12}" stroke="${curve.color}" stroke-width="2"/>`);
      parts.push(`<text x="${lx + 22}" y="${top + 16}" font-size="11">${esc(curve.label)}</text>`);
    });
  });
  parts.push(
    `<text x="${width / 2}" y="${height - 8}" font-size="12" text-anchor="middle">frequency (Hz)</text>`
  );
  parts.push("</svg>");
  return parts.join("\n");
}

export { LINE_COLORS, dbColor, alphaColor };
