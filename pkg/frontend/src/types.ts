/** Shared data shapes for the sweep-figure pipeline. */

/** Long-format sweep table as read from sweep.csv. */
export interface SweepTable {
  columns: string[];
  /** Numeric columns, one Float64Array per column (error column excluded). */
  values: Map<string, Float64Array>;
  /** Per-row error messages ("" when the cell evaluated cleanly). */
  errors: string[];
  nRows: number;
}

/** Dense grids pivoted from the long table. */
export interface SweepGrids {
  freqHz: number[];
  sTilde: number[];
  /** field name -> row-major [iAmp * nFreq + iFreq] values. */
  fields: Map<string, Float64Array>;
  /** true where the sweep recorded a per-cell failure. */
  failed: boolean[];
}

export interface SweepMeta {
  config: unknown;
  derived: Record<string, unknown>;
  grid: { freq_hz: number[]; s_tilde: number[] };
  db_convention?: string;
  [key: string]: unknown;
}

export type Polyline = Array<[number, number]>;

/** Upstream contour payload written next to sweep.csv. */
export interface ContourFile {
  axes: { freq_hz: number[]; s_tilde: number[] };
  alpha1: Polyline[];
  alpha2: Polyline[];
}

export type PanelName =
  | "S11"
  | "S12"
  | "S21"
  | "S22"
  | "alpha1"
  | "alpha2"
  | "cuts";

export interface FigureSpec {
  csvPath: string;
  metaPath: string;
  /** Panel selection; "cuts" expands to the |S| and alpha cut panels. */
  panels: PanelName[];
  /** dB color range for the |S| heatmaps. */
  dbRange: [number, number];
  /** Paint the |S| <= 1 interval (dB <= 0) with the red highlight ramp. */
  highlightUnitInterval: boolean;
  /** Color range for the absorption maps. */
  alphaRange: [number, number];
  /** Normalized amplitudes for the line-cut panels. */
  cutValues: number[];
  outDir: string;
}

export const DEFAULT_DB_RANGE: [number, number] = [-29, 11];
export const DEFAULT_ALPHA_RANGE: [number, number] = [-14, 1];
export const DEFAULT_CUT_VALUES = [0.6, 1.5, 9];

export class SchemaError extends Error {}
