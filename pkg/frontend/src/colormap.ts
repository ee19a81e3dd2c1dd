/** Color ramps: perceptually uniform base plus the red attenuation band. */

export type Rgb = [number, number, number];

/** Viridis anchor colors (perceptually uniform, colorblind-safe). */
const VIRIDIS: Rgb[] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

/** Red ramp for the |S| <= 1 (attenuating) interval, dark to light. */
const RED_BAND: Rgb[] = [
  [60, 5, 5],
  [140, 20, 15],
  [205, 60, 40],
  [245, 130, 100],
  [255, 200, 180],
];

function lerpRamp(ramp: Rgb[], t: number): Rgb {
  const x = Math.min(1, Math.max(0, t)) * (ramp.length - 1);
  const k = Math.min(ramp.length - 2, Math.floor(x));
  const f = x - k;
  return [0, 1, 2].map((c) =>
    Math.round(ramp[k][c] + f * (ramp[k + 1][c] - ramp[k][c]))
  ) as Rgb;
}

export function rgbCss([r, g, b]: Rgb): string {
  return `rgb(${r},${g},${b})`;
}

/** Neutral fill for failed (NaN) cells. */
export const MISSING_COLOR = "rgb(235,235,235)";

/**
 * Color for a dB-scaled |S| value.  With the highlight band enabled, values
 * at or below 0 dB (|S| <= 1) use the red ramp over [vmin, 0] and values
 * above 0 dB use the viridis ramp over (0, vmax]; otherwise a single viridis
 * ramp spans [vmin, vmax].
 */
export function dbColor(
  value: number,
  vmin: number,
  vmax: number,
  highlightUnitInterval: boolean
): string {
  if (Number.isNaN(value)) return MISSING_COLOR;
  const v = Math.min(vmax, Math.max(vmin, value));
  if (highlightUnitInterval && v <= 0) {
    return rgbCss(lerpRamp(RED_BAND, (v - vmin) / (0 - vmin)));
  }
  if (highlightUnitInterval) {
    return rgbCss(lerpRamp(VIRIDIS, v / vmax));
  }
  return rgbCss(lerpRamp(VIRIDIS, (v - vmin) / (vmax - vmin)));
}

/** Color for an absorption value on a plain viridis ramp over [vmin, vmax]. */
export function alphaColor(value: number, vmin: number, vmax: number): string {
  if (Number.isNaN(value)) return MISSING_COLOR;
  const v = Math.min(vmax, Math.max(vmin, value));
  return rgbCss(lerpRamp(VIRIDIS, (v - vmin) / (vmax - vmin)));
}

/** Distinguishable line colors for the cut panels. */
export const LINE_COLORS = ["#4053d3", "#ddb310", "#b51d14", "#00beff"];
