export { parseSweepCsv, readSweepCsv, REQUIRED_COLUMNS } from "./csv.js";
export { pivotToGrids, readMeta, fieldRow, nearestAmpIndex } from "./grid.js";
export { marchingSquares } from "./contour.js";
export { contourDistance, fractionalIndex } from "./compare.js";
export { dbColor, alphaColor, MISSING_COLOR } from "./colormap.js";
export { heatmapPanel, cutsPanel } from "./svg.js";
export { renderFigures, defaultSpec, extractAlphaContours } from "./render.js";
export * from "./types.js";
