#!/usr/bin/env node
/** render_figures --csv sweep.csv --meta sweep_meta.json --panels all --out figs/ */

import { defaultSpec, renderFigures } from "./render.js";
import type { PanelName } from "./types.js";

const USAGE = `usage: render_figures --csv sweep.csv --meta sweep_meta.json [options]

options:
  --panels LIST   comma list of S11,S12,S21,S22,alpha1,alpha2,cuts or "all"
  --out DIR       output directory (default figs/)
  --db-min X      heatmap color range minimum in dB (default -29)
  --db-max X      heatmap color range maximum in dB (default 11)
  --cuts LIST     comma list of s_tilde cut values (default 0.6,1.5,9)
`;

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (!a.startsWith("--")) throw new Error(`unexpected argument: ${a}`);
    const key = a.slice(2);
    if (i + 1 >= argv.length) throw new Error(`missing value for --${key}`);
    out.set(key, argv[++i]);
  }
  return out;
}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err));
    console.error(USAGE);
    return 1;
  }
  const csv = args.get("csv");
  const meta = args.get("meta");
  if (!csv || !meta) {
    console.error("error: --csv and --meta are required");
    console.error(USAGE);
    return 1;
  }
  const spec = defaultSpec(csv, meta, args.get("out") ?? "figs");
  const panels = args.get("panels");
  if (panels && panels !== "all") {
    spec.panels = panels.split(",").map((p) => p.trim()) as PanelName[];
  }
  if (args.has("db-min")) spec.dbRange[0] = Number(args.get("db-min"));
  if (args.has("db-max")) spec.dbRange[1] = Number(args.get("db-max"));
  if (args.has("cuts")) spec.cutValues = args.get("cuts")!.split(",").map(Number);

  try {
    const written = renderFigures(spec);
    for (const f of written) console.log(f);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

import { fileURLToPath } from "node:url";
import { argv } from "node:process";

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(argv.slice(2)));
}
