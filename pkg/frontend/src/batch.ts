/** Walk a directory of experiment CSVs and render every known one. */

import { mkdirSync, readdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { experimentOf, renderFigure } from "./figures.js";

export interface BatchResult {
  rendered: string[];
  skipped: string[];
}

export function renderDirectory(csvDir: string, outDir: string): BatchResult {
  mkdirSync(outDir, { recursive: true });
  const rendered: string[] = [];
  const skipped: string[] = [];
  for (const file of readdirSync(csvDir).sort()) {
    if (!file.endsWith(".csv")) continue;
    const src = join(csvDir, file);
    if (!experimentOf(src)) {
      skipped.push(src);
      continue;
    }
    const svg = renderFigure(src);
    const out = join(outDir, file.replace(/\.csv$/, ".svg"));
    writeFileSync(out, svg);
    rendered.push(out);
  }
  return { rendered, skipped };
}
