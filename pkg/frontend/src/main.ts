/** CLI: render one CSV (`--csv file --out figure.svg`) or a whole directory
 * of experiment outputs (`--csv dir --out dir`). */

import { statSync, writeFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { renderDirectory } from "./batch.js";
import { renderFigure } from "./figures.js";

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        csv: { type: "string" },
        out: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error("usage: main --csv <file-or-dir> --out <file-or-dir>");
    return 1;
  }
  const { csv, out } = args.values;
  if (!csv || !out) {
    console.error("usage: main --csv <file-or-dir> --out <file-or-dir>");
    return 1;
  }
  try {
    if (statSync(csv).isDirectory()) {
      const result = renderDirectory(csv, out);
      for (const f of result.rendered) console.log(`rendered ${f}`);
      for (const f of result.skipped) console.log(`skipped  ${f} (no preset)`);
      return result.rendered.length > 0 ? 0 : 1;
    }
    writeFileSync(out, renderFigure(csv));
    console.log(`rendered ${out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}
