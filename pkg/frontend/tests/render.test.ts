import { mkdtempSync, readFileSync, readdirSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { renderDirectory } from "../src/batch.js";
import { CsvError, loadCsv } from "../src/csv.js";
import { FIGURES, experimentOf, renderFigure } from "../src/figures.js";
import { main } from "../src/main.js";

const FIXTURES = join(__dirname, "..", "fixtures");

function fixtureFiles(): string[] {
  return readdirSync(FIXTURES).filter((f) => f.endsWith(".csv")).sort();
}

describe("experiment name detection", () => {
  it("strips the seed suffix", () => {
    expect(experimentOf("out/covert-sweep-eps_42.csv")).toBe("covert-sweep-eps");
    expect(experimentOf("beam-pattern_7.csv")).toBe("beam-pattern");
    expect(experimentOf("mystery_7.csv")).toBeUndefined();
  });
});

describe("csv schema checks", () => {
  it("rejects a missing column by name", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const bad = join(dir, "convergence_1.csv");
    writeFileSync(bad, "epsilon,iteration\n0.1,0\n");
    expect(() => renderFigure(bad)).toThrow(/lagrangian/);
  });

  it("rejects an empty csv", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const empty = join(dir, "convergence_1.csv");
    writeFileSync(empty, "epsilon,iteration,lagrangian,p,n,nu\n");
    expect(() => loadCsv(empty, ["epsilon"])).toThrow(CsvError);
  });
});

describe("figure rendering", () => {
  it("covers every shipped experiment with a preset", () => {
    const names = fixtureFiles().map((f) => experimentOf(f));
    expect(names).not.toContain(undefined);
    expect(new Set(names).size).toBe(Object.keys(FIGURES).length);
  });

  it.each(fixtureFiles())("renders %s to a non-empty svg", (file) => {
    const svg = renderFigure(join(FIXTURES, file));
    expect(svg.length).toBeGreaterThan(500);
    expect(svg).toContain("<svg");
    expect(svg).toMatch(/<(path|polyline|rect) /);
  });

  it("is idempotent and never touches the input csv", () => {
    const file = join(FIXTURES, fixtureFiles()[0]);
    const before = readFileSync(file);
    expect(renderFigure(file)).toBe(renderFigure(file));
    expect(readFileSync(file).equals(before)).toBe(true);
  });
});

describe("batch driver", () => {
  it("renders every shipped experiment csv with zero errors", () => {
    const out = mkdtempSync(join(tmpdir(), "figs-out-"));
    const result = renderDirectory(FIXTURES, out);
    expect(result.skipped).toEqual([]);
    expect(result.rendered.length).toBe(fixtureFiles().length);
    for (const path of result.rendered) {
      expect(readFileSync(path, "utf8").length).toBeGreaterThan(500);
    }
  });

  it("cli renders a single file", () => {
    const out = mkdtempSync(join(tmpdir(), "figs-cli-"));
    const target = join(out, "pattern.svg");
    const code = main(["--csv", join(FIXTURES, "beam-pattern_60.csv"), "--out", target]);
    expect(code).toBe(0);
    expect(readFileSync(target, "utf8")).toContain("<svg");
  });

  it("cli reports usage errors", () => {
    expect(main(["--nope"])).toBe(1);
    expect(main([])).toBe(1);
  });
});
