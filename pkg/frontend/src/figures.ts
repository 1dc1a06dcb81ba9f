/** One figure preset per experiment CSV family. */

import { groupRows, loadCsv, type Row } from "./csv.js";
import { barChart, lineChart, polarChart, type Series } from "./charts.js";

export type FigureKind = "line" | "roc" | "pattern-polar" | "bar";

export interface FigureSpec {
  kind: FigureKind;
  /** column on the horizontal axis */
  x: string;
  /** one series per (group value x value column) */
  y: string[];
  groupBy: string[];
  title: string;
  xLabel: string;
  yLabel: string;
}

export const FIGURES: Record<string, FigureSpec> = {
  "covert-sweep-eps": {
    kind: "line", x: "epsilon", y: ["rate_bps"], groupBy: ["kappa_e_db"],
    title: "Covert rate vs covertness level",
    xLabel: "covertness level epsilon", yLabel: "rate (bps/Hz)",
  },
  "covert-sweep-snr": {
    kind: "line", x: "kappa_n_db", y: ["rate_bps"], groupBy: ["epsilon"],
    title: "Covert rate vs receiver SNR",
    xLabel: "kappa_n (dB)", yLabel: "rate (bps/Hz)",
  },
  convergence: {
    kind: "line", x: "iteration", y: ["lagrangian"], groupBy: ["epsilon"],
    title: "Joint design convergence",
    xLabel: "iteration", yLabel: "Lagrangian value",
  },
  "validate-pdf": {
    kind: "line", x: "y", y: ["pdf_theory", "pdf_empirical"], groupBy: ["beam_index"],
    title: "Beam energy density: theory vs simulation",
    xLabel: "normalized energy", yLabel: "density",
  },
  "validate-roc": {
    kind: "roc", x: "pf_theory", y: ["pd_theory"], groupBy: ["kappa_n_db"],
    title: "Detector ROC: theory vs simulation",
    xLabel: "false-alarm probability", yLabel: "detection probability",
  },
  "weight-compare": {
    kind: "roc", x: "pf_target", y: ["pd_uniform_theory", "pd_optimized_theory"],
    groupBy: ["kappa_n_db"],
    title: "Uniform vs optimized weights",
    xLabel: "false-alarm probability", yLabel: "detection probability",
  },
  "worst-case": {
    kind: "bar", x: "epsilon", y: ["rate_bps"], groupBy: [],
    title: "Worst-case covert rate",
    xLabel: "covertness level epsilon", yLabel: "rate (bps/Hz)",
  },
  "sidelobe-rate": {
    kind: "line", x: "kappa_n_db", y: ["rate_ideal", "rate_sidelobe"], groupBy: ["epsilon"],
    title: "Side-lobe leakage cost in covert rate",
    xLabel: "kappa_n (dB)", yLabel: "rate (bps/Hz)",
  },
  "sidelobe-roc": {
    kind: "roc", x: "pf", y: ["pm_ideal", "pm_sidelobe"], groupBy: ["epsilon"],
    title: "Side-lobe leakage cost in miss rate",
    xLabel: "false-alarm probability", yLabel: "miss probability",
  },
  "antenna-sweep": {
    kind: "line", x: "kappa_n_db", y: ["rate_ideal", "rate_sidelobe"], groupBy: ["n_t"],
    title: "Ideal vs side-lobe rate across array sizes",
    xLabel: "kappa_n (dB)", yLabel: "rate (bps/Hz)",
  },
  "beam-pattern": {
    kind: "pattern-polar", x: "angle_deg", y: ["ideal_mag", "alice_mag", "eve_mag"],
    groupBy: [],
    title: "Transmit beam pattern with coupling fingerprints",
    xLabel: "angle (deg)", yLabel: "magnitude",
  },
};

/** Experiment name from a `<experiment>_<seed>.csv` path. */
export function experimentOf(path: string): string | undefined {
  const base = path.split("/").pop() ?? path;
  const match = /^(.+)_\d+\.csv$/.exec(base);
  const name = match ? match[1] : base.replace(/\.csv$/, "");
  return name in FIGURES ? name : undefined;
}

export function buildSeries(rows: Row[], spec: FigureSpec): Series[] {
  const groups = spec.groupBy.length > 0
    ? groupRows(rows, spec.groupBy)
    : new Map([["", rows]]);
  const series: Series[] = [];
  for (const [label, bucket] of groups) {
    for (const col of spec.y) {
      const name = spec.y.length > 1 ? (label ? `${col} (${label})` : col) : label || col;
      series.push({
        label: name,
        points: bucket.map((r) => [r[spec.x], r[col]] as [number, number]),
      });
    }
  }
  return series;
}

/** Render one CSV with its preset (or an explicit spec) to an SVG string. */
export function renderFigure(csvPath: string, spec?: FigureSpec): string {
  const name = experimentOf(csvPath);
  const figure = spec ?? (name ? FIGURES[name] : undefined);
  if (!figure) {
    throw new Error(`no figure preset for ${csvPath}`);
  }
  const rows = loadCsv(csvPath, [figure.x, ...figure.y, ...figure.groupBy]);
  const series = buildSeries(rows, figure);
  const opt = {
    title: figure.title,
    xLabel: figure.xLabel,
    yLabel: figure.yLabel,
  };
  switch (figure.kind) {
    case "pattern-polar":
      return polarChart(series, opt);
    case "bar":
      return barChart(series, opt);
    case "roc":
      return lineChart(series, { ...opt, xDomain: [0, 1], yDomain: [0, 1] });
    case "line":
      return lineChart(series, opt);
  }
}
