/** Headless SVG chart builders: cartesian lines (plain and ROC-styled),
 * polar beam patterns, and bars.  Pure string construction on top of
 * d3-scale/d3-shape, so rendering is deterministic and needs no DOM. */

import { scaleLinear, type ScaleLinear } from "d3-scale";
import { line as d3line } from "d3-shape";

export interface Series {
  label: string;
  points: Array<[number, number]>;
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
  /** force axis ranges, e.g. [0, 1] for probability axes */
  xDomain?: [number, number];
  yDomain?: [number, number];
}

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#e377c2", "#7f7f7f", "#bcbd22",
];
const MARGIN = { top: 42, right: 24, bottom: 46, left: 60 };

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!Number.isFinite(lo)) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  return [lo, hi];
}

function axes(x: ScaleLinear<number, number>, y: ScaleLinear<number, number>,
              opt: Required<Pick<ChartOptions, "width" | "height">> & ChartOptions): string {
  const { width, height } = opt;
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = height - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333"/>`);
  for (const t of x.ticks(6)) {
    const px = x(t);
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 4}" stroke="#333"/>`);
    parts.push(`<text x="${px}" y="${y0 + 18}" font-size="11" text-anchor="middle">${t}</text>`);
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y1}" stroke="#eee"/>`);
  }
  for (const t of y.ticks(6)) {
    const py = y(t);
    parts.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`);
    parts.push(`<text x="${x0 - 8}" y="${py + 4}" font-size="11" text-anchor="end">${+t.toFixed(6)}</text>`);
    parts.push(`<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" stroke="#eee"/>`);
  }
  parts.push(`<text x="${(x0 + x1) / 2}" y="${height - 8}" font-size="12" text-anchor="middle">${esc(opt.xLabel)}</text>`);
  parts.push(`<text x="14" y="${(y0 + y1) / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 ${(y0 + y1) / 2})">${esc(opt.yLabel)}</text>`);
  parts.push(`<text x="${(x0 + x1) / 2}" y="22" font-size="14" text-anchor="middle" font-weight="bold">${esc(opt.title)}</text>`);
  return parts.join("\n");
}

function legend(series: Series[], width: number): string {
  const parts: string[] = [];
  series.forEach((s, i) => {
    const px = width - MARGIN.right - 150;
    const py = MARGIN.top + 14 * i;
    const color = PALETTE[i % PALETTE.length];
    parts.push(`<line x1="${px}" y1="${py}" x2="${px + 18}" y2="${py}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${px + 24}" y="${py + 4}" font-size="10">${esc(s.label)}</text>`);
  });
  return parts.join("\n");
}

function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`
  );
}

/** Multi-series cartesian line chart (also used for ROC curves). */
export function lineChart(series: Series[], opt: ChartOptions): string {
  const width = opt.width ?? 640;
  const height = opt.height ?? 420;
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const x = scaleLinear(opt.xDomain ?? extent(xs), [MARGIN.left, width - MARGIN.right]).nice();
  const y = scaleLinear(opt.yDomain ?? extent(ys), [height - MARGIN.bottom, MARGIN.top]).nice();
  const gen = d3line<[number, number]>()
    .x((p) => x(p[0]))
    .y((p) => y(p[1]))
    .defined((p) => Number.isFinite(p[0]) && Number.isFinite(p[1]));
  const body = [axes(x, y, { ...opt, width, height })];
  series.forEach((s, i) => {
    const d = gen(s.points) ?? "";
    body.push(`<path d="${d}" fill="none" stroke="${PALETTE[i % PALETTE.length]}" stroke-width="2"/>`);
  });
  body.push(legend(series, width));
  return svgDocument(width, height, body.join("\n"));
}

/** Polar magnitude plot over angles in degrees (beam patterns). */
export function polarChart(series: Series[], opt: ChartOptions): string {
  const width = opt.width ?? 520;
  const height = opt.height ?? 520;
  const cx = width / 2;
  const cy = height / 2 + 14;
  const radius = Math.min(width, height) / 2 - 56;
  const maxMag = Math.max(1e-12, ...series.flatMap((s) => s.points.map((p) => p[1])));
  const body: string[] = [];
  body.push(`<text x="${cx}" y="24" font-size="14" text-anchor="middle" font-weight="bold">${esc(opt.title)}</text>`);
  for (const frac of [0.25, 0.5, 0.75, 1.0]) {
    body.push(`<circle cx="${cx}" cy="${cy}" r="${radius * frac}" fill="none" stroke="#ddd"/>`);
  }
  for (let deg = -90; deg <= 90; deg += 30) {
    const rad = (deg * Math.PI) / 180;
    const px = cx + radius * Math.sin(rad);
    const py = cy - radius * Math.cos(rad);
    body.push(`<line x1="${cx}" y1="${cy}" x2="${px}" y2="${py}" stroke="#eee"/>`);
    body.push(`<text x="${cx + (radius + 16) * Math.sin(rad)}" y="${cy - (radius + 16) * Math.cos(rad) + 4}" font-size="10" text-anchor="middle">${deg}&#176;</text>`);
  }
  series.forEach((s, i) => {
    const pts = s.points.map(([deg, mag]) => {
      const rad = (deg * Math.PI) / 180;
      const r = (radius * mag) / maxMag;
      return `${cx + r * Math.sin(rad)},${cy - r * Math.cos(rad)}`;
    });
    body.push(`<polyline points="${pts.join(" ")}" fill="none" stroke="${PALETTE[i % PALETTE.length]}" stroke-width="1.7"/>`);
  });
  series.forEach((s, i) => {
    const py = height - 14 * (series.length - i);
    body.push(`<line x1="20" y1="${py}" x2="38" y2="${py}" stroke="${PALETTE[i % PALETTE.length]}" stroke-width="2"/>`);
    body.push(`<text x="44" y="${py + 4}" font-size="10">${esc(s.label)}</text>`);
  });
  return svgDocument(width, height, body.join("\n"));
}

/** Grouped bars, one group per x category. */
export function barChart(series: Series[], opt: ChartOptions): string {
  const width = opt.width ?? 640;
  const height = opt.height ?? 420;
  const cats = series[0]?.points.map((p) => p[0]) ?? [];
  const x = scaleLinear(extent(cats), [MARGIN.left + 30, width - MARGIN.right - 30]);
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const y = scaleLinear(opt.yDomain ?? [0, extent(ys)[1]], [height - MARGIN.bottom, MARGIN.top]).nice();
  const body = [axes(x, y, { ...opt, width, height })];
  const groupWidth = cats.length > 1 ? (x(cats[1]) - x(cats[0])) * 0.6 : 60;
  const barWidth = groupWidth / Math.max(1, series.length);
  const y0 = height - MARGIN.bottom;
  series.forEach((s, i) => {
    for (const [cat, val] of s.points) {
      const px = x(cat) - groupWidth / 2 + i * barWidth;
      body.push(
        `<rect x="${px}" y="${y(val)}" width="${barWidth * 0.92}" height="${Math.max(0, y0 - y(val))}" ` +
        `fill="${PALETTE[i % PALETTE.length]}"/>`);
    }
  });
  body.push(legend(series, width));
  return svgDocument(width, height, body.join("\n"));
}
