/** CSV loading with schema checks for the covertauth experiment outputs. */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export type Row = Record<string, number>;

export class CsvError extends Error {}

/** Parse a numeric CSV and verify every required column is present. */
export function loadCsv(path: string, required: string[]): Row[] {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new CsvError(`${path}: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new CsvError(`${path}: no data rows`);
  }
  const header = parsed.meta.fields ?? [];
  for (const col of required) {
    if (!header.includes(col)) {
      throw new CsvError(`${path}: missing column '${col}' (have: ${header.join(", ")})`);
    }
  }
  return rows.map((raw) => {
    const out: Row = {};
    for (const key of header) {
      out[key] = Number(raw[key]);
    }
    return out;
  });
}

/** Stable series grouping: one series per distinct key tuple, input order. */
export function groupRows(rows: Row[], keys: string[]): Map<string, Row[]> {
  const groups = new Map<string, Row[]>();
  for (const row of rows) {
    const label = keys.map((k) => `${k}=${row[k]}`).join(", ");
    const bucket = groups.get(label);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(label, [row]);
    }
  }
  return groups;
}
