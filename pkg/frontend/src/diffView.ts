// Table rows for a comparison report: the overall "*" entry first, then
// per-label entries in label order.

import type { DiffReport, ScoreEntry } from "./types.js";

export interface DiffRow {
  label: string;
  matched: number;
  onlyA: number;
  onlyB: number;
  precision: string;
  recall: string;
  fMeasure: string;
}

export function formatScore(fraction: string, asFloat: number): string {
  return `${fraction} (${asFloat.toFixed(3)})`;
}

function row(label: string, entry: ScoreEntry): DiffRow {
  return {
    label,
    matched: entry.matched,
    onlyA: entry.onlyA,
    onlyB: entry.onlyB,
    precision: formatScore(entry.precision, entry.precisionFloat),
    recall: formatScore(entry.recall, entry.recallFloat),
    fMeasure: formatScore(entry.fMeasure, entry.fMeasureFloat),
  };
}

export function diffRows(report: DiffReport): DiffRow[] {
  const rows: DiffRow[] = [];
  const overall = report.labels["*"];
  if (overall) {
    rows.push(row("*", overall));
  }
  for (const label of Object.keys(report.labels).sort()) {
    if (label === "*") continue;
    const entry = report.labels[label];
    if (entry) rows.push(row(label, entry));
  }
  return rows;
}
