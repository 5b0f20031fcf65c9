// Turn tag spans plus legends into a flat list of styled text segments
// that tile the document exactly. Words carrying several labels become a
// single segment listing all of them.

import type { Legend, TagSpan } from "./types.js";

export interface Segment {
  start: number;
  end: number;
  text: string;
  labels: string[];
  color: string | null;
  bold: boolean;
  italic: boolean;
}

export function highlightSegments(
  text: string,
  tags: TagSpan[],
  legends: Record<string, Legend> = {},
): Segment[] {
  const byStart = new Map<number, { end: number; labels: string[] }>();
  for (const tag of [...tags].sort((a, b) => a.index - b.index)) {
    const existing = byStart.get(tag.index);
    if (existing) {
      if (existing.end !== tag.index + tag.length) {
        throw new Error(`overlapping tags at offset ${tag.index}`);
      }
      existing.labels.push(tag.label);
      continue;
    }
    byStart.set(tag.index, { end: tag.index + tag.length, labels: [tag.label] });
  }

  const segments: Segment[] = [];
  let pos = 0;
  const plain = (start: number, end: number) => ({
    start,
    end,
    text: text.slice(start, end),
    labels: [],
    color: null,
    bold: false,
    italic: false,
  });
  for (const [start, span] of [...byStart.entries()].sort((a, b) => a[0] - b[0])) {
    if (start < pos) {
      throw new Error(`overlapping tags at offset ${start}`);
    }
    if (start > pos) {
      segments.push(plain(pos, start));
    }
    const legend = span.labels.map((l) => legends[l]).find((l) => l !== undefined);
    segments.push({
      start,
      end: span.end,
      text: text.slice(start, span.end),
      labels: span.labels,
      color: legend?.color ?? null,
      bold: legend?.fontFlags?.includes("bold") ?? false,
      italic: legend?.fontFlags?.includes("italic") ?? false,
    });
    pos = span.end;
  }
  if (pos < text.length) {
    segments.push(plain(pos, text.length));
  }
  return segments;
}

export function legendsFromTagTypes(
  tagTypes: { label: string; legend?: Legend }[],
): Record<string, Legend> {
  const out: Record<string, Legend> = {};
  for (const tag of tagTypes) {
    if (tag.legend) out[tag.label] = tag.legend;
  }
  return out;
}
