// Flatten a match tree into outline rows for a nested list view.

import type { MatchTreeNode } from "./types.js";

export interface OutlineRow {
  depth: number;
  kind: string;
  title: string;
  text: string;
  index: number;
  length: number;
  binding: string | null;
}

function nodeTitle(node: MatchTreeNode): string {
  const head = node.label ?? node.rule ?? node.kind;
  return node.binding ? `$${node.binding} = ${head}` : head;
}

export function outline(node: MatchTreeNode, text: string): OutlineRow[] {
  const rows: OutlineRow[] = [];
  const walk = (n: MatchTreeNode, depth: number) => {
    rows.push({
      depth,
      kind: n.kind,
      title: nodeTitle(n),
      text: text.slice(n.index, n.index + n.length),
      index: n.index,
      length: n.length,
      binding: n.binding ?? null,
    });
    for (const child of n.children ?? []) {
      walk(child, depth + 1);
    }
  };
  walk(node, 0);
  return rows;
}
