// Circle layout for entity graphs, returning plain coordinates for an SVG
// renderer. Undirected edges (synonymy links) come back dashed.

import type { GraphResult } from "./types.js";

export interface PlacedNode {
  id: string;
  text: string;
  headStem: string;
  x: number;
  y: number;
}

export interface PlacedEdge {
  name: string;
  label: string;
  directed: boolean;
  dashed: boolean;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface GraphLayout {
  width: number;
  height: number;
  nodes: PlacedNode[];
  edges: PlacedEdge[];
}

export function layoutGraph(
  graph: GraphResult,
  width = 640,
  height = 420,
  margin = 70,
): GraphLayout {
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - margin;
  const count = graph.nodes.length;

  const nodes: PlacedNode[] = graph.nodes.map((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(count, 1) - Math.PI / 2;
    return {
      id: node.id,
      text: node.text,
      headStem: node.headStem,
      x: count === 1 ? cx : cx + radius * Math.cos(angle),
      y: count === 1 ? cy : cy + radius * Math.sin(angle),
    };
  });

  const byId = new Map(nodes.map((n) => [n.id, n]));
  const edges: PlacedEdge[] = graph.edges.map((edge) => {
    const source = byId.get(edge.source);
    const destination = byId.get(edge.destination);
    if (!source || !destination) {
      throw new Error(`edge ${edge.name} references an unknown node`);
    }
    return {
      name: edge.name,
      label: edge.label,
      directed: edge.directed,
      dashed: !edge.directed,
      x1: source.x,
      y1: source.y,
      x2: destination.x,
      y2: destination.y,
    };
  });

  return { width, height, nodes, edges };
}
