// Expression tree for rule bodies, emitted as rule-language text. The
// operations offered are disjunction, conjunction, sequence, zero-or-one,
// zero-or-more, one-or-more, up-to-N, and named binding.

export type ExprNode =
  | { op: "label"; label: string }
  | { op: "sequence"; children: ExprNode[] }
  | { op: "disjunction"; children: ExprNode[] }
  | { op: "conjunction"; left: ExprNode; right: ExprNode }
  | { op: "zeroOrOne"; child: ExprNode }
  | { op: "zeroOrMore"; child: ExprNode }
  | { op: "oneOrMore"; child: ExprNode }
  | { op: "upTo"; child: ExprNode; limit: number }
  | { op: "bind"; name: string; child: ExprNode };

export const label = (name: string): ExprNode => ({ op: "label", label: name });
export const seq = (...children: ExprNode[]): ExprNode => ({
  op: "sequence",
  children,
});
export const or = (...children: ExprNode[]): ExprNode => ({
  op: "disjunction",
  children,
});
export const and = (left: ExprNode, right: ExprNode): ExprNode => ({
  op: "conjunction",
  left,
  right,
});
export const opt = (child: ExprNode): ExprNode => ({ op: "zeroOrOne", child });
export const star = (child: ExprNode): ExprNode => ({ op: "zeroOrMore", child });
export const plus = (child: ExprNode): ExprNode => ({ op: "oneOrMore", child });

export function upTo(child: ExprNode, limit: number): ExprNode {
  const problem = validateUpTo(limit);
  if (problem) throw new Error(problem);
  return { op: "upTo", child, limit };
}

export const bind = (name: string, child: ExprNode): ExprNode => ({
  op: "bind",
  name,
  child,
});

export function validateUpTo(limit: unknown): string | null {
  if (typeof limit !== "number" || !Number.isInteger(limit) || limit < 1) {
    return "repetition limit must be an integer of at least 1";
  }
  return null;
}

// precedence: disjunction 0 < conjunction 1 < sequence 2 < postfix unit 3
const LEVELS: Record<ExprNode["op"], number> = {
  disjunction: 0,
  conjunction: 1,
  sequence: 2,
  zeroOrOne: 3,
  zeroOrMore: 3,
  oneOrMore: 3,
  upTo: 3,
  bind: 3,
  label: 3,
};

const POSTFIX: Partial<Record<ExprNode["op"], string>> = {
  zeroOrOne: "?",
  zeroOrMore: "*",
  oneOrMore: "+",
};

function atom(child: ExprNode): string {
  // operand of a postfix operator: bare only for single labels
  return child.op === "label" ? child.label : `(${emit(child)})`;
}

function at(node: ExprNode, level: number): string {
  const text = emit(node);
  return LEVELS[node.op] < level ? `(${text})` : text;
}

export function emit(node: ExprNode): string {
  switch (node.op) {
    case "label":
      return node.label;
    case "bind":
      return `$${node.name}=${
        LEVELS[node.child.op] === 3 ? emit(node.child) : `(${emit(node.child)})`
      }`;
    case "zeroOrOne":
    case "zeroOrMore":
    case "oneOrMore":
      return atom(node.child) + POSTFIX[node.op];
    case "upTo":
      return `${atom(node.child)}^${node.limit}`;
    case "sequence":
      return node.children.map((c) => at(c, 3)).join(" ");
    case "conjunction":
      return `${at(node.left, 2)} & ${at(node.right, 2)}`;
    case "disjunction":
      return node.children.map((c) => at(c, 1)).join("|");
  }
}

export function ruleLine(name: string, body: ExprNode): string {
  return `${name}: ${emit(body)};`;
}

export function rulesSource(lines: string[]): string {
  return lines.join("\n") + "\n";
}
