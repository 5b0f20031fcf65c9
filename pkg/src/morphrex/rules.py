"""The tag-sequence rule language.

Rules are written as an ordered list of ``name: expression;`` definitions
forming an acyclic local grammar: an expression may reference tag-type labels
or rules defined EARLIER in the list, and references are expanded in place.

Expression syntax, loosest to tightest binding:

    f | g        either side (leftmost alternative preferred on ties)
    f & g        both sides over the identical span (tree from the left)
    f g          concatenation
    f*  f+  f?   repetitions
    f^3          up to three repetitions, including zero
    $name=f      binds f so relations and actions can address its matches
    (f)          grouping
    NONE         reserved label: words no tag formula matched

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import RuleParseError
from .formula import NONE_LABEL


@dataclass(eq=False)
class FormulaRef:
    label: str
    binding: str | None = None


@dataclass(eq=False)
class RuleUse:
    name: str
    target: "MreNode"
    binding: str | None = None


@dataclass(eq=False)
class Concat:
    children: list
    binding: str | None = None


@dataclass(eq=False)
class Star:
    child: "MreNode"
    binding: str | None = None


@dataclass(eq=False)
class Plus:
    child: "MreNode"
    binding: str | None = None


@dataclass(eq=False)
class Opt:
    child: "MreNode"
    binding: str | None = None


@dataclass(eq=False)
class UpTo:
    child: "MreNode"
    limit: int
    binding: str | None = None


@dataclass(eq=False)
class And:
    left: "MreNode"
    right: "MreNode"
    binding: str | None = None


@dataclass(eq=False)
class Or:
    children: list
    binding: str | None = None


MreNode = FormulaRef | RuleUse | Concat | Star | Plus | Opt | UpTo | And | Or


@dataclass
class Rule:
    name: str
    ast: MreNode


@dataclass
class RuleSet:
    rules: list[Rule]
    source: str
    by_name: dict[str, Rule] = field(default_factory=dict)

    def __post_init__(self):
        if not self.by_name:
            self.by_name = {r.name: r for r in self.rules}


# --- tokenizer ---

_TOKEN_SPEC = [
    ("INT", r"\d+"),
    ("IDENT", r"[^\W\d]\w*"),
    ("OP", r"[()|&*+?^$=:;]"),
    ("COMMENT", r"#[^\n]*"),
    ("WS", r"\s+"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC), re.UNICODE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # INT, IDENT, or the operator character itself
    text: str
    line: int
    col: int


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            col = pos - line_start + 1
            raise RuleParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        col = m.start() - line_start + 1
        if kind == "OP":
            toks.append(_Tok(text, text, line, col))
        elif kind in ("INT", "IDENT"):
            toks.append(_Tok(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + text.rindex("\n") + 1
        pos = m.end()
    return toks


# --- parser ---


class _Parser:
    def __init__(self, toks: list[_Tok], labels: set[str], defined: dict[str, Rule], all_names: set[str]):
        self.toks = toks
        self.pos = 0
        self.labels = labels
        self.defined = defined
        self.all_names = all_names

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok | None:
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def fail(self, message: str, tok: _Tok | None):
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 1)
            raise RuleParseError(message + " at end of rule", last.line, last.col)
        raise RuleParseError(message, tok.line, tok.col)

    def parse_expr(self) -> MreNode:
        alts = [self.parse_and()]
        while (tok := self.peek()) and tok.kind == "|":
            self.next()
            alts.append(self.parse_and())
        return alts[0] if len(alts) == 1 else Or(alts)

    def parse_and(self) -> MreNode:
        node = self.parse_concat()
        while (tok := self.peek()) and tok.kind == "&":
            self.next()
            node = And(node, self.parse_concat())
        return node

    def parse_concat(self) -> MreNode:
        items = [self.parse_element()]
        while (tok := self.peek()) and (tok.kind in ("IDENT", "(", "$")):
            items.append(self.parse_element())
        return items[0] if len(items) == 1 else Concat(items)

    def parse_element(self) -> MreNode:
        binding = None
        tok = self.peek()
        if tok and tok.kind == "$":
            self.next()
            name = self.next()
            if name is None or name.kind != "IDENT":
                self.fail("expected a binding name after '$'", name or tok)
            eq = self.next()
            if eq is None or eq.kind != "=":
                self.fail("expected '=' after binding name", eq or name)
            binding = name.text
        node = self.parse_postfix()
        if binding is not None:
            node.binding = binding
        return node

    def parse_postfix(self) -> MreNode:
        node = self.parse_primary()
        while (tok := self.peek()) and tok.kind in ("*", "+", "?", "^"):
            self.next()
            if tok.kind == "*":
                node = Star(node)
            elif tok.kind == "+":
                node = Plus(node)
            elif tok.kind == "?":
                node = Opt(node)
            else:
                count = self.next()
                if count is None or count.kind != "INT":
                    self.fail("expected a repetition count after '^'", count or tok)
                limit = int(count.text)
                if limit < 1:
                    self.fail("repetition count must be at least 1", count)
                node = UpTo(node, limit)
        return node

    def parse_primary(self) -> MreNode:
        tok = self.next()
        if tok is None:
            self.fail("expected a label or '('", tok)
        if tok.kind == "(":
            node = self.parse_expr()
            closing = self.next()
            if closing is None or closing.kind != ")":
                self.fail("unbalanced parenthesis", closing or tok)
            return node
        if tok.kind == "IDENT":
            name = tok.text
            if name == NONE_LABEL or name in self.labels:
                return FormulaRef(name)
            if name in self.defined:
                return RuleUse(name, self.defined[name].ast)
            if name in self.all_names:
                self.fail(f"rule {name!r} referenced before its definition", tok)
            self.fail(f"unknown label {name!r}", tok)
        self.fail(f"expected a label or '(', found {tok.text!r}", tok)


def parse_rules(source: str, labels) -> RuleSet:
    """Parse rule definitions against the given tag-type labels."""
    labels = set(labels)
    toks = _tokenize(source)

    # split the stream into name:body chunks on ';'
    chunks: list[list[_Tok]] = []
    current: list[_Tok] = []
    for tok in toks:
        if tok.kind == ";":
            chunks.append(current)
            current = []
        else:
            current.append(tok)
    if current:
        t = current[0]
        raise RuleParseError("missing ';' after rule", t.line, t.col)

    names: set[str] = set()
    headers: list[tuple[_Tok, list[_Tok]]] = []
    for chunk in chunks:
        if not chunk:
            continue
        head = chunk[0]
        if head.kind != "IDENT" or len(chunk) < 2 or chunk[1].kind != ":":
            raise RuleParseError("expected 'name: expression;'", head.line, head.col)
        if head.text in names:
            raise RuleParseError(f"duplicate rule {head.text!r}", head.line, head.col)
        if head.text == NONE_LABEL or head.text in labels:
            raise RuleParseError(
                f"rule name {head.text!r} collides with a tag label", head.line, head.col
            )
        names.add(head.text)
        headers.append((head, chunk[2:]))

    rules: list[Rule] = []
    defined: dict[str, Rule] = {}
    for head, body in headers:
        if not body:
            raise RuleParseError(f"rule {head.text!r} has an empty body", head.line, head.col)
        parser = _Parser(body, labels, defined, names)
        ast = parser.parse_expr()
        if parser.pos != len(body):
            tok = parser.peek()
            raise RuleParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        rule = Rule(head.text, ast)
        rules.append(rule)
        defined[head.text] = rule
    return RuleSet(rules=rules, source=source)


# --- upper-bounded repetition expansion ---


def expand_upto(node: MreNode) -> MreNode:
    """Rewrite every ``f^x`` into alternatives of 0..x copies of ``f``.

    ``f^1`` becomes ``f?``; larger bounds become an alternation of ``f?``,
    ``ff``, ... up to ``x`` concatenated copies.  Copies share the child
    node, matching how repeated iterations of one quantifier share it.
    """
    if isinstance(node, FormulaRef):
        return node
    if isinstance(node, RuleUse):
        return RuleUse(node.name, expand_upto(node.target), node.binding)
    if isinstance(node, Concat):
        return Concat([expand_upto(c) for c in node.children], node.binding)
    if isinstance(node, Star):
        return Star(expand_upto(node.child), node.binding)
    if isinstance(node, Plus):
        return Plus(expand_upto(node.child), node.binding)
    if isinstance(node, Opt):
        return Opt(expand_upto(node.child), node.binding)
    if isinstance(node, And):
        return And(expand_upto(node.left), expand_upto(node.right), node.binding)
    if isinstance(node, Or):
        return Or([expand_upto(c) for c in node.children], node.binding)
    assert isinstance(node, UpTo)
    child = expand_upto(node.child)
    if node.limit == 1:
        return Opt(child, node.binding)
    alts: list[MreNode] = [Opt(child)]
    for count in range(2, node.limit + 1):
        alts.append(Concat([child] * count))
    return Or(alts, node.binding)


def children_of(node: MreNode) -> list:
    if isinstance(node, (FormulaRef,)):
        return []
    if isinstance(node, RuleUse):
        return [node.target]
    if isinstance(node, (Concat, Or)):
        return list(node.children)
    if isinstance(node, (Star, Plus, Opt, UpTo)):
        return [node.child]
    assert isinstance(node, And)
    return [node.left, node.right]


def binding_paths(ast: MreNode) -> dict[str, list[MreNode]]:
    """Map '/'-joined binding paths to the AST nodes they address."""
    out: dict[str, list[MreNode]] = {}

    def walk(node: MreNode, prefix: tuple[str, ...]):
        here = prefix
        if node.binding:
            here = prefix + (node.binding,)
            out.setdefault("/".join(here), []).append(node)
        for child in children_of(node):
            walk(child, here)

    walk(ast, ())
    return out


def referenced_labels(ast: MreNode) -> set[str]:
    labels: set[str] = set()

    def walk(node: MreNode):
        if isinstance(node, FormulaRef):
            labels.add(node.label)
        for child in children_of(node):
            walk(child)

    walk(ast)
    return labels
