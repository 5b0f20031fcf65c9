"""Scripts attached to rule subexpressions.

A script runs either when the engine enters a subexpression match (preMatch,
pre-order) or when it leaves it (onMatch, post-order).  One mutable variable
environment threads through all matches of a document in reading order, which
lets scripts accumulate state across sibling matches; variables read before
assignment evaluate to 0.

Statements: assignment (``=``, ``+=``, ``-=``, ``*=``), ``if``/``else``,
``emit(label, value)`` to attach an annotation to the current match node, and
``print(value)`` to append to the captured output.  Expressions use
``+ - * == != < > && || !``, literals, variables, and binding accessors of
the form ``$name.field`` with field one of text, number, position, length,
stem, pos, gloss.

A script instance whose binding accessors cannot be resolved at its match
node is skipped silently; asking for ``.number`` where no reading of the
word carries a numeric value is an error that names the binding and word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ActionParseError, ActionRuntimeError
from .formula import NONE_LABEL
from .morphology import AnalyzedDoc
from .nfa import MatchNode

PRE_MATCH = "preMatch"
ON_MATCH = "onMatch"
PHASES = (PRE_MATCH, ON_MATCH)

ACCESSOR_FIELDS = ("text", "number", "position", "length", "stem", "pos", "gloss")

# --- parsing ---

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<COMMENT>//[^\n]*|\#[^\n]*)
  | (?P<FLOAT>\d+\.\d+)
  | (?P<INT>\d+)
  | (?P<STRING>"(?:[^"\\]|\\.)*")
  | (?P<BINDING>\$[^\W\d]\w*\.[A-Za-z]+)
  | (?P<IDENT>[^\W\d]\w*)
  | (?P<OP>\+=|-=|\*=|==|!=|&&|\|\||[+\-*<>=!(){};,])
    """,
    re.VERBOSE | re.UNICODE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ActionParseError(
                f"unexpected character {source[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        text = m.group()
        if kind not in ("WS", "COMMENT"):
            toks.append(_Tok(kind, text, line, m.start() - line_start + 1))
        if "\n" in text:
            line += text.count("\n")
            line_start = m.start() + text.rindex("\n") + 1
        pos = m.end()
    return toks


# expression AST tuples: ("lit", v) ("var", name) ("acc", binding, field)
# ("un", op, e) ("bin", op, l, r)
# statements: ("assign", name, op, expr) ("if", cond, then, else)
# ("emit", label, value) ("print", expr)


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, text=None, kind=None) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 1)
            raise ActionParseError(
                f"expected {text or kind}, found end of script", last.line, last.col
            )
        if (text is not None and tok.text != text) or (
            kind is not None and tok.kind != kind
        ):
            raise ActionParseError(
                f"expected {text or kind}, found {tok.text!r}", tok.line, tok.col
            )
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def parse_program(self) -> list:
        stmts = []
        while self.peek() is not None:
            stmts.append(self.parse_stmt())
        return stmts

    def parse_block(self) -> list:
        self.take("{")
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise ActionParseError("unclosed block", 0, 0)
            stmts.append(self.parse_stmt())
        self.take("}")
        return stmts

    def parse_stmt(self):
        tok = self.peek()
        if tok.text == "if":
            self.take("if")
            self.take("(")
            cond = self.parse_expr()
            self.take(")")
            then = self.parse_block()
            otherwise: list = []
            if self.at("else"):
                self.take("else")
                if self.at("if"):
                    otherwise = [self.parse_stmt()]
                else:
                    otherwise = self.parse_block()
            return ("if", cond, then, otherwise)
        if tok.text == "emit":
            self.take("emit")
            self.take("(")
            label = self.parse_expr()
            self.take(",")
            value = self.parse_expr()
            self.take(")")
            self.take(";")
            return ("emit", label, value)
        if tok.text == "print":
            self.take("print")
            self.take("(")
            value = self.parse_expr()
            self.take(")")
            self.take(";")
            return ("print", value)
        if tok.kind == "IDENT":
            name = self.take(kind="IDENT").text
            op = self.peek()
            if op is None or op.text not in ("=", "+=", "-=", "*="):
                raise ActionParseError(
                    f"expected an assignment after {name!r}",
                    tok.line,
                    tok.col,
                )
            self.take(op.text)
            value = self.parse_expr()
            self.take(";")
            return ("assign", name, op.text, value)
        raise ActionParseError(f"unexpected {tok.text!r}", tok.line, tok.col)

    def parse_expr(self):
        return self.parse_or()

    def parse_or(self):
        node = self.parse_and()
        while self.at("||"):
            self.take("||")
            node = ("bin", "||", node, self.parse_and())
        return node

    def parse_and(self):
        node = self.parse_eq()
        while self.at("&&"):
            self.take("&&")
            node = ("bin", "&&", node, self.parse_eq())
        return node

    def parse_eq(self):
        node = self.parse_rel()
        while self.at("==") or self.at("!="):
            op = self.take().text
            node = ("bin", op, node, self.parse_rel())
        return node

    def parse_rel(self):
        node = self.parse_add()
        while self.at("<") or self.at(">"):
            op = self.take().text
            node = ("bin", op, node, self.parse_add())
        return node

    def parse_add(self):
        node = self.parse_mul()
        while self.at("+") or self.at("-"):
            op = self.take().text
            node = ("bin", op, node, self.parse_mul())
        return node

    def parse_mul(self):
        node = self.parse_unary()
        while self.at("*"):
            self.take("*")
            node = ("bin", "*", node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.at("!"):
            self.take("!")
            return ("un", "!", self.parse_unary())
        if self.at("-"):
            self.take("-")
            return ("un", "-", self.parse_unary())
        return self.parse_primary()

    def parse_primary(self):
        tok = self.peek()
        if tok is None:
            raise ActionParseError("expected an expression", 0, 0)
        if tok.kind == "INT":
            self.take()
            return ("lit", int(tok.text))
        if tok.kind == "FLOAT":
            self.take()
            return ("lit", float(tok.text))
        if tok.kind == "STRING":
            self.take()
            body = tok.text[1:-1]
            return ("lit", re.sub(r"\\(.)", r"\1", body))
        if tok.kind == "BINDING":
            self.take()
            name, fieldname = tok.text[1:].split(".")
            if fieldname not in ACCESSOR_FIELDS:
                raise ActionParseError(
                    f"unknown accessor field {fieldname!r}", tok.line, tok.col
                )
            return ("acc", name, fieldname)
        if tok.text == "true":
            self.take()
            return ("lit", True)
        if tok.text == "false":
            self.take()
            return ("lit", False)
        if tok.text == "(":
            self.take("(")
            inner = self.parse_expr()
            self.take(")")
            return inner
        if tok.kind == "IDENT":
            self.take()
            return ("var", tok.text)
        raise ActionParseError(f"unexpected {tok.text!r}", tok.line, tok.col)


def parse_action(source: str) -> list:
    parser = _Parser(_tokenize(source))
    return parser.parse_program()


def referenced_bindings(program) -> set[str]:
    """Binding names a compiled script reads."""
    out: set[str] = set()

    def walk_expr(e):
        tag = e[0]
        if tag == "acc":
            out.add(e[1])
        elif tag == "un":
            walk_expr(e[2])
        elif tag == "bin":
            walk_expr(e[2])
            walk_expr(e[3])

    def walk_stmt(s):
        tag = s[0]
        if tag == "assign":
            walk_expr(s[3])
        elif tag == "if":
            walk_expr(s[1])
            for inner in s[2] + s[3]:
                walk_stmt(inner)
        elif tag in ("emit", "print"):
            walk_expr(s[1])
            if tag == "emit":
                walk_expr(s[2])

    for stmt in program:
        walk_stmt(stmt)
    return out


@dataclass
class ActionScript:
    """A compiled script attached to one binding path of one rule."""

    rule: str
    binding: str  # '/'-joined binding path; '' attaches to the rule root
    phase: str
    source: str
    program: list = field(default_factory=list)
    reads: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.phase not in PHASES:
            raise ActionParseError(f"unknown phase {self.phase!r}", 1, 1)
        if not self.program:
            self.program = parse_action(self.source)
        self.reads = frozenset(referenced_bindings(self.program))


@dataclass
class Emitted:
    label: str
    value: object
    rule: str
    start: int  # word span of the node the script ran on
    end: int


@dataclass
class ActionEnv:
    variables: dict = field(default_factory=dict)
    emitted: list[Emitted] = field(default_factory=list)
    printed: list[str] = field(default_factory=list)


def _display(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def _truthy(value) -> bool:
    return bool(value)


class _Unresolved(Exception):
    pass


def node_field(doc: AnalyzedDoc, node: MatchNode, fieldname: str, owner: str = "?"):
    """Value of one field of a matched span.

    text, position and length describe the character span; stem, pos and
    gloss come from the first reading of the first tagged word; number is
    the first reading that carries a numeric value, and raises when none
    does.  ``owner`` names the binding in error messages.
    """
    words = [doc.entries[i].word for i in range(node.start, node.end)]
    if fieldname == "text":
        if not words:
            return ""
        return doc.text[words[0].index : words[-1].index + words[-1].length]
    if fieldname == "position":
        return words[0].index
    if fieldname == "length":
        if not words:
            return 0
        return words[-1].index + words[-1].length - words[0].index
    leaf = next(
        (lf for lf in node.leaves() if lf.label != NONE_LABEL and lf.end > lf.start),
        None,
    )
    if leaf is None:
        raise ActionRuntimeError(
            f"binding {owner!r} has no tagged word for field {fieldname!r}"
        )
    entry = doc.entries[leaf.start]
    if fieldname == "number":
        for sol in entry.solutions:
            if sol.numeric_value is not None:
                return sol.numeric_value
        raise ActionRuntimeError(
            f"binding {owner!r}: word {entry.word.surface!r} has no numeric value"
        )
    if not entry.solutions:
        return ""
    first = entry.solutions[0]
    if fieldname == "stem":
        return first.stem.form
    if fieldname == "pos":
        return first.pos_concat()
    if fieldname == "gloss":
        return first.gloss_concat()
    raise ActionRuntimeError(f"unknown field {fieldname!r}")


class _Evaluator:
    def __init__(self, runner: "ActionRunner", env: ActionEnv, rule: str, stack: list[MatchNode]):
        self.runner = runner
        self.env = env
        self.rule = rule
        self.stack = stack  # ancestors plus current node, root first

    def resolve(self, name: str) -> MatchNode:
        """Nearest enclosing scope wins: current node's subtree first, then
        each ancestor's, so repetition bindings land on the current turn."""
        for scope in reversed(self.stack):
            for candidate in scope.walk():
                if candidate.binding == name and candidate.end > candidate.start:
                    return candidate
        raise _Unresolved(name)

    def accessor(self, name: str, fieldname: str):
        node = self.resolve(name)
        return node_field(self.runner.doc, node, fieldname, owner=name)

    def expr(self, e):
        tag = e[0]
        if tag == "lit":
            return e[1]
        if tag == "var":
            return self.env.variables.get(e[1], 0)
        if tag == "acc":
            return self.accessor(e[1], e[2])
        if tag == "un":
            value = self.expr(e[2])
            if e[1] == "!":
                return not _truthy(value)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ActionRuntimeError(f"unary '-' needs a number, got {value!r}")
            return -value
        op, left_e, right_e = e[1], e[2], e[3]
        if op == "&&":
            return _truthy(self.expr(left_e)) and _truthy(self.expr(right_e))
        if op == "||":
            return _truthy(self.expr(left_e)) or _truthy(self.expr(right_e))
        left, right = self.expr(left_e), self.expr(right_e)
        if op == "==":
            return left == right
        if op == "!=":
            return left != right
        if op == "+":
            if isinstance(left, str) or isinstance(right, str):
                return _display(left) + _display(right)
            return left + right
        if op in ("-", "*", "<", ">"):
            if isinstance(left, str) and isinstance(right, str) and op in ("<", ">"):
                return left < right if op == "<" else left > right
            for operand in (left, right):
                if isinstance(operand, bool) or not isinstance(operand, (int, float)):
                    raise ActionRuntimeError(
                        f"operator {op!r} needs numbers, got {operand!r}"
                    )
            if op == "-":
                return left - right
            if op == "*":
                return left * right
            return left < right if op == "<" else left > right
        raise ActionRuntimeError(f"unknown operator {op!r}")

    def run(self, program, node: MatchNode):
        for stmt in program:
            self.stmt(stmt, node)

    def stmt(self, s, node: MatchNode):
        tag = s[0]
        if tag == "assign":
            _, name, op, value_e = s
            value = self.expr(value_e)
            if op == "=":
                self.env.variables[name] = value
                return
            current = self.env.variables.get(name, 0)
            faked = ("bin", op[0], ("lit", current), ("lit", value))
            self.env.variables[name] = self.expr(faked)
            return
        if tag == "if":
            _, cond, then, otherwise = s
            branch = then if _truthy(self.expr(cond)) else otherwise
            for inner in branch:
                self.stmt(inner, node)
            return
        if tag == "emit":
            label = _display(self.expr(s[1]))
            value = self.expr(s[2])
            self.env.emitted.append(
                Emitted(label=label, value=value, rule=self.rule, start=node.start, end=node.end)
            )
            return
        if tag == "print":
            self.env.printed.append(_display(self.expr(s[1])))
            return
        raise ActionRuntimeError(f"unknown statement {tag!r}")


class ActionRunner:
    """Executes attached scripts over match trees of one analyzed document."""

    def __init__(self, doc: AnalyzedDoc, scripts: list[ActionScript]):
        self.doc = doc
        self.by_key: dict[tuple[str, str, str], list[ActionScript]] = {}
        for script in scripts:
            key = (script.rule, script.binding, script.phase)
            self.by_key.setdefault(key, []).append(script)

    def run_tree(self, rule: str, tree: MatchNode, env: ActionEnv) -> None:
        self._visit(rule, tree, (), [], env, is_root=True)

    def run_document(self, matches: list[tuple[str, MatchNode]], env: ActionEnv) -> None:
        """Matches must arrive in reading order; one environment spans them."""
        for rule, tree in matches:
            self.run_tree(rule, tree, env)

    def _visit(self, rule, node, ancestors_path, stack, env, is_root=False):
        # only bound nodes have an address; the root answers to '' as well
        path = ancestors_path
        addresses = [""] if is_root else []
        if node.binding:
            path = ancestors_path + (node.binding,)
            addresses.append("/".join(path))
        stack.append(node)
        for address in addresses:
            self._fire(rule, address, PRE_MATCH, node, stack, env)
        for child in node.children:
            self._visit(rule, child, path, stack, env)
        for address in reversed(addresses):
            self._fire(rule, address, ON_MATCH, node, stack, env)
        stack.pop()

    def _fire(self, rule, path, phase, node, stack, env):
        if node.end <= node.start:
            return  # an emptily-matched subexpression triggers nothing
        for script in self.by_key.get((rule, path, phase), ()):
            evaluator = _Evaluator(self, env, rule, stack)
            try:
                for name in script.reads:
                    evaluator.resolve(name)
            except _Unresolved:
                continue
            try:
                evaluator.run(script.program, node)
            except _Unresolved as exc:
                raise ActionRuntimeError(
                    f"binding {exc.args[0]!r} became unresolvable mid-script"
                ) from exc
