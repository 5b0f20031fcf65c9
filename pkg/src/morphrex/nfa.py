"""Automaton construction and simulation for tag-sequence rules.

The expression compiles to a nondeterministic automaton whose silent edges
carry open/close markers for every expression node.  Simulation runs a
priority-ordered subset construction over the per-word tag sets: a labeled
edge fires when its required labels all sit in the word's tag set, where the
reserved NONE label occurs only as the singleton set of otherwise untagged
words.  The marker trace of the winning thread rebuilds the match tree.

Matching policy: scan left to right, report the longest span at the first
position that can match at all, then resume after its end.  Among equal
spans the preferred thread keeps earlier quantified segments as long as
possible and picks earlier alternatives.

Conjunctions compile to a product of the two operand automata that advances
both on every word, so a span is kept exactly when both operands accept it;
only the left operand's markers survive, so the tree comes from the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceededError
from .rules import And, Concat, FormulaRef, MreNode, Opt, Or, Plus, RuleUse, Star, UpTo

DEFAULT_MAX_STEPS = 10**7

_OPEN = "open"
_CLOSE = "close"


@dataclass
class Nfa:
    start: int
    accept: int
    # eps[s] = ordered silent edges (target, (open|close, ast node) or None)
    eps: list[list[tuple[int, tuple[str, MreNode] | None]]]
    # sym[s] = ordered labeled edges (required labels, target)
    sym: list[list[tuple[frozenset[str], int]]]


class _Builder:
    def __init__(self):
        self.eps: list[list] = []
        self.sym: list[list] = []

    def fresh(self) -> int:
        self.eps.append([])
        self.sym.append([])
        return len(self.eps) - 1

    def eps_edge(self, a: int, b: int, marker=None):
        self.eps[a].append((b, marker))

    def sym_edge(self, a: int, labels: frozenset[str], b: int):
        self.sym[a].append((labels, b))

    def frag(self, node: MreNode) -> tuple[int, int]:
        """Entry/exit states; open/close markers for node sit just inside."""
        entry, exit_ = self.fresh(), self.fresh()

        if isinstance(node, FormulaRef):
            consume = self.fresh()
            self.eps_edge(entry, consume, (_OPEN, node))
            landed = self.fresh()
            self.sym_edge(consume, frozenset((node.label,)), landed)
            self.eps_edge(landed, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, RuleUse):
            s, t = self.frag(node.target)
            self.eps_edge(entry, s, (_OPEN, node))
            self.eps_edge(t, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, Concat):
            prev = self.fresh()
            self.eps_edge(entry, prev, (_OPEN, node))
            for child in node.children:
                s, t = self.frag(child)
                self.eps_edge(prev, s)
                prev = t
            self.eps_edge(prev, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, Or):
            head, tail = self.fresh(), self.fresh()
            self.eps_edge(entry, head, (_OPEN, node))
            for child in node.children:
                s, t = self.frag(child)
                self.eps_edge(head, s)
                self.eps_edge(t, tail)
            self.eps_edge(tail, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, Star):
            hub = self.fresh()
            self.eps_edge(entry, hub, (_OPEN, node))
            s, t = self.frag(node.child)
            self.eps_edge(hub, s)  # another turn, preferred
            self.eps_edge(t, hub)
            self.eps_edge(hub, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, Plus):
            s, t = self.frag(node.child)
            self.eps_edge(entry, s, (_OPEN, node))
            join = self.fresh()
            self.eps_edge(t, join)
            self.eps_edge(join, s)  # another turn, preferred
            self.eps_edge(join, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, Opt):
            head = self.fresh()
            self.eps_edge(entry, head, (_OPEN, node))
            s, t = self.frag(node.child)
            self.eps_edge(head, s)  # take the child, preferred
            tail = self.fresh()
            self.eps_edge(t, tail)
            self.eps_edge(head, tail)
            self.eps_edge(tail, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, And):
            left = build_nfa(node.left)
            right = build_nfa(node.right)
            s, t = self._product(left, right)
            self.eps_edge(entry, s, (_OPEN, node))
            self.eps_edge(t, exit_, (_CLOSE, node))
            return entry, exit_

        if isinstance(node, UpTo):
            raise ValueError("bounded repetitions must be expanded before compilation")
        raise TypeError(f"unknown expression node {type(node).__name__}")

    def _product(self, left: Nfa, right: Nfa) -> tuple[int, int]:
        """Pair construction; keeps left markers, drops right markers."""
        pair_ids: dict[tuple[int, int], int] = {}

        def state(u: int, v: int) -> int:
            key = (u, v)
            if key not in pair_ids:
                pair_ids[key] = self.fresh()
            return pair_ids[key]

        start = state(left.start, right.start)
        todo = [(left.start, right.start)]
        done = set()
        while todo:
            u, v = todo.pop()
            if (u, v) in done:
                continue
            done.add((u, v))
            here = state(u, v)
            for u2, marker in left.eps[u]:
                self.eps_edge(here, state(u2, v), marker)
                if (u2, v) not in done:
                    todo.append((u2, v))
            for v2, _marker in right.eps[v]:
                self.eps_edge(here, state(u, v2))
                if (u, v2) not in done:
                    todo.append((u, v2))
            for llabels, u2 in left.sym[u]:
                for rlabels, v2 in right.sym[v]:
                    self.sym_edge(here, llabels | rlabels, state(u2, v2))
                    if (u2, v2) not in done:
                        todo.append((u2, v2))
        return start, state(left.accept, right.accept)


def build_nfa(ast: MreNode) -> Nfa:
    builder = _Builder()
    entry, exit_ = builder.frag(ast)
    return Nfa(start=entry, accept=exit_, eps=builder.eps, sym=builder.sym)


@dataclass
class MatchNode:
    """One node of a match tree; spans are word-index ranges [start, end)."""

    node: MreNode
    start: int
    end: int
    children: list["MatchNode"] = field(default_factory=list)

    @property
    def binding(self) -> str | None:
        return self.node.binding

    @property
    def label(self) -> str | None:
        return self.node.label if isinstance(self.node, FormulaRef) else None

    def leaves(self) -> list["MatchNode"]:
        if isinstance(self.node, FormulaRef):
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


class _Budget:
    __slots__ = ("left", "rule", "limit")

    def __init__(self, limit: int, rule: str):
        self.left = limit
        self.limit = limit
        self.rule = rule

    def spend(self, amount: int):
        self.left -= amount
        if self.left < 0:
            raise BudgetExceededError(self.rule, self.limit)


def _closure(seeds, pos: int, nfa: Nfa, budget: _Budget) -> dict:
    """Priority-ordered silent expansion; the first thread to a state keeps it."""
    out: dict[int, tuple] = {}
    for s0, p0 in seeds:
        if s0 in out:
            continue
        stack = [(s0, p0)]
        while stack:
            s, path = stack.pop()
            if s in out:
                continue
            out[s] = path
            edges = nfa.eps[s]
            budget.spend(len(edges) + 1)
            for target, marker in reversed(edges):
                if target not in out:
                    entry = path if marker is None else (path, (marker, pos))
                    stack.append((target, entry))
    return out


def _fires(required: frozenset[str], tag_set: frozenset[str]) -> bool:
    return required <= tag_set


def _reconstruct(path, words=None) -> MatchNode:
    entries = []
    while path is not None:
        path, entry = path
        entries.append(entry)
    entries.reverse()
    stack: list[MatchNode] = []
    root: MatchNode | None = None
    for (kind, node), pos in entries:
        if kind == _OPEN:
            stack.append(MatchNode(node, pos, pos))
        else:
            done = stack.pop()
            done.end = pos
            if stack:
                stack[-1].children.append(done)
            else:
                root = done
    assert root is not None and not stack
    return root


def _scan(nfa: Nfa, tag_sets, begin: int, budget: _Budget, allow_empty: bool):
    configs = _closure([(nfa.start, None)], begin, nfa, budget)
    best = None
    if allow_empty and nfa.accept in configs:
        best = (begin, configs[nfa.accept])
    for i in range(begin, len(tag_sets)):
        tags = tag_sets[i]
        seeds = []
        for s, path in configs.items():
            edges = nfa.sym[s]
            budget.spend(len(edges) + 1)
            for required, target in edges:
                if _fires(required, tags):
                    seeds.append((target, path))
        if not seeds:
            break
        configs = _closure(seeds, i + 1, nfa, budget)
        if nfa.accept in configs:
            best = (i + 1, configs[nfa.accept])
    return best


def accepts(nfa: Nfa, tag_sets, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Full-sequence acceptance, the empty sequence included."""
    budget = _Budget(max_steps, "<accepts>")
    configs = _closure([(nfa.start, None)], 0, nfa, budget)
    for i, tags in enumerate(tag_sets):
        seeds = []
        for s, path in configs.items():
            edges = nfa.sym[s]
            budget.spend(len(edges) + 1)
            for required, target in edges:
                if _fires(required, tags):
                    seeds.append((target, path))
        if not seeds:
            return False
        configs = _closure(seeds, i + 1, nfa, budget)
    return nfa.accept in configs


def simulate(
    nfa: Nfa,
    tag_sets,
    rule_name: str = "<rule>",
    max_steps: int = DEFAULT_MAX_STEPS,
) -> list[MatchNode]:
    """Non-overlapping leftmost-longest matches over the tag-set sequence.

    Zero-length spans are not reported: a match must consume at least one
    word, though inner quantifiers may still match emptily inside it.
    """
    budget = _Budget(max_steps, rule_name)
    matches: list[MatchNode] = []
    pos = 0
    n = len(tag_sets)
    while pos < n:
        best = _scan(nfa, tag_sets, pos, budget, allow_empty=False)
        if best is None:
            pos += 1
            continue
        end, path = best
        matches.append(_reconstruct(path))
        pos = end
    return matches
