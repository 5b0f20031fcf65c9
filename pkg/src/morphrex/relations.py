"""Entity graphs built from rule matches.

A relation definition names two bound subexpressions of one rule.  Every
match of the rule contributes a directed edge from each source instance to
each destination instance that occurred in the same repetition context: two
instances belong together unless some repetition ancestor put them in
different iterations.  With ``next_flag`` the pairing instead connects
iteration i of the source to iteration i+1 of the destination, which turns
a chain rule into a linked list of edges.

Edge labels come from a third binding, read through a feature selector such
as ``r.gloss`` (text is the default feature).  Graph nodes are deduplicated
by character span, so the same stretch of text mentioned by several edges
becomes a single node.  ``add_synonymy_edges`` links nodes whose head stems
fall inside each other's bounded synonymy closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import node_field
from .errors import ActionRuntimeError, ProjectError
from .formula import NONE_LABEL
from .morphology import AnalyzedDoc
from .nfa import MatchNode
from .rules import Plus, Star
from .synk import GlossGraph, syn_closure

LABEL_FEATURES = ("text", "stem", "pos", "gloss")

SYN_EDGE_NAME = "isSyn"


@dataclass(frozen=True)
class BindingSelector:
    """A binding path plus the feature of its match to read."""

    path: str
    feature: str = "text"

    def __post_init__(self):
        if self.feature not in LABEL_FEATURES:
            raise ProjectError(
                f"unknown relation feature {self.feature!r}; "
                f"expected one of {', '.join(LABEL_FEATURES)}"
            )


def parse_selector(spec: str) -> BindingSelector:
    """Parse ``path`` or ``path.feature``; binding names never contain dots."""
    path, dot, feat = spec.partition(".")
    if not path:
        raise ProjectError(f"empty binding path in selector {spec!r}")
    if dot:
        return BindingSelector(path=path, feature=feat)
    return BindingSelector(path=path)


@dataclass(frozen=True)
class RelationDef:
    rule: str
    name: str
    source: str  # binding path
    destination: str
    label: BindingSelector | None = None
    next_flag: bool = False


@dataclass
class EntityNode:
    id: str
    text: str
    start: int  # character offset
    length: int
    head_stem: str
    word_start: int
    word_end: int


@dataclass
class RelationEdge:
    name: str
    source: str  # node ids
    destination: str
    label: str = ""
    directed: bool = True


@dataclass
class EntityGraph:
    nodes: list[EntityNode] = field(default_factory=list)
    edges: list[RelationEdge] = field(default_factory=list)

    def node_index(self) -> dict[str, EntityNode]:
        return {n.id: n for n in self.nodes}


@dataclass(frozen=True)
class _Instance:
    node: MatchNode
    # (ancestor match node, index of the child taken), from the root down
    trail: tuple


def _collect_instances(tree: MatchNode) -> dict[str, list[_Instance]]:
    out: dict[str, list[_Instance]] = {}

    def visit(node, path, trail):
        if node.binding:
            path = path + (node.binding,)
            out.setdefault("/".join(path), []).append(_Instance(node, trail))
        for i, child in enumerate(node.children):
            visit(child, path, trail + ((node, i),))

    visit(tree, (), ())
    return out


def _divergence(a: _Instance, b: _Instance):
    """First ancestor under which the two instances take different turns.

    Returns (ancestor, a_index, b_index), or None when one instance sits
    inside the other's subtree and no such ancestor exists.
    """
    for (anc_a, ia), (anc_b, ib) in zip(a.trail, b.trail):
        if anc_a is not anc_b:  # pragma: no cover - trails share prefixes
            return None
        if ia != ib:
            return anc_a, ia, ib
    return None


def _same_context(a: _Instance, b: _Instance) -> bool:
    """True unless a repetition ancestor splits the two into different turns."""
    split = _divergence(a, b)
    if split is None:
        return True
    ancestor, _, _ = split
    return not isinstance(ancestor.node, (Plus, Star))


def _next_context(src: _Instance, dst: _Instance) -> bool:
    """True when dst sits exactly one repetition turn after src."""
    split = _divergence(src, dst)
    if split is None:
        return False
    ancestor, i_src, i_dst = split
    return isinstance(ancestor.node, (Plus, Star)) and i_dst == i_src + 1


def _head_stem(doc: AnalyzedDoc, node: MatchNode) -> str:
    for leaf in node.leaves():
        if leaf.label == NONE_LABEL or leaf.end <= leaf.start:
            continue
        entry = doc.entries[leaf.start]
        if entry.solutions:
            return entry.solutions[0].stem.form
    return ""


def _ensure_node(graph: EntityGraph, index: dict, doc: AnalyzedDoc, m: MatchNode) -> str:
    first = doc.entries[m.start].word
    last = doc.entries[m.end - 1].word
    start = first.index
    length = last.index + last.length - start
    node_id = f"n{start}_{length}"
    if node_id not in index:
        node = EntityNode(
            id=node_id,
            text=doc.text[start : start + length],
            start=start,
            length=length,
            head_stem=_head_stem(doc, m),
            word_start=m.start,
            word_end=m.end,
        )
        graph.nodes.append(node)
        index[node_id] = node
    return node_id


def _label_value(doc, rdef: RelationDef, labels, src, dst):
    """Label text for the pair, or None when the label binding went unmatched.

    A definition without a label yields "" (unlabeled edge); a definition
    whose label binding found no co-occurring match yields no edge at all.
    """
    if rdef.label is None:
        return ""
    for candidate in labels:
        if candidate.node.end <= candidate.node.start:
            continue
        if not _same_context(candidate, dst):
            continue
        if not rdef.next_flag and not _same_context(candidate, src):
            continue
        try:
            return str(node_field(doc, candidate.node, rdef.label.feature))
        except ActionRuntimeError:
            return ""  # feature needs a tagged word the span lacks
    return None


def extract_relations(
    doc: AnalyzedDoc,
    matches: list[tuple[str, MatchNode]],
    defs: list[RelationDef],
    graph: EntityGraph | None = None,
) -> EntityGraph:
    """Apply relation definitions to matches given in reading order."""
    graph = graph if graph is not None else EntityGraph()
    index = graph.node_index()
    seen = {(e.name, e.source, e.destination, e.label, e.directed) for e in graph.edges}
    for rule, tree in matches:
        rule_defs = [d for d in defs if d.rule == rule]
        if not rule_defs:
            continue
        instances = _collect_instances(tree)
        for rdef in rule_defs:
            sources = [
                s for s in instances.get(rdef.source, []) if s.node.end > s.node.start
            ]
            dests = [
                d
                for d in instances.get(rdef.destination, [])
                if d.node.end > d.node.start
            ]
            labels = instances.get(rdef.label.path, []) if rdef.label else []
            pair_ok = _next_context if rdef.next_flag else _same_context
            for src in sources:
                for dst in dests:
                    if src.node is dst.node:
                        continue
                    if not pair_ok(src, dst):
                        continue
                    label = _label_value(doc, rdef, labels, src, dst)
                    if label is None:
                        continue
                    edge = RelationEdge(
                        name=rdef.name,
                        source=_ensure_node(graph, index, doc, src.node),
                        destination=_ensure_node(graph, index, doc, dst.node),
                        label=label,
                    )
                    key = (edge.name, edge.source, edge.destination, edge.label, True)
                    if key in seen:
                        continue
                    seen.add(key)
                    graph.edges.append(edge)
    return graph


def add_synonymy_edges(
    graph: EntityGraph, gloss_graph: GlossGraph, k: int = 2
) -> EntityGraph:
    """Link node pairs whose head stems are level-k synonyms.

    Edges are undirected, run from the earlier node to the later one, and
    are never duplicated, so calling this twice changes nothing.
    """
    existing = {
        (e.source, e.destination) for e in graph.edges if e.name == SYN_EDGE_NAME
    }
    ordered = sorted(graph.nodes, key=lambda n: (n.start, n.length))
    for i, u in enumerate(ordered):
        for v in ordered[i + 1 :]:
            if not u.head_stem or not v.head_stem:
                continue
            if v.head_stem not in syn_closure(u.head_stem, k, gloss_graph):
                continue
            if (u.id, v.id) in existing:
                continue
            existing.add((u.id, v.id))
            graph.edges.append(
                RelationEdge(
                    name=SYN_EDGE_NAME,
                    source=u.id,
                    destination=v.id,
                    label="",
                    directed=False,
                )
            )
    return graph
