"""Canonical JSON persistence for every file format the engine reads or writes.

All writers emit the same byte stream for the same model: UTF-8, sorted keys,
two-space indent, LF line endings, and a trailing newline.  Structural
validation runs against the versioned JSON schemas shipped in ``schemas/``;
semantic cross-reference checks live with the loaders.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
from referencing import Registry, Resource

from .actions import ActionScript, Emitted, PHASES
from .analysis import Tag
from .errors import ActionParseError, ProjectError, TagsError
from .formula import NONE_LABEL, AtomicTerm, BoolFormula, Legend, TagType
from .morphology import (
    AnalyzedDoc,
    Lexicon,
    lexicon_from_json,
    lexicon_to_json,
)
from .nfa import MatchNode
from .relations import (
    BindingSelector,
    EntityGraph,
    EntityNode,
    RelationDef,
    RelationEdge,
    parse_selector,
)
from .rules import (
    And,
    Concat,
    FormulaRef,
    Opt,
    Or,
    Plus,
    RuleSet,
    RuleUse,
    Star,
    binding_paths,
    parse_rules,
)

_SCHEMA_CACHE: dict[str, dict] = {}
_REGISTRY: Registry | None = None


def load_schema(name: str) -> dict:
    if name not in _SCHEMA_CACHE:
        text = (
            resources.files("morphrex").joinpath(f"schemas/{name}.schema.json").read_text("utf-8")
        )
        _SCHEMA_CACHE[name] = json.loads(text)
    return _SCHEMA_CACHE[name]


def _registry() -> Registry:
    """All shipped schemas, addressable by their $id for cross-references."""
    global _REGISTRY
    if _REGISTRY is None:
        reg = Registry()
        root = resources.files("morphrex").joinpath("schemas")
        for entry in root.iterdir():
            if not entry.name.endswith(".schema.json"):
                continue
            schema = json.loads(entry.read_text("utf-8"))
            reg = reg.with_resource(schema["$id"], Resource.from_contents(schema))
        _REGISTRY = reg
    return _REGISTRY


class SchemaError(Exception):
    """Structural validation failure; message carries the path to the field."""


def validate_schema(data, name: str) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(name), registry=_registry())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path
        )
        raise SchemaError(f"{name} file invalid at {path}: {err.message}")


def canonical_json_bytes(data) -> bytes:
    return (json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2) + "\n").encode(
        "utf-8"
    )


def write_canonical_json(data, path) -> None:
    with open(path, "wb") as fh:
        fh.write(canonical_json_bytes(data))


def read_json(path, error_cls=ProjectError):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise error_cls(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise error_cls(f"{path} is not valid JSON: {exc}") from exc


def document_sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# --- project files ---


@dataclass
class Project:
    """Everything one extraction setup needs: lexicon, tag types, rules,
    relation definitions, and attached scripts."""

    name: str
    lexicon: Lexicon
    tag_types: list[TagType] = field(default_factory=list)
    rules: RuleSet | None = None
    relations: list[RelationDef] = field(default_factory=list)
    actions: list[ActionScript] = field(default_factory=list)
    syn_cross_reference: bool = False


def _term_from_json(obj: dict) -> AtomicTerm:
    return AtomicTerm(
        feature=obj["feature"],
        predicate=obj["predicate"],
        value=obj["value"],
        negated=obj.get("negated", False),
        syn_k=obj.get("synK"),
    )


def _term_to_json(term: AtomicTerm) -> dict:
    obj: dict = {
        "feature": term.feature,
        "predicate": term.predicate,
        "value": term.value,
    }
    if term.negated:
        obj["negated"] = True
    if term.syn_k is not None:
        obj["synK"] = term.syn_k
    return obj


def _formula_from_json(obj: dict) -> BoolFormula:
    if obj.get("other"):
        return BoolFormula(other=True)
    return BoolFormula(terms=tuple(_term_from_json(t) for t in obj["terms"]))


def _formula_to_json(formula: BoolFormula) -> dict:
    if formula.other:
        return {"other": True}
    return {"terms": [_term_to_json(t) for t in formula.terms]}


def _tagtype_from_json(obj: dict) -> TagType:
    legend_obj = obj.get("legend", {})
    legend = Legend(
        color=legend_obj.get("color", "#000000"),
        font_flags=tuple(legend_obj.get("fontFlags", ())),
    )
    formula = obj.get("formula")
    return TagType(
        label=obj["label"],
        formula=_formula_from_json(formula) if formula is not None else None,
        rule=obj.get("rule"),
        description=obj.get("description", ""),
        legend=legend,
    )


def _tagtype_to_json(tag_type: TagType) -> dict:
    obj: dict = {"label": tag_type.label}
    if tag_type.formula is not None:
        obj["formula"] = _formula_to_json(tag_type.formula)
    if tag_type.rule is not None:
        obj["rule"] = tag_type.rule
    if tag_type.description:
        obj["description"] = tag_type.description
    legend = tag_type.legend
    if legend != Legend():
        entry: dict = {}
        if legend.color != "#000000":
            entry["color"] = legend.color
        if legend.font_flags:
            entry["fontFlags"] = list(legend.font_flags)
        obj["legend"] = entry
    return obj


def project_from_json(data: dict) -> Project:
    """Build a project, checking that every cross-reference resolves."""
    validate_schema(data, "project")
    lexicon = lexicon_from_json(data["lexicon"])

    tag_types = []
    seen_labels: set[str] = set()
    for obj in data["tagTypes"]:
        tag_type = _tagtype_from_json(obj)  # rejects NONE and formula+rule mixes
        if tag_type.label in seen_labels:
            raise ProjectError(f"duplicate tag type label {tag_type.label!r}")
        seen_labels.add(tag_type.label)
        tag_types.append(tag_type)

    ruleset = None
    paths_by_rule: dict[str, set[str]] = {}
    if data.get("rules", "").strip():
        ruleset = parse_rules(data["rules"], labels=seen_labels)
        paths_by_rule = {
            r.name: set(binding_paths(r.ast)) | {""} for r in ruleset.rules
        }

    for tag_type in tag_types:
        if tag_type.rule is not None and tag_type.rule not in paths_by_rule:
            raise ProjectError(
                f"tag type {tag_type.label!r} references unknown rule {tag_type.rule!r}"
            )

    relations = []
    for obj in data.get("relations", ()):
        rule, name = obj["rule"], obj["name"]
        if rule not in paths_by_rule:
            raise ProjectError(f"relation {name!r} references unknown rule {rule!r}")
        label = parse_selector(obj["label"]) if "label" in obj else None
        rdef = RelationDef(
            rule=rule,
            name=name,
            source=obj["source"],
            destination=obj["destination"],
            label=label,
            next_flag=obj.get("nextFlag", False),
        )
        for path in (rdef.source, rdef.destination) + (
            (label.path,) if label else ()
        ):
            if path not in paths_by_rule[rule] or path == "":
                raise ProjectError(
                    f"relation {name!r}: rule {rule!r} has no binding path {path!r}"
                )
        relations.append(rdef)

    actions = []
    for obj in data.get("actions", ()):
        rule = obj["rule"]
        if rule not in paths_by_rule:
            raise ProjectError(
                f"action on {obj['binding']!r} references unknown rule {rule!r}"
            )
        if obj["binding"] not in paths_by_rule[rule]:
            raise ProjectError(
                f"action script: rule {rule!r} has no binding path {obj['binding']!r}"
            )
        actions.append(
            ActionScript(
                rule=rule,
                binding=obj["binding"],
                phase=obj["phase"],
                source=obj["script"],
            )
        )

    return Project(
        name=data["name"],
        lexicon=lexicon,
        tag_types=tag_types,
        rules=ruleset,
        relations=relations,
        actions=actions,
        syn_cross_reference=data.get("synCrossReference", False),
    )


def project_to_json(project: Project) -> dict:
    data: dict = {
        "version": "1",
        "name": project.name,
        "lexicon": lexicon_to_json(project.lexicon),
        "tagTypes": [_tagtype_to_json(t) for t in project.tag_types],
    }
    if project.rules is not None:
        data["rules"] = project.rules.source
    if project.relations:
        items = []
        for r in project.relations:
            obj: dict = {
                "rule": r.rule,
                "name": r.name,
                "source": r.source,
                "destination": r.destination,
            }
            if r.label is not None:
                obj["label"] = (
                    r.label.path
                    if r.label.feature == "text"
                    else f"{r.label.path}.{r.label.feature}"
                )
            if r.next_flag:
                obj["nextFlag"] = True
            items.append(obj)
        data["relations"] = items
    if project.actions:
        data["actions"] = [
            {
                "rule": a.rule,
                "binding": a.binding,
                "phase": a.phase,
                "script": a.source,
            }
            for a in project.actions
        ]
    if project.syn_cross_reference:
        data["synCrossReference"] = True
    return data


def read_project(path) -> Project:
    return project_from_json(read_json(path, ProjectError))


def write_project(project: Project, path) -> None:
    write_canonical_json(project_to_json(project), path)


# --- tagging result files ---

_NODE_KINDS = {
    FormulaRef: "formula",
    RuleUse: "ruleUse",
    Concat: "sequence",
    Or: "alternation",
    And: "conjunction",
    Star: "star",
    Plus: "plus",
    Opt: "optional",
}


def _char_span(doc: AnalyzedDoc, start: int, end: int) -> tuple[int, int]:
    """Character index and length of a word span; empty spans anchor at the
    place they would begin."""
    words = doc.words
    if end > start:
        first, last = words[start], words[end - 1]
        return first.index, last.index + last.length - first.index
    if start < len(words):
        return words[start].index, 0
    if words:
        last = words[-1]
        return last.index + last.length, 0
    return 0, 0


def match_tree_to_json(doc: AnalyzedDoc, node: MatchNode) -> dict:
    index, length = _char_span(doc, node.start, node.end)
    obj: dict = {
        "kind": _NODE_KINDS[type(node.node)],
        "wordStart": node.start,
        "wordEnd": node.end,
        "index": index,
        "length": length,
    }
    if node.binding:
        obj["binding"] = node.binding
    if isinstance(node.node, FormulaRef):
        obj["label"] = node.node.label
    if isinstance(node.node, RuleUse):
        obj["rule"] = node.node.name
    if node.children:
        obj["children"] = [match_tree_to_json(doc, c) for c in node.children]
    return obj


def tags_payload(
    doc: AnalyzedDoc,
    seq,
    matches,
    emitted: list[Emitted] | None = None,
    printed: list[str] | None = None,
    project_name: str | None = None,
) -> dict:
    """Assemble the tagging result document for one analyzed text."""
    tags = []
    for word, labels in zip(seq.words, seq.per_word):
        for label in sorted(labels):
            if label == NONE_LABEL:
                continue
            tags.append({"index": word.index, "length": word.length, "label": label})
    data: dict = {
        "version": "1",
        "document": {"sha256": document_sha256(doc.text), "length": len(doc.text)},
        "tags": tags,
        "matches": [
            {"rule": rule, "tree": match_tree_to_json(doc, tree)}
            for rule, tree in matches
        ],
    }
    if project_name:
        data["project"] = project_name
    if emitted:
        annotations = []
        for e in emitted:
            index, length = _char_span(doc, e.start, e.end)
            annotations.append(
                {
                    "label": e.label,
                    "value": e.value,
                    "rule": e.rule,
                    "index": index,
                    "length": length,
                }
            )
        data["annotations"] = annotations
    if printed:
        data["printed"] = list(printed)
    return data


def read_tags(path) -> dict:
    data = read_json(path, TagsError)
    try:
        validate_schema(data, "tags")
    except SchemaError as exc:
        raise TagsError(str(exc)) from exc
    return data


def write_tags(data: dict, path) -> None:
    validate_schema(data, "tags")
    write_canonical_json(data, path)


def tags_from_payload(data: dict) -> list[Tag]:
    """Word tags plus one tag per match, as comparable character spans."""
    out = [Tag(t["index"], t["length"], t["label"]) for t in data["tags"]]
    for m in data["matches"]:
        tree = m["tree"]
        out.append(Tag(tree["index"], tree["length"], m["rule"]))
    return out


# --- entity graph files ---


def graph_to_json(graph: EntityGraph, doc: AnalyzedDoc | None = None) -> dict:
    data: dict = {
        "version": "1",
        "nodes": [
            {
                "id": n.id,
                "text": n.text,
                "index": n.start,
                "length": n.length,
                "headStem": n.head_stem,
                "wordStart": n.word_start,
                "wordEnd": n.word_end,
            }
            for n in sorted(graph.nodes, key=lambda n: (n.start, n.length))
        ],
        "edges": [
            {
                "name": e.name,
                "source": e.source,
                "destination": e.destination,
                "label": e.label,
                "directed": e.directed,
            }
            for e in graph.edges
        ],
    }
    if doc is not None:
        data["document"] = {
            "sha256": document_sha256(doc.text),
            "length": len(doc.text),
        }
    return data


def graph_from_json(data: dict) -> EntityGraph:
    validate_schema(data, "graph")
    nodes = [
        EntityNode(
            id=n["id"],
            text=n["text"],
            start=n["index"],
            length=n["length"],
            head_stem=n["headStem"],
            word_start=n["wordStart"],
            word_end=n["wordEnd"],
        )
        for n in data["nodes"]
    ]
    ids = {n.id for n in nodes}
    for e in data["edges"]:
        for endpoint in (e["source"], e["destination"]):
            if endpoint not in ids:
                raise ProjectError(f"edge references unknown node {endpoint!r}")
    edges = [
        RelationEdge(
            name=e["name"],
            source=e["source"],
            destination=e["destination"],
            label=e.get("label", ""),
            directed=e.get("directed", True),
        )
        for e in data["edges"]
    ]
    return EntityGraph(nodes=nodes, edges=edges)


def read_graph(path) -> EntityGraph:
    return graph_from_json(read_json(path, TagsError))


def write_graph(graph: EntityGraph, path, doc: AnalyzedDoc | None = None) -> None:
    data = graph_to_json(graph, doc)
    validate_schema(data, "graph")
    write_canonical_json(data, path)


__all__ = [
    "SchemaError",
    "validate_schema",
    "canonical_json_bytes",
    "write_canonical_json",
    "read_json",
    "document_sha256",
    "load_schema",
    "Project",
    "project_from_json",
    "project_to_json",
    "read_project",
    "write_project",
    "match_tree_to_json",
    "tags_payload",
    "read_tags",
    "write_tags",
    "tags_from_payload",
    "graph_to_json",
    "graph_from_json",
    "read_graph",
    "write_graph",
    "ProjectError",
    "TagsError",
]
