"""End-to-end driver: analyze, tag, match, run scripts, extract relations.

Only rules referenced by a tag type act as top-level extractors; everything
else in the rule source serves as building blocks for them.  Matches from
all extractors are interleaved in reading order before scripts run, so one
script environment sees the document the way a reader would.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import ActionEnv, ActionRunner
from .fileio import Project, graph_to_json, tags_payload
from .formula import TagSetSequence, compute_tag_sequence
from .morphology import AnalyzedDoc, analyze_text
from .nfa import DEFAULT_MAX_STEPS, MatchNode, build_nfa, simulate
from .relations import EntityGraph, add_synonymy_edges, extract_relations
from .rules import expand_upto
from .synk import GlossGraph, build_gloss_graph

SYN_CROSS_REFERENCE_LEVEL = 2


@dataclass
class PipelineResult:
    doc: AnalyzedDoc
    seq: TagSetSequence
    matches: list[tuple[str, MatchNode]] = field(default_factory=list)
    env: ActionEnv = field(default_factory=ActionEnv)
    graph: EntityGraph = field(default_factory=EntityGraph)


def extractor_rules(project: Project) -> list[str]:
    """Rule names referenced by tag types, in tag-type order, deduplicated."""
    out: list[str] = []
    for tag_type in project.tag_types:
        if tag_type.rule is not None and tag_type.rule not in out:
            out.append(tag_type.rule)
    return out


def run_project(
    project: Project,
    text: str,
    max_steps: int = DEFAULT_MAX_STEPS,
    gloss_graph: GlossGraph | None = None,
) -> PipelineResult:
    if gloss_graph is None:
        gloss_graph = build_gloss_graph(project.lexicon)
    doc = analyze_text(text, project.lexicon)
    seq = compute_tag_sequence(doc, project.tag_types, gloss_graph)

    matches: list[tuple[str, MatchNode]] = []
    if project.rules is not None:
        staged = []
        for order, name in enumerate(extractor_rules(project)):
            rule = project.rules.by_name[name]
            nfa = build_nfa(expand_upto(rule.ast))
            for tree in simulate(nfa, seq.per_word, name, max_steps=max_steps):
                staged.append((tree.start, order, name, tree))
        staged.sort(key=lambda item: item[:2])
        matches = [(name, tree) for _, _, name, tree in staged]

    env = ActionEnv()
    ActionRunner(doc, project.actions).run_document(matches, env)

    graph = extract_relations(doc, matches, project.relations)
    if project.syn_cross_reference:
        add_synonymy_edges(graph, gloss_graph, k=SYN_CROSS_REFERENCE_LEVEL)

    return PipelineResult(doc=doc, seq=seq, matches=matches, env=env, graph=graph)


def result_tags_json(project: Project, result: PipelineResult) -> dict:
    return tags_payload(
        result.doc,
        result.seq,
        result.matches,
        emitted=result.env.emitted,
        printed=result.env.printed,
        project_name=project.name,
    )


def result_graph_json(result: PipelineResult) -> dict:
    return graph_to_json(result.graph, result.doc)
