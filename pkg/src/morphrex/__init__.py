"""morphrex: morphology-driven tagging and relation extraction for Arabic text.

The pipeline in one sentence: a lexicon segments each word into candidate
prefix/stem/suffix solutions, Boolean formulas over those solutions tag
words, rules (regular expressions over tag labels) produce match trees,
and match trees feed scripted actions and relation extraction.
"""

from .actions import ActionEnv, ActionRunner, ActionScript, Emitted, parse_action
from .analysis import Tag, compare_tags, comparison_report
from .errors import (
    ActionParseError,
    ActionRuntimeError,
    BudgetExceededError,
    LexiconError,
    MorphrexError,
    ProjectError,
    RuleParseError,
    SolutionsError,
    SynBoundsError,
    TagsError,
)
from .fileio import (
    Project,
    SchemaError,
    read_graph,
    read_project,
    read_tags,
    write_graph,
    write_project,
    write_tags,
)
from .formula import AtomicTerm, BoolFormula, TagType, compute_tag_sequence
from .morphology import LexEntry, Lexicon, Word, analyze_text, analyze_word
from .nfa import MatchNode, build_nfa, simulate
from .pipeline import PipelineResult, run_project
from .relations import EntityGraph, RelationDef, add_synonymy_edges, extract_relations
from .rules import parse_rules
from .synk import build_gloss_graph, syn_closure

__version__ = "0.1.0"

__all__ = [
    "ActionEnv",
    "ActionParseError",
    "ActionRunner",
    "ActionRuntimeError",
    "ActionScript",
    "AtomicTerm",
    "BoolFormula",
    "BudgetExceededError",
    "Emitted",
    "EntityGraph",
    "LexEntry",
    "Lexicon",
    "LexiconError",
    "MatchNode",
    "MorphrexError",
    "PipelineResult",
    "Project",
    "ProjectError",
    "RelationDef",
    "RuleParseError",
    "SchemaError",
    "SolutionsError",
    "SynBoundsError",
    "Tag",
    "TagType",
    "TagsError",
    "Word",
    "add_synonymy_edges",
    "analyze_text",
    "analyze_word",
    "build_gloss_graph",
    "build_nfa",
    "compare_tags",
    "comparison_report",
    "compute_tag_sequence",
    "extract_relations",
    "parse_action",
    "parse_rules",
    "read_graph",
    "read_project",
    "read_tags",
    "run_project",
    "simulate",
    "syn_closure",
    "write_graph",
    "write_project",
    "write_tags",
]
