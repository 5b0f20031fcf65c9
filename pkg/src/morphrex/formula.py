"""Boolean tag formulae over morphological features.

A tag type pairs a label with a disjunction of atomic terms.  An atomic term
checks one feature of one morphological solution: exact match (``isA``) or
containment (``contains``), optionally negated, optionally widened to the
synonymy closure of a stem.  A word matches a term when SOME solution
satisfies it; negation also lives inside that existential, so a word with no
solutions never matches anything and a word with several readings may match
both a term and its negation.

Words matched by no tag type at all receive the reserved NONE label, which is
global to the project rather than per rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ProjectError
from .morphology import AnalyzedDoc, AnalyzedWord, MorphSolution, Word
from .synk import MAX_LEVEL, MIN_LEVEL, GlossGraph, syn_closure

NONE_LABEL = "NONE"

FEATURES = ("prefix", "stem", "suffix", "pos", "gloss", "category")
STRING_FEATURES = ("prefix", "stem", "suffix", "pos")
SET_FEATURES = ("gloss", "category")
PREDICATES = ("isA", "contains")


@dataclass(frozen=True)
class AtomicTerm:
    feature: str
    predicate: str
    value: str
    negated: bool = False
    syn_k: int | None = None  # widen stem comparison to the level-k closure

    def __post_init__(self):
        if self.feature not in FEATURES:
            raise ProjectError(f"unknown feature {self.feature!r}")
        if self.predicate not in PREDICATES:
            raise ProjectError(f"unknown predicate {self.predicate!r}")
        if self.syn_k is not None:
            if self.feature not in ("stem", "gloss"):
                raise ProjectError(
                    f"synonymy level applies to stem or gloss terms, not {self.feature!r}"
                )
            if not MIN_LEVEL <= self.syn_k <= MAX_LEVEL:
                raise ProjectError(
                    f"synonymy level must be in [{MIN_LEVEL}, {MAX_LEVEL}], got {self.syn_k}"
                )


@dataclass(frozen=True)
class BoolFormula:
    """Disjunction of atomic terms; ``other=True`` marks the fallback constant."""

    terms: tuple[AtomicTerm, ...] = ()
    other: bool = False

    def __post_init__(self):
        if not self.other and not self.terms:
            raise ProjectError("formula needs at least one term")
        if self.other and self.terms:
            raise ProjectError("the fallback constant carries no terms")


OTHER = BoolFormula(other=True)


@dataclass(frozen=True)
class Legend:
    color: str = "#000000"
    font_flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class TagType:
    """A label plus either a Boolean formula or a reference to a rule."""

    label: str
    formula: BoolFormula | None = None
    rule: str | None = None
    description: str = ""
    legend: Legend = field(default_factory=Legend)

    def __post_init__(self):
        if self.label == NONE_LABEL:
            raise ProjectError(f"{NONE_LABEL!r} is reserved for untagged words")
        if (self.formula is None) == (self.rule is None):
            raise ProjectError(
                f"tag type {self.label!r} needs exactly one of formula or rule"
            )


@dataclass
class TagSetSequence:
    """Per-word sets of matching labels, in document order."""

    words: list[Word]
    per_word: list[frozenset[str]]

    def __len__(self) -> int:
        return len(self.words)


def _solution_matches(term: AtomicTerm, sol: MorphSolution) -> bool:
    if term.feature == "stem":
        values: tuple[str, ...] = (sol.stem.form,)
    elif term.feature == "prefix":
        values = tuple(m.form for m in sol.prefixes)
    elif term.feature == "suffix":
        values = tuple(m.form for m in sol.suffixes)
    elif term.feature == "pos":
        values = tuple(m.pos for m in sol.morphemes())
    elif term.feature == "gloss":
        values = tuple(g for m in sol.morphemes() for g in m.gloss)
    else:  # category
        values = tuple(c for m in sol.morphemes() for c in m.category)

    if term.predicate == "isA":
        return term.value in values
    return any(term.value in v for v in values)


def eval_term(
    term: AtomicTerm, analyzed: AnalyzedWord, graph: GlossGraph | None = None
) -> bool:
    """Existential over solutions, negation applied per solution."""
    if term.syn_k is not None:
        if graph is None:
            raise ProjectError(
                f"term on {term.value!r} needs a gloss graph for its synonymy level"
            )
        closure = syn_closure(term.value, term.syn_k, graph)
        return any(
            (sol.stem.form in closure) != term.negated for sol in analyzed.solutions
        )
    return any(
        _solution_matches(term, sol) != term.negated for sol in analyzed.solutions
    )


def eval_formula(
    formula: BoolFormula, analyzed: AnalyzedWord, graph: GlossGraph | None = None
) -> bool:
    if formula.other:
        raise ProjectError("the fallback constant is not directly evaluable")
    return any(eval_term(term, analyzed, graph) for term in formula.terms)


def compute_tag_sequence(
    doc: AnalyzedDoc, tag_types, graph: GlossGraph | None = None
) -> TagSetSequence:
    """Label every word; words no formula matches get the {NONE} singleton."""
    mbf_types = [t for t in tag_types if t.formula is not None and not t.formula.other]
    seen: set[str] = set()
    for t in mbf_types:
        if t.label in seen:
            raise ProjectError(f"duplicate tag type label {t.label!r}")
        seen.add(t.label)

    per_word = []
    for entry in doc.entries:
        labels = frozenset(
            t.label for t in mbf_types if eval_formula(t.formula, entry, graph)
        )
        per_word.append(labels if labels else frozenset((NONE_LABEL,)))
    return TagSetSequence(words=doc.words, per_word=per_word)
