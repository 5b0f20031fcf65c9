"""Bounded-depth synonymy closure over a stem/gloss bipartite graph.

Two stems are one step apart when their gloss sets intersect.  The level-k
closure of a word collects every stem reachable within 1..k steps starting
from the stems the lexicon associates with that word.  Level counts are
capped at 7; beyond that the relation degrades to noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SynBoundsError
from .morphology import Lexicon

MIN_LEVEL = 1
MAX_LEVEL = 7


@dataclass
class GlossGraph:
    """stem -> glosses (alpha), word -> seed stems (gamma), and the inverse index."""

    stem_to_glosses: dict[str, frozenset[str]]
    word_to_stems: dict[str, frozenset[str]]
    gloss_to_stems: dict[str, frozenset[str]]
    _closure_cache: dict[tuple[str, int], frozenset[str]] = field(
        default_factory=dict, repr=False
    )

    def seed_stems(self, word: str) -> frozenset[str]:
        return self.word_to_stems.get(word, frozenset())

    def neighbors(self, stem: str) -> set[str]:
        out: set[str] = set()
        for gloss in self.stem_to_glosses.get(stem, ()):
            out.update(self.gloss_to_stems.get(gloss, ()))
        return out


def build_gloss_graph(lexicon: Lexicon) -> GlossGraph:
    stem_to_glosses: dict[str, set[str]] = {}
    for entry in lexicon.stems:
        stem_to_glosses.setdefault(entry.form, set()).update(entry.glosses)
    gloss_to_stems: dict[str, set[str]] = {}
    for stem, glosses in stem_to_glosses.items():
        for gloss in glosses:
            gloss_to_stems.setdefault(gloss, set()).add(stem)
    return GlossGraph(
        stem_to_glosses={s: frozenset(g) for s, g in stem_to_glosses.items()},
        word_to_stems={s: frozenset((s,)) for s in stem_to_glosses},
        gloss_to_stems={g: frozenset(s) for g, s in gloss_to_stems.items()},
    )


def syn_closure(word: str, k: int, graph: GlossGraph) -> frozenset[str]:
    """Stems within 1..k shared-gloss steps of the word's seed stems.

    A seed belongs to its own closure exactly when it can take a step to
    itself, i.e. when it carries at least one gloss.
    """
    if not MIN_LEVEL <= k <= MAX_LEVEL:
        raise SynBoundsError(
            f"synonymy level must be between {MIN_LEVEL} and {MAX_LEVEL}, got {k}"
        )
    cached = graph._closure_cache.get((word, k))
    if cached is not None:
        return cached

    result: set[str] = set()
    frontier = graph.seed_stems(word)
    for _ in range(k):
        step: set[str] = set()
        for stem in frontier:
            step |= graph.neighbors(stem)
        frontier = step - result
        result |= step
        if not frontier:
            break
    out = frozenset(result)
    graph._closure_cache[(word, k)] = out
    return out


def is_syn(solutions, target: str, k: int, graph: GlossGraph) -> bool:
    """True when some solution's stem lies in the level-k closure of target."""
    closure = syn_closure(target, k, graph)
    return any(sol.stem.form in closure for sol in solutions)


def is_syn_negated(solutions, target: str, k: int, graph: GlossGraph) -> bool:
    """Per-solution negation: some solution's stem lies outside the closure."""
    closure = syn_closure(target, k, graph)
    return any(sol.stem.form not in closure for sol in solutions)


__all__ = [
    "GlossGraph",
    "build_gloss_graph",
    "syn_closure",
    "is_syn",
    "is_syn_negated",
    "MIN_LEVEL",
    "MAX_LEVEL",
]
