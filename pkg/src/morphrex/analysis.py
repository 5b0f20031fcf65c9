"""Scoring one tag set against another.

Tags are character spans with a label.  Two tags can only pair up when
their labels agree and their spans satisfy the chosen predicate: identical
spans, overlapping spans, or containment in either direction.  Pairing is
one-to-one and greedy in reading order, so a tag consumed by one match is
gone for later candidates.

Precision is the fraction of side-A tags that found a partner, recall the
fraction of side-B tags.  Both are exact rationals; an empty side scores 1
by convention (nothing claimed, nothing missed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True, order=True)
class Tag:
    index: int  # character offset
    length: int
    label: str


def _overlap(a: Tag, b: Tag) -> bool:
    return a.index < b.index + b.length and b.index < a.index + a.length


def _includes(outer: Tag, inner: Tag) -> bool:
    return (
        outer.index <= inner.index
        and inner.index + inner.length <= outer.index + outer.length
    )


PREDICATES = {
    "exact": lambda a, b: a.index == b.index and a.length == b.length,
    "intersection": _overlap,
    "aIncludesB": lambda a, b: _includes(a, b),
    "bIncludesA": lambda a, b: _includes(b, a),
}


def spans_match(a: Tag, b: Tag, predicate: str) -> bool:
    if predicate not in PREDICATES:
        raise ValueError(
            f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATES)}"
        )
    return a.label == b.label and PREDICATES[predicate](a, b)


@dataclass
class TagComparison:
    predicate: str
    matched: list[tuple[Tag, Tag]] = field(default_factory=list)
    only_a: list[Tag] = field(default_factory=list)
    only_b: list[Tag] = field(default_factory=list)

    @property
    def precision(self) -> Fraction:
        total = len(self.matched) + len(self.only_a)
        return Fraction(1) if total == 0 else Fraction(len(self.matched), total)

    @property
    def recall(self) -> Fraction:
        total = len(self.matched) + len(self.only_b)
        return Fraction(1) if total == 0 else Fraction(len(self.matched), total)

    @property
    def f_measure(self) -> Fraction:
        p, r = self.precision, self.recall
        if p + r == 0:
            return Fraction(0)
        return 2 * p * r / (p + r)


def compare_tags(a_tags, b_tags, predicate: str = "exact") -> TagComparison:
    """Greedy one-to-one pairing in reading order."""
    if predicate not in PREDICATES:
        raise ValueError(
            f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATES)}"
        )
    a_sorted = sorted(a_tags)
    b_sorted = sorted(b_tags)
    result = TagComparison(predicate=predicate)
    taken = [False] * len(b_sorted)
    for a in a_sorted:
        for i, b in enumerate(b_sorted):
            if taken[i] or not spans_match(a, b, predicate):
                continue
            taken[i] = True
            result.matched.append((a, b))
            break
        else:
            result.only_a.append(a)
    result.only_b = [b for i, b in enumerate(b_sorted) if not taken[i]]
    return result


def compare_by_label(a_tags, b_tags, predicate: str = "exact") -> dict[str, TagComparison]:
    """One comparison per label, plus an '*' entry for the whole sets."""
    out = {"*": compare_tags(a_tags, b_tags, predicate)}
    labels = sorted({t.label for t in a_tags} | {t.label for t in b_tags})
    for label in labels:
        out[label] = compare_tags(
            [t for t in a_tags if t.label == label],
            [t for t in b_tags if t.label == label],
            predicate,
        )
    return out


def comparison_to_json(cmp: TagComparison) -> dict:
    """Counts plus scores, the latter both as exact fractions and floats."""
    return {
        "matched": len(cmp.matched),
        "onlyA": len(cmp.only_a),
        "onlyB": len(cmp.only_b),
        "precision": str(cmp.precision),
        "recall": str(cmp.recall),
        "fMeasure": str(cmp.f_measure),
        "precisionFloat": float(cmp.precision),
        "recallFloat": float(cmp.recall),
        "fMeasureFloat": float(cmp.f_measure),
    }


def comparison_report(a_tags, b_tags, predicate: str = "exact") -> dict:
    by_label = compare_by_label(a_tags, b_tags, predicate)
    return {
        "predicate": predicate,
        "labels": {label: comparison_to_json(cmp) for label, cmp in by_label.items()},
    }


def tags_from_sequence(seq) -> list[Tag]:
    """Character-span tags for every labeled word of a tag-set sequence."""
    from .formula import NONE_LABEL

    out = []
    for word, labels in zip(seq.words, seq.per_word):
        for label in sorted(labels):
            if label == NONE_LABEL:
                continue
            out.append(Tag(index=word.index, length=word.length, label=label))
    return out


def tags_from_matches(doc, matches) -> list[Tag]:
    """One tag per match, labeled by its rule, spanning the matched text."""
    out = []
    for rule, tree in matches:
        first = doc.entries[tree.start].word
        last = doc.entries[tree.end - 1].word
        out.append(
            Tag(
                index=first.index,
                length=last.index + last.length - first.index,
                label=rule,
            )
        )
    return out
