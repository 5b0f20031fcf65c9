"""Tag comparison metrics: pairing predicates and exact rational scores."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from morphrex.analysis import (
    Tag,
    compare_by_label,
    compare_tags,
    spans_match,
    tags_from_sequence,
)
from morphrex.formula import AtomicTerm, BoolFormula, TagType, compute_tag_sequence
from morphrex.morphology import LexEntry, Lexicon, analyze_text

import pytest


def t(index, length, label="X"):
    return Tag(index=index, length=length, label=label)


# --- predicates ---


def test_exact_predicate():
    assert spans_match(t(0, 4), t(0, 4), "exact")
    assert not spans_match(t(0, 4), t(0, 5), "exact")
    assert not spans_match(t(1, 4), t(0, 4), "exact")


def test_labels_must_agree_under_every_predicate():
    for predicate in ("exact", "intersection", "aIncludesB", "bIncludesA"):
        assert not spans_match(t(0, 4, "X"), t(0, 4, "Y"), predicate)


def test_intersection_predicate_uses_half_open_spans():
    assert spans_match(t(0, 4), t(2, 4), "intersection")
    assert spans_match(t(2, 4), t(0, 4), "intersection")
    assert not spans_match(t(0, 4), t(4, 2), "intersection")  # adjacency only
    assert not spans_match(t(4, 2), t(0, 4), "intersection")


def test_inclusion_predicates():
    assert spans_match(t(0, 10), t(2, 3), "aIncludesB")
    assert not spans_match(t(2, 3), t(0, 10), "aIncludesB")
    assert spans_match(t(2, 3), t(0, 10), "bIncludesA")
    assert spans_match(t(0, 4), t(0, 4), "aIncludesB")  # equal spans contain each other
    assert spans_match(t(0, 4), t(0, 4), "bIncludesA")


def test_unknown_predicate_rejected():
    with pytest.raises(ValueError):
        spans_match(t(0, 1), t(0, 1), "overlapping")
    with pytest.raises(ValueError):
        compare_tags([], [], "overlapping")


# --- scores ---


def test_half_precision_half_recall():
    a = [t(0, 4), t(10, 3)]
    b = [t(0, 4), t(20, 2)]
    cmp = compare_tags(a, b, "exact")
    assert cmp.precision == Fraction(1, 2)
    assert cmp.recall == Fraction(1, 2)
    assert cmp.f_measure == Fraction(1, 2)
    assert cmp.only_a == [t(10, 3)]
    assert cmp.only_b == [t(20, 2)]


def test_empty_sides_score_one():
    cmp = compare_tags([], [], "exact")
    assert cmp.precision == 1
    assert cmp.recall == 1
    assert cmp.f_measure == 1


def test_one_empty_side():
    cmp = compare_tags([], [t(0, 4)], "exact")
    assert cmp.precision == 1  # claimed nothing wrong
    assert cmp.recall == 0
    assert cmp.f_measure == 0

    cmp = compare_tags([t(0, 4)], [], "exact")
    assert cmp.precision == 0
    assert cmp.recall == 1
    assert cmp.f_measure == 0


def test_scores_are_exact_rationals():
    a = [t(0, 1), t(5, 1), t(9, 1)]
    b = [t(0, 1), t(20, 1)]
    cmp = compare_tags(a, b, "exact")
    assert cmp.precision == Fraction(1, 3)
    assert cmp.recall == Fraction(1, 2)
    assert cmp.f_measure == Fraction(2, 5)  # 2*(1/3)*(1/2) / (1/3 + 1/2)


def test_greedy_pairing_is_one_to_one():
    a = [t(0, 4), t(2, 4)]
    b = [t(3, 4)]
    cmp = compare_tags(a, b, "intersection")
    assert len(cmp.matched) == 1
    assert cmp.matched[0] == (t(0, 4), t(3, 4))
    assert cmp.only_a == [t(2, 4)]
    assert cmp.only_b == []


def test_compare_by_label_partitions():
    a = [t(0, 4, "X"), t(5, 2, "Y")]
    b = [t(0, 4, "X"), t(5, 2, "X")]
    by_label = compare_by_label(a, b, "exact")
    assert by_label["*"].precision == Fraction(1, 2)
    assert by_label["X"].precision == Fraction(1, 1)
    assert by_label["X"].recall == Fraction(1, 2)
    assert by_label["Y"].precision == Fraction(0)
    assert by_label["Y"].recall == 1  # no Y tags on side B


# --- predicate monotonicity: exact implies inclusion implies overlap ---

tag_strategy = st.builds(
    Tag,
    index=st.integers(min_value=0, max_value=30),
    length=st.integers(min_value=1, max_value=8),
    label=st.sampled_from(["X", "Y"]),
)


@given(st.lists(tag_strategy, max_size=8), st.lists(tag_strategy, max_size=8))
def test_looser_predicates_match_at_least_as_much(a, b):
    exact = len(compare_tags(a, b, "exact").matched)
    a_inc = len(compare_tags(a, b, "aIncludesB").matched)
    b_inc = len(compare_tags(a, b, "bIncludesA").matched)
    overlap = len(compare_tags(a, b, "intersection").matched)
    assert exact <= a_inc <= overlap
    assert exact <= b_inc <= overlap


@given(st.lists(tag_strategy, max_size=8), st.lists(tag_strategy, max_size=8))
def test_swapping_sides_swaps_precision_and_recall(a, b):
    forward = compare_tags(a, b, "exact")
    backward = compare_tags(b, a, "exact")
    assert forward.precision == backward.recall
    assert forward.recall == backward.precision


# --- adapters ---


def test_tags_from_sequence_skips_untagged_words():
    lexicon = Lexicon(
        stems=(LexEntry(form="a", pos="X", glosses=("alpha",), categories=("A",)),),
        categories=("A",),
    )
    tag_types = [
        TagType(
            label="A",
            formula=BoolFormula(
                terms=(AtomicTerm(feature="category", predicate="isA", value="A"),)
            ),
        )
    ]
    doc = analyze_text("a zz a", lexicon)
    seq = compute_tag_sequence(doc, tag_types)
    assert tags_from_sequence(seq) == [t(0, 1, "A"), t(5, 1, "A")]
