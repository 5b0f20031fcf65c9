from __future__ import annotations

import pytest

from morphrex.errors import RuleParseError
from morphrex.rules import (
    And,
    Concat,
    FormulaRef,
    Opt,
    Or,
    Plus,
    RuleUse,
    Star,
    UpTo,
    binding_paths,
    expand_upto,
    parse_rules,
    referenced_labels,
)

LABELS = {"P", "N", "R", "U", "O", "PN", "FAM", "TOLD", "MEAN"}


def parse_one(source: str):
    return parse_rules(source, LABELS).rules[-1].ast


def test_direction_rule_shape():
    ast = parse_one("direction: $e1=(P|N)+ $o1=NONE? $r=R $o2=NONE^2 $e2=(P|N|U)+;")
    assert isinstance(ast, Concat) and len(ast.children) == 5
    e1, o1, r, o2, e2 = ast.children
    assert isinstance(e1, Plus) and e1.binding == "e1"
    assert isinstance(e1.child, Or)
    assert [c.label for c in e1.child.children] == ["P", "N"]
    assert isinstance(o1, Opt) and o1.binding == "o1" and o1.child.label == "NONE"
    assert isinstance(r, FormulaRef) and r.binding == "r" and r.label == "R"
    assert isinstance(o2, UpTo) and o2.limit == 2 and o2.binding == "o2"
    assert isinstance(e2, Plus) and e2.binding == "e2"


def test_postfix_binds_tighter_than_concat():
    ast = parse_one("r1: P N*;")
    assert isinstance(ast, Concat)
    assert isinstance(ast.children[0], FormulaRef)
    assert isinstance(ast.children[1], Star)


def test_concat_binds_tighter_than_and():
    ast = parse_one("r1: P & N R;")
    assert isinstance(ast, And)
    assert isinstance(ast.left, FormulaRef)
    assert isinstance(ast.right, Concat)


def test_and_binds_tighter_than_or():
    ast = parse_one("r1: P | N & R;")
    assert isinstance(ast, Or)
    assert isinstance(ast.children[0], FormulaRef)
    assert isinstance(ast.children[1], And)


def test_or_is_flattened():
    ast = parse_one("r1: P | N | U;")
    assert isinstance(ast, Or) and len(ast.children) == 3


def test_stacked_postfix_operators():
    ast = parse_one("r1: (P N)+?;")
    assert isinstance(ast, Opt) and isinstance(ast.child, Plus)


def test_rule_reference_inlines_earlier_rule():
    rs = parse_rules("name: PN ((MEAN)? PN)*;\nnar: name (FAM name)*;", LABELS)
    nar = rs.by_name["nar"].ast
    assert isinstance(nar, Concat)
    use = nar.children[0]
    assert isinstance(use, RuleUse) and use.name == "name"
    assert use.target is rs.by_name["name"].ast


def test_rule_reference_can_carry_binding():
    rs = parse_rules(
        "nar: PN FAM PN;\nnchain: ($s1=TOLD $s2=nar)+;",
        LABELS,
    )
    paths = binding_paths(rs.by_name["nchain"].ast)
    assert set(paths) == {"s1", "s2"}
    assert isinstance(paths["s2"][0], RuleUse)


def test_nested_binding_paths():
    rs = parse_rules(
        "inner: $x=PN FAM;\nouter: $a=inner TOLD;",
        LABELS,
    )
    paths = binding_paths(rs.by_name["outer"].ast)
    assert set(paths) == {"a", "a/x"}


def test_duplicate_binding_name_addresses_all_instances():
    ast = parse_one("r1: ($s0=P | $s0=N)+;")
    assert len(binding_paths(ast)["s0"]) == 2


def test_referenced_labels():
    ast = parse_one("r1: (P|N)+ NONE? R;")
    assert referenced_labels(ast) == {"P", "N", "NONE", "R"}


def test_comments_and_whitespace():
    rs = parse_rules("# narrator chains\nr1: P\n  N;  # trailing\n", LABELS)
    assert isinstance(rs.by_name["r1"].ast, Concat)


# --- errors ---


def test_unknown_label_has_position():
    with pytest.raises(RuleParseError) as err:
        parse_rules("r1: P XYZ;", LABELS)
    assert "XYZ" in str(err.value)
    assert err.value.line == 1 and err.value.column == 7


def test_duplicate_rule_rejected():
    with pytest.raises(RuleParseError, match="duplicate"):
        parse_rules("r1: P;\nr1: N;", LABELS)


def test_forward_reference_rejected():
    with pytest.raises(RuleParseError, match="before its definition"):
        parse_rules("r1: r2;\nr2: P;", LABELS)


def test_self_reference_rejected():
    with pytest.raises(RuleParseError, match="before its definition"):
        parse_rules("r1: P r1;", LABELS)


def test_unbalanced_parenthesis():
    with pytest.raises(RuleParseError, match="unbalanced|expected"):
        parse_rules("r1: (P N;", LABELS)


def test_missing_semicolon():
    with pytest.raises(RuleParseError, match="';'"):
        parse_rules("r1: P N", LABELS)


def test_zero_repetition_bound_rejected():
    with pytest.raises(RuleParseError, match="at least 1"):
        parse_rules("r1: P^0;", LABELS)


def test_missing_repetition_bound_rejected():
    with pytest.raises(RuleParseError, match="repetition count"):
        parse_rules("r1: P^;", LABELS)


def test_rule_name_label_collision():
    with pytest.raises(RuleParseError, match="collides"):
        parse_rules("P: N;", LABELS)


def test_empty_body_rejected():
    with pytest.raises(RuleParseError, match="empty"):
        parse_rules("r1: ;", LABELS)


def test_binding_without_target():
    with pytest.raises(RuleParseError):
        parse_rules("r1: $x=;", LABELS)


# --- bounded repetition expansion ---


def test_expand_limit_one_is_optional():
    ast = expand_upto(parse_one("r1: $o=P^1;"))
    assert isinstance(ast, Opt) and ast.binding == "o"
    assert isinstance(ast.child, FormulaRef)


def test_expand_limit_three():
    ast = expand_upto(parse_one("r1: $o=P^3;"))
    assert isinstance(ast, Or) and ast.binding == "o"
    assert isinstance(ast.children[0], Opt)
    assert isinstance(ast.children[1], Concat) and len(ast.children[1].children) == 2
    assert isinstance(ast.children[2], Concat) and len(ast.children[2].children) == 3


def test_expand_recurses_into_structure():
    ast = expand_upto(parse_one("r1: (P^2 N)+;"))
    inner = ast.child.children[0]
    assert isinstance(inner, Or)


def test_expand_leaves_other_nodes_alone():
    src = parse_one("r1: (P|N)+ R?;")
    expanded = expand_upto(src)
    assert isinstance(expanded, Concat)
    assert isinstance(expanded.children[0], Plus)
