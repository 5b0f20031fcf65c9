"""Project, tagging result, and entity graph files: round-trips and checks."""

import pytest

from morphrex.actions import ActionEnv, ActionRunner
from morphrex.analysis import Tag
from morphrex.errors import ProjectError, RuleParseError, TagsError
from morphrex.fileio import (
    SchemaError,
    canonical_json_bytes,
    graph_from_json,
    graph_to_json,
    project_from_json,
    project_to_json,
    read_graph,
    read_project,
    read_tags,
    tags_from_payload,
    tags_payload,
    write_graph,
    write_project,
    write_tags,
)
from morphrex.formula import compute_tag_sequence
from morphrex.morphology import analyze_text
from morphrex.nfa import build_nfa, simulate
from morphrex.relations import extract_relations
from morphrex.rules import expand_upto
from morphrex.synk import build_gloss_graph


def sample_project_data():
    return {
        "version": "1",
        "name": "demo",
        "lexicon": {
            "version": "1",
            "categories": ["A", "B"],
            "stems": [
                {"form": "a", "pos": "X", "glosses": ["alpha"], "categories": ["A"]},
                {"form": "b", "pos": "X", "glosses": ["beta"], "categories": ["B"]},
                {"form": "n", "numericValue": 9},
            ],
            "prefixes": [],
            "suffixes": [],
        },
        "tagTypes": [
            {"label": "A", "formula": {"terms": [{"feature": "category", "predicate": "isA", "value": "A"}]}},
            {
                "label": "B",
                "formula": {
                    "terms": [
                        {"feature": "category", "predicate": "isA", "value": "B"},
                        {"feature": "stem", "predicate": "isA", "value": "a", "negated": True, "synK": 2},
                    ]
                },
                "description": "category B or anything far from a",
                "legend": {"color": "#22aa22", "fontFlags": ["bold"]},
            },
            {"label": "REST", "formula": {"other": True}},
            {"label": "PAIR", "rule": "pair"},
        ],
        "rules": "pair: $x=A $o=NONE? $y=B;",
        "relations": [
            {"rule": "pair", "name": "linked", "source": "x", "destination": "y", "label": "o"},
        ],
        "actions": [
            {"rule": "pair", "binding": "", "phase": "onMatch", "script": "n += 1;"},
        ],
        "synCrossReference": True,
    }


def test_project_round_trip_is_byte_stable():
    data = sample_project_data()
    project = project_from_json(data)
    emitted = project_to_json(project)
    again = project_to_json(project_from_json(emitted))
    assert canonical_json_bytes(emitted) == canonical_json_bytes(again)

    assert project.name == "demo"
    assert [t.label for t in project.tag_types] == ["A", "B", "REST", "PAIR"]
    assert project.tag_types[1].formula.terms[1].negated is True
    assert project.tag_types[1].formula.terms[1].syn_k == 2
    assert project.tag_types[2].formula.other is True
    assert project.rules.by_name["pair"]
    assert project.relations[0].label.feature == "text"
    assert project.actions[0].binding == ""
    assert project.syn_cross_reference is True


def test_project_file_round_trip(tmp_path):
    project = project_from_json(sample_project_data())
    path = tmp_path / "project.json"
    write_project(project, path)
    assert read_project(path).name == "demo"
    # a second write of the re-read project produces identical bytes
    second = tmp_path / "again.json"
    write_project(read_project(path), second)
    assert path.read_bytes() == second.read_bytes()


def test_project_schema_violations_name_the_field():
    data = sample_project_data()
    del data["name"]
    with pytest.raises(SchemaError) as err:
        project_from_json(data)
    assert "name" in str(err.value)

    data = sample_project_data()
    data["tagTypes"][0]["formula"] = {"terms": []}
    with pytest.raises(SchemaError) as err:
        project_from_json(data)
    assert "tagTypes" in str(err.value)


def test_project_cross_reference_errors():
    data = sample_project_data()
    data["relations"][0]["rule"] = "ghost"
    with pytest.raises(ProjectError) as err:
        project_from_json(data)
    assert "ghost" in str(err.value)

    data = sample_project_data()
    data["relations"][0]["source"] = "zz"
    with pytest.raises(ProjectError) as err:
        project_from_json(data)
    assert "zz" in str(err.value)

    data = sample_project_data()
    data["relations"][0]["label"] = "o.glyphs"
    with pytest.raises(ProjectError):
        project_from_json(data)

    data = sample_project_data()
    data["actions"][0]["binding"] = "nope"
    with pytest.raises(ProjectError) as err:
        project_from_json(data)
    assert "nope" in str(err.value)

    data = sample_project_data()
    data["tagTypes"][3]["rule"] = "ghost"
    with pytest.raises(ProjectError) as err:
        project_from_json(data)
    assert "ghost" in str(err.value)

    data = sample_project_data()
    data["tagTypes"].append({"label": "A", "formula": {"other": True}})
    with pytest.raises(ProjectError) as err:
        project_from_json(data)
    assert "duplicate" in str(err.value)

    data = sample_project_data()
    data["rules"] = "pair: $x=A $y=MISSING;"
    with pytest.raises(RuleParseError):
        project_from_json(data)


# --- tagging result files ---


def run_demo(text="a zz b"):
    project = project_from_json(sample_project_data())
    doc = analyze_text(text, project.lexicon)
    seq = compute_tag_sequence(doc, project.tag_types, build_gloss_graph(project.lexicon))
    matches = []
    for rule in project.rules.rules:
        nfa = build_nfa(expand_upto(rule.ast))
        for tree in simulate(nfa, seq.per_word, rule.name):
            matches.append((rule.name, tree))
    matches.sort(key=lambda pair: pair[1].start)
    env = ActionEnv()
    ActionRunner(doc, project.actions).run_document(matches, env)
    return project, doc, seq, matches, env


def test_tags_payload_structure(tmp_path):
    project, doc, seq, matches, env = run_demo()
    data = tags_payload(
        doc, seq, matches, emitted=env.emitted, printed=env.printed,
        project_name=project.name,
    )
    assert data["document"]["length"] == len("a zz b")
    assert {(t["index"], t["label"]) for t in data["tags"]} == {(0, "A"), (5, "B")}
    assert len(data["matches"]) == 1

    tree = data["matches"][0]["tree"]
    assert tree["kind"] == "sequence"
    assert (tree["index"], tree["length"]) == (0, 6)
    kinds = [c["kind"] for c in tree["children"]]
    assert kinds == ["formula", "optional", "formula"]
    optional = tree["children"][1]
    assert optional["binding"] == "o"
    assert optional["children"][0]["label"] == "NONE"

    path = tmp_path / "tags.json"
    write_tags(data, path)
    assert read_tags(path) == data

    spans = tags_from_payload(data)
    assert Tag(0, 6, "pair") in spans
    assert Tag(0, 1, "A") in spans


def test_empty_optional_span_anchors_at_next_word():
    project, doc, seq, matches, _ = run_demo("a b")
    tree = tags_payload(doc, seq, matches)["matches"][0]["tree"]
    optional = tree["children"][1]
    assert optional["wordStart"] == optional["wordEnd"] == 1
    assert (optional["index"], optional["length"]) == (2, 0)
    assert "children" not in optional


def test_tags_file_rejects_malformed_payload(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"version": "1"}', encoding="utf-8")
    with pytest.raises(TagsError):
        read_tags(path)


# --- entity graph files ---


def test_graph_round_trip(tmp_path):
    project, doc, seq, matches, _ = run_demo()
    graph = extract_relations(doc, matches, project.relations)
    assert [e.name for e in graph.edges] == ["linked"]
    assert graph.edges[0].label == "zz"

    data = graph_to_json(graph, doc)
    assert data["document"]["sha256"] == tags_payload(doc, seq, matches)["document"]["sha256"]

    path = tmp_path / "graph.json"
    write_graph(graph, path, doc)
    loaded = read_graph(path)
    assert loaded.nodes == graph.nodes
    assert loaded.edges == graph.edges

    again = tmp_path / "again.json"
    write_graph(loaded, again, doc)
    assert path.read_bytes() == again.read_bytes()


def test_graph_rejects_dangling_edge():
    data = {
        "version": "1",
        "nodes": [],
        "edges": [{"name": "x", "source": "n0_1", "destination": "n2_1"}],
    }
    with pytest.raises(ProjectError):
        graph_from_json(data)
