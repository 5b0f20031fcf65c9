"""Run the bundled direction demo and print tags, matches, and the graph.

Usage: python3 scripts/run_direction.py [--out DIR]
With --out, also writes doc.tags.json and doc.graph.json canonically.
"""

import argparse
import json
from importlib import resources
from pathlib import Path

from morphrex.fileio import project_from_json, write_canonical_json
from morphrex.pipeline import run_project, result_graph_json, result_tags_json


def load(name: str) -> str:
    return resources.files("morphrex").joinpath("fixtures", name).read_text("utf-8")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, help="directory for result files")
    args = parser.parse_args()

    project = project_from_json(json.loads(load("direction.project.json")))
    text = load("direction.doc.txt")
    result = run_project(project, text)

    print("tagged words:")
    for word, tags in zip(result.doc.words, result.seq.per_word):
        labels = sorted(tags - {"NONE"})
        if labels:
            print(f"  {word.surface:12s} {','.join(labels)}")
    print(f"matches: {len(result.matches)}")
    for rule, tree in result.matches:
        span = " ".join(w.surface for w in result.doc.words[tree.start : tree.end])
        print(f"  {rule}: {span}")
    print("edges:")
    nodes = {n.id: n.text for n in result.graph.nodes}
    for e in result.graph.edges:
        arrow = "->" if e.directed else "--"
        label = f" [{e.label}]" if e.label else ""
        print(f"  {e.name}: {nodes[e.source]} {arrow} {nodes[e.destination]}{label}")

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        write_canonical_json(result_tags_json(project, result), args.out / "doc.tags.json")
        write_canonical_json(result_graph_json(result), args.out / "doc.graph.json")
        print(f"wrote {args.out}/doc.tags.json and {args.out}/doc.graph.json")


if __name__ == "__main__":
    main()
