"""Run the bundled narrator-chain demo and print the chain of narrators."""

import json
from importlib import resources

from morphrex.fileio import project_from_json
from morphrex.pipeline import run_project
from morphrex.rules import RuleUse


def load(name: str) -> str:
    return resources.files("morphrex").joinpath("fixtures", name).read_text("utf-8")


def main() -> None:
    project = project_from_json(json.loads(load("narrators.project.json")))
    text = load("narrators.doc.txt")
    result = run_project(project, text)

    print(f"document: {text.strip()}")
    for rule, tree in result.matches:
        names = [
            " ".join(w.surface for w in result.doc.words[n.start : n.end])
            for n in tree.walk()
            if isinstance(n.node, RuleUse) and n.node.name == "nar"
        ]
        print(f"{rule}: {len(names)} narrators")
        for name in names:
            print(f"  {name}")
    nodes = {n.id: n.text for n in result.graph.nodes}
    for e in result.graph.edges:
        print(f"chain: {nodes[e.source]} -[{e.label}]-> {nodes[e.destination]}")


if __name__ == "__main__":
    main()
