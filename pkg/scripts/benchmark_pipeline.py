"""Time the full pipeline on a randomly generated document.

Usage: python3 scripts/benchmark_pipeline.py [--words N] [--seed S]
"""

import argparse
import random
import time

from morphrex.fileio import project_from_json
from morphrex.pipeline import run_project

RULES = """\
head: (T1|T2)+ NONE? T3;
pair: T4 (NONE)^2 ($x=(T5|T6))+;
run: T7+;
mixed: $a=(T1|T4)+ $b=(T8)? T2;
"""


def project_data() -> dict:
    stems = [
        {"form": f"w{i}", "glosses": [f"sense{i}"], "categories": [f"C{i}"]}
        for i in range(1, 9)
    ]
    tag_types = [
        {
            "label": f"T{i}",
            "formula": {
                "terms": [{"feature": "category", "predicate": "isA", "value": f"C{i}"}]
            },
        }
        for i in range(1, 9)
    ]
    tag_types += [
        {"label": f"X{name.upper()}", "rule": name}
        for name in ("head", "pair", "run", "mixed")
    ]
    return {
        "version": "1",
        "name": "throughput",
        "lexicon": {
            "version": "1",
            "categories": [f"C{i}" for i in range(1, 9)],
            "stems": stems,
        },
        "tagTypes": tag_types,
        "rules": RULES,
        "relations": [
            {"rule": "mixed", "name": "follows", "source": "a", "destination": "b"}
        ],
        "actions": [
            {"rule": "run", "binding": "", "phase": "onMatch", "script": "count += 1;"}
        ],
        "synCrossReference": True,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--words", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1234)
    args = parser.parse_args()

    project = project_from_json(project_data())
    rng = random.Random(args.seed)
    vocabulary = [f"w{i}" for i in range(1, 9)] + ["zzz", "qqq", "ppp."]
    text = " ".join(rng.choice(vocabulary) for _ in range(args.words))

    started = time.perf_counter()
    result = run_project(project, text)
    elapsed = time.perf_counter() - started

    print(f"words:   {len(result.doc.words)}")
    print(f"matches: {len(result.matches)}")
    print(f"edges:   {len(result.graph.edges)}")
    print(f"elapsed: {elapsed:.2f}s")


if __name__ == "__main__":
    main()
