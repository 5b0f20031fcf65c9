"""Spell out integers with the numbers demo lexicon and normalize them back.

Usage: python3 scripts/run_numbers.py [N ...]
Without arguments, a seeded random sample of values is used.
"""

import json
import random
import sys
from importlib import resources

from morphrex.fileio import project_from_json
from morphrex.pipeline import run_project


def spelled_out(n: int, by_value: dict) -> list[str]:
    def small(m: int) -> list[str]:
        tokens = []
        h, r = divmod(m, 100)
        if h:
            if h > 1:
                tokens.append(by_value[h])
            tokens.append(by_value[100])
        if r:
            if r <= 10:
                tokens.append(by_value[r])
            elif r < 20:
                tokens += [by_value[r - 10], by_value[10]]
            else:
                t, u = divmod(r, 10)
                if u:
                    tokens.append(by_value[u])
                tokens.append(by_value[t * 10])
        return tokens

    tokens = []
    thousands, rest = divmod(n, 1000)
    if thousands:
        if thousands > 1:
            tokens += small(thousands)
        tokens.append(by_value[1000])
    if rest:
        tokens += small(rest)
    return tokens


def main() -> None:
    raw = resources.files("morphrex").joinpath("fixtures", "numbers.project.json")
    project = project_from_json(json.loads(raw.read_text("utf-8")))
    by_value = {
        s.numeric_value: s.form
        for s in project.lexicon.stems
        if s.numeric_value is not None
    }

    if len(sys.argv) > 1:
        values = [int(a) for a in sys.argv[1:]]
    else:
        values = sorted(random.Random(3).sample(range(1, 1000000), 8))
    for n in values:
        if not 1 <= n <= 999999:
            raise SystemExit(f"{n} out of range 1..999999")

    rendered = [spelled_out(n, by_value) for n in values]
    text = " w ".join(" ".join(tokens) for tokens in rendered)
    result = run_project(project, text)
    emitted = [e.value for e in result.env.emitted if e.label == "value"]

    for n, tokens, got in zip(values, rendered, emitted):
        flag = "ok" if got == n else "MISMATCH"
        print(f"{n:>7d}  {' '.join(tokens):55s} -> {got:<7d} {flag}")


if __name__ == "__main__":
    main()
