"""Lexicon-driven morphological analysis.

A token is segmented into ``prefix* stem suffix*`` where every piece must be
a form known to the lexicon.  All segmentations are enumerated, not just the
longest-stem one, so a single word may carry several solutions.  Each
solution records the morpheme offsets inside the document, plus the
part-of-speech, gloss, and category tags copied from the lexicon entries.

Glosses of one morpheme are alternatives and render as ``eat/consume``;
glosses of a whole solution concatenate morpheme by morpheme in
prefixes-stem-suffixes order, and the same holds for POS and category tags.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import LexiconError, SolutionsError

PREFIX = "prefix"
STEM = "stem"
SUFFIX = "suffix"

# Characters stripped from token edges.  Deliberately excludes ' ` - _ ^ ~ .
# which romanized Arabic uses as letters or letter modifiers; the ASCII
# period is safe to strip because modifier periods always precede a letter.
SEPARATORS = ".,;:!?()[]{}<>\"«»،؛؟"

_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Word:
    """A token with its character offset and length in the document."""

    surface: str
    index: int
    length: int


@dataclass(frozen=True)
class Morpheme:
    form: str
    kind: str  # prefix | stem | suffix
    pos: str
    gloss: tuple[str, ...]
    category: tuple[str, ...]
    index: int
    length: int

    @property
    def gloss_text(self) -> str:
        return "/".join(self.gloss)


@dataclass(frozen=True)
class MorphSolution:
    """One ``prefix* stem suffix*`` reading of a word."""

    prefixes: tuple[Morpheme, ...]
    stem: Morpheme
    suffixes: tuple[Morpheme, ...]
    numeric_value: int | float | None = None

    def morphemes(self) -> tuple[Morpheme, ...]:
        return self.prefixes + (self.stem,) + self.suffixes

    def pos_concat(self) -> str:
        return "+".join(m.pos for m in self.morphemes() if m.pos)

    def gloss_concat(self) -> str:
        return " ".join(m.gloss_text for m in self.morphemes() if m.gloss)

    def category_union(self) -> frozenset[str]:
        out: set[str] = set()
        for m in self.morphemes():
            out.update(m.category)
        return frozenset(out)


def _solution_sort_key(sol: MorphSolution):
    return (
        len(sol.prefixes),
        len(sol.suffixes),
        tuple(m.form for m in sol.morphemes()),
        tuple(m.pos for m in sol.morphemes()),
    )


@dataclass(frozen=True)
class LexEntry:
    form: str
    pos: str = ""
    glosses: tuple[str, ...] = ()
    categories: tuple[str, ...] = ()
    numeric_value: int | float | None = None


@dataclass
class Lexicon:
    """Stem and affix inventory with the user-defined category universe."""

    stems: tuple[LexEntry, ...]
    prefixes: tuple[LexEntry, ...] = ()
    suffixes: tuple[LexEntry, ...] = ()
    categories: tuple[str, ...] = ()
    _stems_by_form: dict[str, list[LexEntry]] = field(
        default_factory=dict, repr=False, compare=False
    )
    _stem_lengths: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        declared = set(self.categories)
        for group, name in (
            (self.stems, "stem"),
            (self.prefixes, "prefix"),
            (self.suffixes, "suffix"),
        ):
            for entry in group:
                if not entry.form:
                    raise LexiconError(f"empty form in {name} entry")
                missing = set(entry.categories) - declared
                if missing:
                    raise LexiconError(
                        f"{name} entry {entry.form!r} references undeclared "
                        f"categories: {sorted(missing)}"
                    )
        for entry in self.stems:
            self._stems_by_form.setdefault(entry.form, []).append(entry)
        self._stem_lengths = tuple(sorted({len(e.form) for e in self.stems}))

    def stem_entries(self, form: str) -> list[LexEntry]:
        return self._stems_by_form.get(form, [])

    def stem_glosses(self, form: str) -> frozenset[str]:
        out: set[str] = set()
        for entry in self.stem_entries(form):
            out.update(entry.glosses)
        return frozenset(out)


@dataclass(frozen=True)
class AnalyzedWord:
    word: Word
    solutions: tuple[MorphSolution, ...]  # sorted, deterministic


@dataclass
class AnalyzedDoc:
    text: str
    entries: list[AnalyzedWord]

    @property
    def words(self) -> list[Word]:
        return [e.word for e in self.entries]


def tokenize(text: str) -> list[Word]:
    """Split on whitespace, then shed separator punctuation at token edges."""
    words = []
    for m in _TOKEN_RE.finditer(text):
        tok, start = m.group(), m.start()
        while tok and tok[0] in SEPARATORS:
            tok, start = tok[1:], start + 1
        while tok and tok[-1] in SEPARATORS:
            tok = tok[:-1]
        if tok:
            words.append(Word(tok, start, len(tok)))
    return words


def _chains_from(surface: str, pos: int, entries: tuple[LexEntry, ...]):
    """All affix chains starting at pos: list of (end, entry tuple)."""
    results = [(pos, ())]
    stack = [(pos, ())]
    while stack:
        at, chain = stack.pop()
        for entry in entries:
            if surface.startswith(entry.form, at):
                item = (at + len(entry.form), chain + (entry,))
                results.append(item)
                stack.append(item)
    return results


def _chains_reaching(surface: str, start: int, entries: tuple[LexEntry, ...]):
    """Suffix chains covering [start, len(surface)) exactly."""
    n = len(surface)
    memo: dict[int, list[tuple[LexEntry, ...]]] = {n: [()]}

    def rec(at: int) -> list[tuple[LexEntry, ...]]:
        if at in memo:
            return memo[at]
        out = []
        for entry in entries:
            if surface.startswith(entry.form, at):
                for rest in rec(at + len(entry.form)):
                    out.append((entry,) + rest)
        memo[at] = out
        return out

    return rec(start)


def _morpheme(entry: LexEntry, kind: str, doc_index: int) -> Morpheme:
    return Morpheme(
        form=entry.form,
        kind=kind,
        pos=entry.pos,
        gloss=entry.glosses,
        category=entry.categories,
        index=doc_index,
        length=len(entry.form),
    )


def analyze_word(word: Word, lexicon: Lexicon) -> frozenset[MorphSolution]:
    """Enumerate every lexicon-backed segmentation of the word.

    Returns the empty set for words the lexicon cannot account for; callers
    treat those as taggable only by the fallback null tag.
    """
    surface = word.surface
    n = len(surface)
    out = set()
    for stem_start, pre_chain in _chains_from(surface, 0, lexicon.prefixes):
        for length in lexicon._stem_lengths:
            stem_end = stem_start + length
            if stem_end > n:
                continue
            stem_form = surface[stem_start:stem_end]
            stem_entries = lexicon.stem_entries(stem_form)
            if not stem_entries:
                continue
            suffix_chains = _chains_reaching(surface, stem_end, lexicon.suffixes)
            for stem_entry in stem_entries:
                for suf_chain in suffix_chains:
                    prefixes = []
                    at = word.index
                    for e in pre_chain:
                        prefixes.append(_morpheme(e, PREFIX, at))
                        at += len(e.form)
                    stem = _morpheme(stem_entry, STEM, at)
                    at += len(stem_entry.form)
                    suffixes = []
                    for e in suf_chain:
                        suffixes.append(_morpheme(e, SUFFIX, at))
                        at += len(e.form)
                    out.add(
                        MorphSolution(
                            prefixes=tuple(prefixes),
                            stem=stem,
                            suffixes=tuple(suffixes),
                            numeric_value=stem_entry.numeric_value,
                        )
                    )
    return frozenset(out)


def analyze_text(text: str, lexicon: Lexicon) -> AnalyzedDoc:
    entries = []
    for word in tokenize(text):
        sols = tuple(sorted(analyze_word(word, lexicon), key=_solution_sort_key))
        entries.append(AnalyzedWord(word=word, solutions=sols))
    return AnalyzedDoc(text=text, entries=entries)


# --- lexicon and solutions files ---


def _entry_from_json(obj: dict, where: str) -> LexEntry:
    try:
        return LexEntry(
            form=obj["form"],
            pos=obj.get("pos", ""),
            glosses=tuple(obj.get("glosses", ())),
            categories=tuple(obj.get("categories", ())),
            numeric_value=obj.get("numericValue"),
        )
    except (KeyError, TypeError) as exc:
        raise LexiconError(f"bad entry in {where}: {exc}") from exc


def lexicon_from_json(data: dict) -> Lexicon:
    from . import fileio

    fileio.validate_schema(data, "lexicon")
    return Lexicon(
        stems=tuple(_entry_from_json(e, "stems") for e in data["stems"]),
        prefixes=tuple(_entry_from_json(e, "prefixes") for e in data.get("prefixes", ())),
        suffixes=tuple(_entry_from_json(e, "suffixes") for e in data.get("suffixes", ())),
        categories=tuple(data.get("categories", ())),
    )


def lexicon_to_json(lexicon: Lexicon) -> dict:
    def entry(e: LexEntry) -> dict:
        obj: dict = {"form": e.form}
        if e.pos:
            obj["pos"] = e.pos
        if e.glosses:
            obj["glosses"] = list(e.glosses)
        if e.categories:
            obj["categories"] = list(e.categories)
        if e.numeric_value is not None:
            obj["numericValue"] = e.numeric_value
        return obj

    return {
        "version": "1",
        "categories": list(lexicon.categories),
        "stems": [entry(e) for e in lexicon.stems],
        "prefixes": [entry(e) for e in lexicon.prefixes],
        "suffixes": [entry(e) for e in lexicon.suffixes],
    }


def load_lexicon(path) -> Lexicon:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise LexiconError(f"lexicon file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise LexiconError(f"lexicon file {path} is not valid JSON: {exc}") from exc
    return lexicon_from_json(data)


def _morpheme_to_json(m: Morpheme) -> dict:
    return {
        "form": m.form,
        "kind": m.kind,
        "pos": m.pos,
        "gloss": list(m.gloss),
        "category": list(m.category),
        "index": m.index,
        "length": m.length,
    }


def _morpheme_from_json(obj: dict) -> Morpheme:
    return Morpheme(
        form=obj["form"],
        kind=obj["kind"],
        pos=obj["pos"],
        gloss=tuple(obj["gloss"]),
        category=tuple(obj["category"]),
        index=obj["index"],
        length=obj["length"],
    )


def solutions_to_json(entries: list[AnalyzedWord]) -> list:
    records = []
    for aw in entries:
        sols = []
        for sol in aw.solutions:
            obj = {
                "prefixes": [_morpheme_to_json(m) for m in sol.prefixes],
                "stem": _morpheme_to_json(sol.stem),
                "suffixes": [_morpheme_to_json(m) for m in sol.suffixes],
            }
            if sol.numeric_value is not None:
                obj["numericValue"] = sol.numeric_value
            sols.append(obj)
        records.append(
            {
                "word": aw.word.surface,
                "index": aw.word.index,
                "length": aw.word.length,
                "solutions": sols,
            }
        )
    return records


def solutions_from_json(data: list) -> list[AnalyzedWord]:
    from . import fileio

    fileio.validate_schema(data, "solutions")
    entries = []
    for pos, record in enumerate(data):
        where = f"record {pos} (word {record.get('word', '?')!r})"
        word = Word(record["word"], record["index"], record["length"])
        sols = []
        for sol in record["solutions"]:
            solution = MorphSolution(
                prefixes=tuple(_morpheme_from_json(m) for m in sol["prefixes"]),
                stem=_morpheme_from_json(sol["stem"]),
                suffixes=tuple(_morpheme_from_json(m) for m in sol["suffixes"]),
                numeric_value=sol.get("numericValue"),
            )
            total = sum(m.length for m in solution.morphemes())
            if total != word.length:
                raise SolutionsError(
                    f"{where}: morpheme lengths sum to {total}, "
                    f"word length is {word.length}"
                )
            for m in solution.morphemes():
                if not (word.index <= m.index and m.index + m.length <= word.index + word.length):
                    raise SolutionsError(
                        f"{where}: morpheme {m.form!r} falls outside the word span"
                    )
            sols.append(solution)
        entries.append(AnalyzedWord(word=word, solutions=tuple(sols)))
    return entries


def write_solutions_file(entries: list[AnalyzedWord], path) -> None:
    from . import fileio

    fileio.write_canonical_json(solutions_to_json(entries), path)


def load_solutions_file(path) -> list[AnalyzedWord]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise SolutionsError(f"solutions file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SolutionsError(f"solutions file {path} is not valid JSON: {exc}") from exc
    return solutions_from_json(data)
