"""Corpus processing: tokenization, content-word filtering, sentence-level
co-occurrence counting, and companion-set extraction.

A sentence is one input line. Co-occurrence uses set semantics per
sentence: repeated tokens count once, so the table counts sentences in
which two word types appear together, and ``totals`` counts sentences per
word type.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DataFormatError
from .stoplist import DEFAULT_STOPLIST
from .wordnet import OPEN_CLASSES, WordNetDb, WordType, morphy

OTHER = "other"

_WORD_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str  # one of OPEN_CLASSES or "other"

    def __post_init__(self):
        if not self.lemma or any(c.isspace() for c in self.lemma):
            raise ValueError(f"lemma must be non-empty without whitespace: {self.lemma!r}")


def split_words(line: str) -> list[str]:
    """Lowercased alphabetic tokens, split on whitespace and punctuation."""
    return _WORD_RE.findall(line.lower())


def lemma_pos(surface: str, db: WordNetDb) -> tuple[str, str]:
    """Lemmatize a lowercased token: first open class whose morphy hits.

    Tries noun, verb, adjective, adverb in that order; falls back to the
    surface itself with pos ``other`` when no class has an entry.
    """
    for pos in OPEN_CLASSES:
        candidates = morphy(db, surface, pos)
        if candidates:
            return candidates[0], pos
    return surface, OTHER


def tokenize(line: str, db: WordNetDb) -> list[Token]:
    tokens = []
    for word in split_words(line):
        lemma, pos = lemma_pos(word, db)
        tokens.append(Token(surface=word, lemma=lemma, pos=pos))
    return tokens


def is_content_word(token: Token, stoplist: frozenset[str] = DEFAULT_STOPLIST) -> bool:
    return token.pos in OPEN_CLASSES and token.lemma not in stoplist


def load_stoplist(path: str | os.PathLike) -> frozenset[str]:
    """One lemma per line; blank lines and ``#`` comments ignored."""
    entries = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            lemma = line.strip()
            if lemma and not lemma.startswith("#"):
                entries.add(lemma.lower())
    return frozenset(entries)


class CooccurrenceTable:
    """Symmetric sentence-level co-occurrence counts over word types.

    Mutable while ingesting; treat as immutable once counting finishes.
    Partial tables built over shards of a corpus merge by summation.
    """

    def __init__(self):
        self._adj: dict[WordType, dict[WordType, int]] = {}
        self.totals: dict[WordType, int] = {}

    def add_sentence(self, word_types: Iterable[WordType]) -> None:
        present = sorted(set(word_types))
        for wt in present:
            self.totals[wt] = self.totals.get(wt, 0) + 1
        for i, a in enumerate(present):
            for b in present[i + 1 :]:
                self._adj.setdefault(a, {})[b] = self._adj.get(a, {}).get(b, 0) + 1
                self._adj.setdefault(b, {})[a] = self._adj.get(b, {}).get(a, 0) + 1

    def count(self, a: WordType, b: WordType) -> int:
        if a == b:
            return 0
        return self._adj.get(a, {}).get(b, 0)

    def total(self, w: WordType) -> int:
        return self.totals.get(w, 0)

    def neighbors(self, w: WordType) -> Iterator[tuple[WordType, int]]:
        return iter(self._adj.get(w, {}).items())

    def pairs(self) -> Iterator[tuple[WordType, WordType, int]]:
        """Each unordered pair once, with the smaller word type first."""
        for a, row in self._adj.items():
            for b, count in row.items():
                if a < b:
                    yield a, b, count

    def words(self) -> Iterator[WordType]:
        return iter(self.totals)

    def merge(self, other: "CooccurrenceTable") -> None:
        for wt, count in other.totals.items():
            self.totals[wt] = self.totals.get(wt, 0) + count
        for a, row in other._adj.items():
            mine = self._adj.setdefault(a, {})
            for b, count in row.items():
                mine[b] = mine.get(b, 0) + count

    def prune(self, min_total: int) -> None:
        """Drop word types seen in fewer than ``min_total`` sentences."""
        dropped = {w for w, c in self.totals.items() if c < min_total}
        if not dropped:
            return
        for w in dropped:
            del self.totals[w]
            self._adj.pop(w, None)
        for row in self._adj.values():
            for w in dropped.intersection(row):
                del row[w]

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for a, b, count in sorted(self.pairs()):
                fh.write(f"{a.lemma}\t{a.pos}\t{b.lemma}\t{b.pos}\t{count}\n")
            for w in sorted(self.totals):
                fh.write(f"#TOTAL\t{w.lemma}\t{w.pos}\t{self.totals[w]}\n")

    @classmethod
    def load(cls, path: str | os.PathLike) -> "CooccurrenceTable":
        table = cls()
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                parts = line.rstrip("\n").split("\t")
                try:
                    if parts[0] == "#TOTAL":
                        table.totals[WordType(parts[1], parts[2])] = int(parts[3])
                    else:
                        a = WordType(parts[0], parts[1])
                        b = WordType(parts[2], parts[3])
                        count = int(parts[4])
                        table._adj.setdefault(a, {})[b] = count
                        table._adj.setdefault(b, {})[a] = count
                except (IndexError, ValueError) as exc:
                    raise DataFormatError(f"{path}, line {lineno}: {exc}")
        return table


@dataclass
class CompanionSet:
    """The content words most frequently co-occurring with a target."""

    target: WordType
    companions: list[WordType] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.companions)

    def __iter__(self) -> Iterator[WordType]:
        return iter(self.companions)


def sentence_word_types(
    tokens: Iterable[Token], stoplist: frozenset[str] = DEFAULT_STOPLIST
) -> set[WordType]:
    return {
        WordType(t.lemma, t.pos) for t in tokens if is_content_word(t, stoplist)
    }


def count_cooccurrences(
    sentences: Iterable[list[Token]],
    stoplist: frozenset[str] = DEFAULT_STOPLIST,
) -> CooccurrenceTable:
    """Count sentence-level co-occurrences of content word types.

    Every unordered pair of distinct content word types present in a
    sentence is incremented once, regardless of token repetition.
    """
    table = CooccurrenceTable()
    for tokens in sentences:
        table.add_sentence(sentence_word_types(tokens, stoplist))
    return table


def companions(w: WordType, k: int, table: CooccurrenceTable) -> CompanionSet:
    """The ``k`` word types with the highest co-occurrence count with ``w``.

    Ordered by descending count, ties broken lexicographically by
    (lemma, pos). A word absent from the table yields an empty set,
    signalling that no companion-based prediction is possible.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ranked = sorted(table.neighbors(w), key=lambda item: (-item[1], item[0]))
    return CompanionSet(target=w, companions=[wt for wt, _ in ranked[:k]])


def read_sentences(path: str | os.PathLike, db: WordNetDb) -> Iterator[list[Token]]:
    """Tokenized sentences from a one-sentence-per-line UTF-8 corpus."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            yield tokenize(line, db)
