"""Bitext word alignment with IBM Model 1 and extraction of each source
word's most frequent translation (MFT).

EM runs in both directions over the sentence-aligned bitext; per-pair
links come from the argmax translation probability with a NULL token on
the conditioning side, and the two directions are symmetrized by
intersection. MFT counting lemmatizes the source side; the target side
stays lowercase surface, matching how the target vector space is keyed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import lemma_pos, split_words
from .errors import DataFormatError
from .wordnet import OPEN_CLASSES, WordNetDb, WordType

NULL = "<NULL>"

Pair = tuple[list[str], list[str]]


def load_bitext(source_path: str | os.PathLike, target_path: str | os.PathLike) -> list[Pair]:
    """Line-aligned UTF-8 files -> tokenized lowercase sentence pairs.

    The files must have equal line counts; pairs where either side
    tokenizes to nothing are dropped (they carry no alignment signal).
    """
    with open(source_path, encoding="utf-8") as fh:
        source_lines = fh.readlines()
    with open(target_path, encoding="utf-8") as fh:
        target_lines = fh.readlines()
    if len(source_lines) != len(target_lines):
        raise DataFormatError(
            f"bitext line counts differ: {len(source_lines)} vs {len(target_lines)}"
        )
    pairs = []
    for src, tgt in zip(source_lines, target_lines):
        src_tokens, tgt_tokens = split_words(src), split_words(tgt)
        if src_tokens and tgt_tokens:
            pairs.append((src_tokens, tgt_tokens))
    return pairs


@dataclass
class LexTable:
    """Model 1 translation probabilities t(target | source)."""

    table: dict[str, dict[str, float]]
    log_likelihoods: list[float] = field(default_factory=list)

    def prob(self, target: str, source: str) -> float:
        return self.table.get(source, {}).get(target, 0.0)


def train_model1(
    bitext: Sequence[Pair], iterations: int = 10, direction: str = "forward"
) -> LexTable:
    """Standard Model 1 EM with a NULL source token and uniform start.

    ``direction="forward"`` trains t(target | source) on the pairs as
    given; ``"reverse"`` swaps each pair first. Each source word's
    distribution is normalized after every M-step, and the per-iteration
    corpus log-likelihood (recorded on the result) never decreases.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if direction not in ("forward", "reverse"):
        raise ValueError(f"unknown direction {direction!r}")
    if direction == "reverse":
        bitext = [(tgt, src) for src, tgt in bitext]
    if not bitext:
        raise DataFormatError("empty bitext")

    cooc_targets: dict[str, set[str]] = {}
    target_vocab: set[str] = set()
    for src_tokens, tgt_tokens in bitext:
        target_vocab.update(tgt_tokens)
        for s in list(src_tokens) + [NULL]:
            cooc_targets.setdefault(s, set()).update(tgt_tokens)

    uniform = 1.0 / len(target_vocab)
    t: dict[str, dict[str, float]] = {
        s: {w: uniform for w in targets} for s, targets in cooc_targets.items()
    }

    log_likelihoods = []
    for _ in range(iterations):
        counts: dict[str, dict[str, float]] = {s: {} for s in t}
        ll = 0.0
        for src_tokens, tgt_tokens in bitext:
            sources = [NULL] + list(src_tokens)
            for tgt in tgt_tokens:
                denom = 0.0
                for s in sources:
                    denom += t[s][tgt]
                ll += math.log(denom) - math.log(len(sources))
                for s in sources:
                    share = t[s][tgt] / denom
                    counts[s][tgt] = counts[s].get(tgt, 0.0) + share
        for s, row in counts.items():
            total = sum(row.values())
            if total > 0.0:
                t[s] = {tgt: c / total for tgt, c in row.items()}
        log_likelihoods.append(ll)
    return LexTable(table=t, log_likelihoods=log_likelihoods)


def align_sentence(pair: Pair, lex: LexTable) -> set[tuple[int, int]]:
    """Argmax links (source index, target index); NULL wins are omitted.

    Ties between source positions resolve to the lowest index; a source
    word beats NULL on a tie.
    """
    src_tokens, tgt_tokens = pair
    links = set()
    for j, tgt in enumerate(tgt_tokens):
        best_i, best_p = None, lex.prob(tgt, NULL)
        for i, src in enumerate(src_tokens):
            p = lex.prob(tgt, src)
            if p > best_p or (p == best_p and best_i is None and p > 0.0):
                best_i, best_p = i, p
        if best_i is not None:
            links.add((best_i, j))
    return links


def symmetrize(
    e2f: set[tuple[int, int]],
    f2e: set[tuple[int, int]],
    mode: str = "intersection",
) -> set[tuple[int, int]]:
    """Intersect directional alignments; ``f2e`` links are transposed."""
    if mode != "intersection":
        raise ValueError(f"unsupported symmetrization mode {mode!r}")
    return e2f & {(i, j) for j, i in f2e}


def align_bitext(
    bitext: Sequence[Pair], forward: LexTable, reverse: LexTable
) -> list[set[tuple[int, int]]]:
    """Per-pair symmetrized links over the whole bitext."""
    out = []
    for src_tokens, tgt_tokens in bitext:
        e2f = align_sentence((src_tokens, tgt_tokens), forward)
        f2e = align_sentence((tgt_tokens, src_tokens), reverse)
        out.append(symmetrize(e2f, f2e))
    return out


@dataclass
class MftEntry:
    foreign: str
    count: int
    total: int


@dataclass
class MftTable:
    entries: dict[WordType, MftEntry]

    def get(self, word: WordType) -> MftEntry | None:
        return self.entries.get(word)

    def __len__(self) -> int:
        return len(self.entries)


def extract_mft(
    bitext: Sequence[Pair],
    links_per_pair: Iterable[set[tuple[int, int]]],
    db: WordNetDb,
) -> MftTable:
    """Most frequent aligned target token per lemmatized source word type.

    Source tokens that lemmatize outside the four open classes are
    skipped. Ties break lexicographically on the target token.
    """
    counts: dict[WordType, dict[str, int]] = {}
    for (src_tokens, tgt_tokens), links in zip(bitext, links_per_pair):
        for i, j in links:
            lemma, pos = lemma_pos(src_tokens[i], db)
            if pos not in OPEN_CLASSES:
                continue
            word = WordType(lemma, pos)
            row = counts.setdefault(word, {})
            tgt = tgt_tokens[j]
            row[tgt] = row.get(tgt, 0) + 1
    entries = {}
    for word, row in counts.items():
        foreign, count = min(row.items(), key=lambda item: (-item[1], item[0]))
        entries[word] = MftEntry(foreign=foreign, count=count, total=sum(row.values()))
    return MftTable(entries=entries)


def save_mft(table: MftTable, path: str | os.PathLike) -> None:
    """TSV: ``lemma<TAB>pos<TAB>foreign<TAB>alignedCount<TAB>totalCount``."""
    with open(path, "w", encoding="utf-8") as fh:
        for word in sorted(table.entries):
            e = table.entries[word]
            fh.write(f"{word.lemma}\t{word.pos}\t{e.foreign}\t{e.count}\t{e.total}\n")


def load_mft(path: str | os.PathLike) -> MftTable:
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 5:
                raise DataFormatError(f"{path}, line {lineno}: expected 5 fields")
            entries[WordType(parts[0], parts[1])] = MftEntry(
                foreign=parts[2], count=int(parts[3]), total=int(parts[4])
            )
    return MftTable(entries=entries)
