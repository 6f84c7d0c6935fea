"""Evaluation protocols: type-level MFS accuracy against a sense-annotated
gold corpus, token-level disambiguation F1, the polysemous-noun sample,
and the ablation runner.

Gold data is a line-oriented TSV standoff: one sense-annotated token per
line, ``instanceId<TAB>lemma<TAB>pos<TAB>synsetOffset-pos``, with multiple
acceptable senses separated by ``|``. The empirical MFS of a word type is
the sense (or tied set of senses) with the highest count.

Words a scorer could not predict are filled in with a seeded random
sense, never the first listed sense (sense order encodes gold frequency
and would leak supervision). Coverage is always reported alongside.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DataFormatError
from .mfs import (
    Chi,
    DEFAULT_CHI,
    LIGHT_CHI,
    MfsPrediction,
    MfsResources,
    predict_many,
    stable_word_seed,
)
from .wordnet import SynsetId, WordNetDb, WordType

NOUN = "n"


@dataclass
class GoldMfs:
    """Per-type sense counts from an annotated corpus, with tie-aware MFS."""

    counts: dict[WordType, dict[SynsetId, int]]
    token_count: int = 0

    def mfs_set(self, word: WordType) -> set[SynsetId]:
        row = self.counts[word]
        best = max(row.values())
        return {sid for sid, count in row.items() if count == best}

    def words(self) -> Iterable[WordType]:
        return self.counts.keys()

    def occurrences(self, word: WordType) -> int:
        return sum(self.counts[word].values())

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class WsdInstance:
    instance_id: str
    word: WordType
    gold: frozenset[SynsetId]


@dataclass
class WsdDataset:
    instances: list[WsdInstance] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.instances)


def load_gold(path: str | os.PathLike, db: WordNetDb) -> tuple[GoldMfs, WsdDataset]:
    """Parse the annotated-corpus TSV into type counts and token instances.

    Every synset id is validated against the database; the error names
    the offending line. Multi-gold lines add one count to each listed
    sense but one token to the totals.
    """
    counts: dict[WordType, dict[SynsetId, int]] = {}
    instances: list[WsdInstance] = []
    tokens = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 4:
                raise DataFormatError(f"{path}, line {lineno}: expected 4 fields")
            instance_id, lemma, pos, senses_field = parts
            try:
                word = WordType(lemma, pos)
                sids = [SynsetId.parse(x) for x in senses_field.split("|")]
            except ValueError as exc:
                raise DataFormatError(f"{path}, line {lineno}: {exc}")
            for sid in sids:
                if sid not in db.synsets:
                    raise DataFormatError(
                        f"{path}, line {lineno}: unknown synset id {sid}"
                    )
            tokens += 1
            row = counts.setdefault(word, {})
            for sid in sids:
                row[sid] = row.get(sid, 0) + 1
            instances.append(
                WsdInstance(instance_id=instance_id, word=word, gold=frozenset(sids))
            )
    return GoldMfs(counts=counts, token_count=tokens), WsdDataset(instances=instances)


def random_sense(word: WordType, db: WordNetDb, seed: int) -> SynsetId:
    """Seeded uniform draw over the word's senses (stable per word)."""
    senses = db.senses(word)
    rng = np.random.default_rng(stable_word_seed(word, seed))
    return senses[int(rng.integers(len(senses)))]


@dataclass
class IntrinsicResult:
    accuracy: float
    coverage: float
    n_words: int
    n_backoff: int

    def __str__(self) -> str:
        return (
            f"accuracy {100 * self.accuracy:.1f}% over {self.n_words} word types "
            f"(coverage {100 * self.coverage:.1f}%, {self.n_backoff} random backoffs)"
        )


def _eligible_words(
    gold: GoldMfs, db: WordNetDb, scope: str
) -> list[WordType]:
    if scope not in ("all", "polysemous"):
        raise ValueError(f"unknown scope {scope!r}")
    words = [w for w in gold.words() if db.senses(w)]
    if scope == "polysemous":
        words = [w for w in words if len(db.senses(w)) > 1]
    return words


def intrinsic_accuracy(
    predictions: Mapping[WordType, MfsPrediction],
    gold: GoldMfs,
    db: WordNetDb,
    scope: str = "all",
    backoff_seed: int = 0,
    words: Iterable[WordType] | None = None,
) -> IntrinsicResult:
    """Fraction of word types whose predicted sense is a gold MFS.

    A prediction is correct when it falls in the tied max-count set.
    Types without a prediction receive a seeded random sense; coverage
    is the fraction predicted without that backoff. ``words`` restricts
    evaluation to an explicit set (e.g. the noun sample).
    """
    if words is None:
        eligible = _eligible_words(gold, db, scope)
    else:
        eligible = [w for w in words if w in gold.counts and db.senses(w)]
    if not eligible:
        return IntrinsicResult(accuracy=0.0, coverage=0.0, n_words=0, n_backoff=0)
    correct = 0
    backoffs = 0
    for word in eligible:
        pred = predictions.get(word)
        if pred is not None:
            chosen = pred.chosen
        else:
            backoffs += 1
            chosen = random_sense(word, db, backoff_seed)
        if chosen in gold.mfs_set(word):
            correct += 1
    n = len(eligible)
    return IntrinsicResult(
        accuracy=correct / n,
        coverage=(n - backoffs) / n,
        n_words=n,
        n_backoff=backoffs,
    )


def random_baseline_expectation(
    gold: GoldMfs, db: WordNetDb, scope: str = "all",
    words: Iterable[WordType] | None = None,
) -> float:
    """Analytic expected accuracy of the uniform random baseline:
    mean over words of |tied MFS set| / |senses|."""
    if words is None:
        eligible = _eligible_words(gold, db, scope)
    else:
        eligible = [w for w in words if w in gold.counts and db.senses(w)]
    if not eligible:
        return 0.0
    total = sum(
        len(gold.mfs_set(w) & set(db.senses(w))) / len(db.senses(w))
        for w in eligible
    )
    return total / len(eligible)


def noun_sample_filter(gold: GoldMfs, db: WordNetDb) -> set[WordType]:
    """Polysemous nouns occurring at least three times with a unique MFS."""
    sample = set()
    for word in gold.words():
        if word.pos != NOUN:
            continue
        if len(db.senses(word)) < 2:
            continue
        if gold.occurrences(word) < 3:
            continue
        if len(gold.mfs_set(word)) != 1:
            continue
        sample.add(word)
    return sample


@dataclass
class WsdResult:
    precision: float
    recall: float
    f1: float
    attempted: int
    total: int
    correct: int

    def __str__(self) -> str:
        return (
            f"P {100 * self.precision:.1f} / R {100 * self.recall:.1f} / "
            f"F1 {100 * self.f1:.1f} ({self.correct}/{self.attempted} attempted, "
            f"{self.total} instances)"
        )


def wsd_f1(
    predictions: Mapping[WordType, MfsPrediction],
    dataset: WsdDataset,
    db: WordNetDb | None = None,
    backoff: str = "none",
    backoff_seed: int = 0,
) -> WsdResult:
    """Token-level disambiguation scores from type-level MFS labels.

    Every instance of a word type receives that type's predicted sense,
    regardless of context. With ``backoff="none"`` unpredicted instances
    only lower recall; ``backoff="random"`` labels them with a seeded
    random sense so attempted equals total (requires ``db``).
    """
    if backoff not in ("none", "random"):
        raise ValueError(f"unknown backoff {backoff!r}")
    if backoff == "random" and db is None:
        raise ValueError("random backoff requires the database")
    attempted = 0
    correct = 0
    for instance in dataset.instances:
        pred = predictions.get(instance.word)
        if pred is not None:
            label = pred.chosen
        elif backoff == "random" and db.senses(instance.word):
            label = random_sense(instance.word, db, backoff_seed)
        else:
            continue
        attempted += 1
        if label in instance.gold:
            correct += 1
    total = len(dataset.instances)
    precision = correct / attempted if attempted else 0.0
    recall = correct / total if total else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return WsdResult(
        precision=precision,
        recall=recall,
        f1=f1,
        attempted=attempted,
        total=total,
        correct=correct,
    )


# ---------------------------------------------------------------------------
# ablations


@dataclass(frozen=True)
class AblationVariant:
    name: str
    method: str = "wct"
    chi: Chi = DEFAULT_CHI
    mode: str = "extended"
    include_examples: bool = True


DEFAULT_VARIANTS = (
    AblationVariant("full"),
    AblationVariant("word-only", chi=Chi(1.0, 0.0, 0.0)),
    AblationVariant("companions-only", chi=Chi(0.0, 1.0, 0.0)),
    AblationVariant("mft-only", chi=Chi(0.0, 0.0, 1.0)),
    AblationVariant("knowledge-light", chi=LIGHT_CHI, mode="light"),
    AblationVariant("no-examples", include_examples=False),
    AblationVariant(
        "knowledge-light-no-examples",
        chi=LIGHT_CHI,
        mode="light",
        include_examples=False,
    ),
)


@dataclass
class AblationRow:
    variant: AblationVariant
    intrinsic: IntrinsicResult
    wsd: WsdResult | None
    predictions: dict[WordType, MfsPrediction]


def run_ablations(
    resources: MfsResources,
    gold: GoldMfs,
    dataset: WsdDataset | None = None,
    words: Iterable[WordType] | None = None,
    variants: tuple[AblationVariant, ...] = DEFAULT_VARIANTS,
    backoff_seed: int = 0,
) -> list[AblationRow]:
    """Run each scorer variant and evaluate it on the same gold data."""
    if words is None:
        words = [w for w in gold.words() if resources.db.senses(w)]
    words = list(words)
    rows = []
    for variant in variants:
        predictions, _ = predict_many(
            words,
            variant.method,
            resources,
            chi=variant.chi,
            mode=variant.mode,
            include_examples=variant.include_examples,
        )
        intrinsic = intrinsic_accuracy(
            predictions, gold, resources.db, backoff_seed=backoff_seed, words=words
        )
        wsd = (
            wsd_f1(predictions, dataset, resources.db, backoff="random",
                   backoff_seed=backoff_seed)
            if dataset is not None
            else None
        )
        rows.append(
            AblationRow(
                variant=variant, intrinsic=intrinsic, wsd=wsd, predictions=predictions
            )
        )
    return rows


def format_ablation_table(rows: list[AblationRow]) -> str:
    """Human-readable table; one line per variant."""
    lines = [
        f"{'variant':<28} {'chi':<17} {'mode':<9} {'examples':<9} "
        f"{'intrinsic':>9} {'coverage':>9} {'wsd-f1':>7}"
    ]
    for row in rows:
        v = row.variant
        chi = "/".join(f"{x:g}" for x in v.chi.as_tuple())
        wsd = f"{100 * row.wsd.f1:.1f}" if row.wsd is not None else "-"
        lines.append(
            f"{v.name:<28} {chi:<17} {v.mode:<9} "
            f"{str(v.include_examples):<9} {100 * row.intrinsic.accuracy:>8.1f}% "
            f"{100 * row.intrinsic.coverage:>8.1f}% {wsd:>7}"
        )
    return "\n".join(lines)


def write_ablation_tsv(rows: list[AblationRow], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            "variant\tchi\tmode\texamples\tintrinsic_accuracy\tcoverage\twsd_f1\n"
        )
        for row in rows:
            v = row.variant
            chi = ",".join(f"{x:g}" for x in v.chi.as_tuple())
            wsd = f"{row.wsd.f1:.6g}" if row.wsd is not None else ""
            fh.write(
                f"{v.name}\t{chi}\t{v.mode}\t{int(v.include_examples)}\t"
                f"{row.intrinsic.accuracy:.6g}\t{row.intrinsic.coverage:.6g}\t{wsd}\n"
            )
