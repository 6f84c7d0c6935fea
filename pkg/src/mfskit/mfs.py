"""Most-frequent-sense scorers.

Four methods share the MfsPrediction result type:

* ``wct``: each sense's keyword vector is compared by cosine against up
  to three feature vectors of the target word (its own embedding, the
  average of its companions' embeddings, and its most frequent
  translation mapped into the English space), combined with weights chi.
  Missing features contribute nothing and their weight mass is
  redistributed proportionally over the features that are present.
* ``companion``: sums, over the target's companion words, the best jcn
  similarity between the candidate sense and any sense of the companion.
* ``umfswe``: the word-vector-only cosine scorer with the narrower
  keyword set; identical by construction to wct with chi = (1, 0, 0).
* ``random``: a uniformly random sense, deterministic per (word, seed).

Ties always resolve to the lowest WordNet sense index; tied runner-ups
are kept on the prediction for audit.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .align import MftTable
from .corpus import CompanionSet, CooccurrenceTable, companions as top_companions
from .embeddings import VectorSpace, average, cosine
from .errors import DataFormatError, NoPredictionError
from .stoplist import DEFAULT_STOPLIST
from .wordnet import IcTable, SynsetId, WordNetDb, WordType, jcn, keywords

FEATURE_WORD = "word"
FEATURE_COMPANIONS = "companions"
FEATURE_MFT = "mft"


@dataclass(frozen=True)
class Chi:
    """Non-negative feature weights for the three-vector scorer; sum to 1."""

    word: float
    companions: float
    mft: float

    def __post_init__(self):
        values = (self.word, self.companions, self.mft)
        if any(v < 0 for v in values):
            raise ValueError(f"chi weights must be non-negative: {values}")
        if not math.isclose(sum(values), 1.0, abs_tol=1e-9):
            raise ValueError(f"chi weights must sum to 1: {values}")

    @classmethod
    def parse(cls, text: str) -> "Chi":
        parts = [float(x) for x in text.replace(",", " ").split()]
        if len(parts) != 3:
            raise ValueError(f"expected three chi weights, got {text!r}")
        return cls(*parts)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.word, self.companions, self.mft)


DEFAULT_CHI = Chi(0.5, 0.4, 0.1)
# retuned default for the glosses-and-examples-only keyword mode
LIGHT_CHI = Chi(0.4, 0.1, 0.5)


@dataclass
class MfsPrediction:
    word: WordType
    chosen: SynsetId
    scores: dict[SynsetId, float]
    method: str
    features_used: frozenset[str] = frozenset()
    low_confidence: bool = False
    ties: tuple[SynsetId, ...] = ()


def _argmax_sense(
    word: WordType, senses: list[SynsetId], scores: dict[SynsetId, float]
) -> tuple[SynsetId, tuple[SynsetId, ...]]:
    """Best-scoring sense, preferring the lowest sense index on ties."""
    best = max(scores.values())
    tied = tuple(s for s in senses if scores[s] == best)
    return tied[0], tied


def sense_vector(
    db: WordNetDb,
    s: SynsetId,
    mode: str,
    space: VectorSpace,
    stoplist: frozenset[str] = DEFAULT_STOPLIST,
    exclude_lemma: str | None = None,
    include_examples: bool = True,
) -> np.ndarray | None:
    """Average embedding of the sense's keywords; None when all are OOV."""
    vectors = [
        vec
        for kw in keywords(
            db,
            s,
            mode=mode,
            stoplist=stoplist,
            include_examples=include_examples,
            exclude_lemma=exclude_lemma,
        )
        if (vec := space.get(kw.lemma)) is not None
    ]
    if not vectors:
        return None
    return average(vectors)


def companion_vector(
    companion_set: CompanionSet | None, space: VectorSpace
) -> np.ndarray | None:
    """Average embedding of the companions that are in vocabulary."""
    if companion_set is None:
        return None
    vectors = [
        vec for wt in companion_set if (vec := space.get(wt.lemma)) is not None
    ]
    if not vectors:
        return None
    return average(vectors)


def mft_vector(
    word: WordType,
    mft: MftTable | None,
    tmatrix: np.ndarray | None,
    foreign: VectorSpace | None,
) -> np.ndarray | None:
    """The most frequent translation's vector mapped into English space."""
    if mft is None or tmatrix is None or foreign is None:
        return None
    entry = mft.get(word)
    if entry is None:
        return None
    f_vec = foreign.get(entry.foreign)
    if f_vec is None:
        return None
    return tmatrix @ f_vec


def wct_predict(
    word: WordType,
    chi: Chi,
    english: VectorSpace,
    db: WordNetDb,
    *,
    companion_set: CompanionSet | None = None,
    mft: MftTable | None = None,
    tmatrix: np.ndarray | None = None,
    foreign: VectorSpace | None = None,
    mode: str = "extended",
    stoplist: frozenset[str] = DEFAULT_STOPLIST,
    include_examples: bool = True,
    method: str = "wct",
) -> MfsPrediction:
    """Three-vector scorer: weighted cosines of sense vs feature vectors.

    Feature vectors that cannot be built (word missing from the space,
    empty companion set, no usable translation) drop out and the
    remaining weights are renormalized to sum to 1. Senses whose keyword
    vectors are all out of vocabulary score -inf; if every sense does,
    or no feature carries positive weight, there is no prediction.
    """
    senses = db.senses(word)
    if not senses:
        raise NoPredictionError(word, "no senses in the database")

    features: list[tuple[str, float, np.ndarray]] = []
    for name, weight, vec in (
        (FEATURE_WORD, chi.word, english.get(word.lemma)),
        (FEATURE_COMPANIONS, chi.companions, companion_vector(companion_set, english)),
        (FEATURE_MFT, chi.mft, mft_vector(word, mft, tmatrix, foreign)),
    ):
        # zero-weight features receive nothing from the proportional
        # redistribution either, so they are not "used"
        if vec is not None and weight > 0.0:
            features.append((name, weight, vec))
    active_mass = sum(weight for _, weight, _ in features)
    if not features:
        raise NoPredictionError(word, "no usable feature vector")

    scores: dict[SynsetId, float] = {}
    for s in senses:
        s_vec = sense_vector(
            db,
            s,
            mode=mode,
            space=english,
            stoplist=stoplist,
            exclude_lemma=word.lemma,
            include_examples=include_examples,
        )
        if s_vec is None:
            scores[s] = -math.inf
            continue
        scores[s] = sum(
            (weight / active_mass) * cosine(s_vec, vec)
            for _, weight, vec in features
        )
    if all(v == -math.inf for v in scores.values()):
        raise NoPredictionError(word, "no sense has an in-vocabulary keyword")

    chosen, tied = _argmax_sense(word, senses, scores)
    finite = [v for v in scores.values() if v != -math.inf]
    return MfsPrediction(
        word=word,
        chosen=chosen,
        scores=scores,
        method=method,
        features_used=frozenset(name for name, _, _ in features),
        low_confidence=len(set(finite)) <= 1 and len(scores) > 1,
        ties=tied,
    )


def companion_predict(
    word: WordType, k: int, db: WordNetDb, ic: IcTable, table: CooccurrenceTable
) -> MfsPrediction:
    """Score each sense by summed best-jcn against the companions' senses.

    Companions without any senses in the database contribute zero. An
    empty companion set means no prediction. When every score is zero
    (e.g. all companions outside the noun/verb hierarchies), the first
    sense wins the tie and the prediction is flagged low confidence.
    """
    senses = db.senses(word)
    if not senses:
        raise NoPredictionError(word, "no senses in the database")
    companion_set = top_companions(word, k, table)
    if len(companion_set) == 0:
        raise NoPredictionError(word, "no companions in the co-occurrence table")

    scores: dict[SynsetId, float] = {}
    for s in senses:
        total = 0.0
        for comp in companion_set:
            comp_senses = db.senses(comp)
            if comp_senses:
                total += max(jcn(db, ic, s, cs) for cs in comp_senses)
        scores[s] = total

    chosen, tied = _argmax_sense(word, senses, scores)
    return MfsPrediction(
        word=word,
        chosen=chosen,
        scores=scores,
        method="companion",
        features_used=frozenset({FEATURE_COMPANIONS}),
        low_confidence=len(set(scores.values())) <= 1 and len(scores) > 1,
        ties=tied,
    )


def umfswe_predict(
    word: WordType,
    space: VectorSpace,
    db: WordNetDb,
    *,
    stoplist: frozenset[str] = DEFAULT_STOPLIST,
    include_examples: bool = True,
) -> MfsPrediction:
    """Word-vector-only baseline: cosine of sense vector vs word vector,
    with the narrower (synonyms/hypernyms/hyponyms plus glosses) keyword
    set. Exactly wct with chi = (1, 0, 0) and mode ``umfswe``."""
    return wct_predict(
        word,
        Chi(1.0, 0.0, 0.0),
        space,
        db,
        mode="umfswe",
        stoplist=stoplist,
        include_examples=include_examples,
        method="umfswe",
    )


def stable_word_seed(word: WordType, seed: int) -> int:
    """Order-independent per-word RNG seed (stable across processes)."""
    digest = hashlib.blake2b(
        f"{word.lemma}|{word.pos}|{seed}".encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


def random_predict(word: WordType, db: WordNetDb, seed: int = 0) -> MfsPrediction:
    """Uniformly random sense, deterministic given (word, seed)."""
    senses = db.senses(word)
    if not senses:
        raise NoPredictionError(word, "no senses in the database")
    rng = np.random.default_rng(stable_word_seed(word, seed))
    chosen = senses[int(rng.integers(len(senses)))]
    return MfsPrediction(
        word=word,
        chosen=chosen,
        scores={chosen: 1.0},
        method="random",
        features_used=frozenset(),
    )


# ---------------------------------------------------------------------------
# batch driver and serialization

METHODS = ("wct", "companion", "umfswe", "random")


@dataclass
class MfsResources:
    """Everything the scorers may need, bundled for batch prediction."""

    db: WordNetDb
    english: VectorSpace | None = None
    foreign: VectorSpace | None = None
    tmatrix: np.ndarray | None = None
    mft: MftTable | None = None
    cooc: CooccurrenceTable | None = None
    ic: IcTable | None = None
    k: int = 20
    stoplist: frozenset[str] = DEFAULT_STOPLIST


def predict_word(
    word: WordType,
    method: str,
    resources: MfsResources,
    chi: Chi = DEFAULT_CHI,
    mode: str = "extended",
    include_examples: bool = True,
    seed: int = 0,
) -> MfsPrediction:
    res = resources
    if method == "wct":
        if res.english is None:
            raise DataFormatError("wct prediction requires english vectors")
        companion_set = (
            top_companions(word, res.k, res.cooc) if res.cooc is not None else None
        )
        return wct_predict(
            word,
            chi,
            res.english,
            res.db,
            companion_set=companion_set,
            mft=res.mft,
            tmatrix=res.tmatrix,
            foreign=res.foreign,
            mode=mode,
            stoplist=res.stoplist,
            include_examples=include_examples,
        )
    if method == "companion":
        if res.cooc is None or res.ic is None:
            raise DataFormatError(
                "companion prediction requires a co-occurrence table and ic values"
            )
        return companion_predict(word, res.k, res.db, res.ic, res.cooc)
    if method == "umfswe":
        if res.english is None:
            raise DataFormatError("umfswe prediction requires english vectors")
        return umfswe_predict(
            word,
            res.english,
            res.db,
            stoplist=res.stoplist,
            include_examples=include_examples,
        )
    if method == "random":
        return random_predict(word, res.db, seed=seed)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def predict_many(
    words: Iterable[WordType],
    method: str,
    resources: MfsResources,
    **kwargs,
) -> tuple[dict[WordType, MfsPrediction], list[WordType]]:
    """Predict for each word; returns (predictions, unpredictable words)."""
    predictions: dict[WordType, MfsPrediction] = {}
    skipped: list[WordType] = []
    for word in words:
        try:
            predictions[word] = predict_word(word, method, resources, **kwargs)
        except NoPredictionError:
            skipped.append(word)
    return predictions, skipped


def write_predictions(
    predictions: Mapping[WordType, MfsPrediction], path: str | os.PathLike
) -> None:
    """TSV: lemma, pos, chosen synset, its score, method, features used."""
    order = (FEATURE_WORD, FEATURE_COMPANIONS, FEATURE_MFT)
    with open(path, "w", encoding="utf-8") as fh:
        for word in sorted(predictions):
            p = predictions[word]
            used = ",".join(f for f in order if f in p.features_used) or "-"
            score = p.scores[p.chosen]
            fh.write(
                f"{word.lemma}\t{word.pos}\t{p.chosen}\t{score:.6g}\t{p.method}\t{used}\n"
            )


def read_predictions(path: str | os.PathLike) -> dict[WordType, MfsPrediction]:
    predictions: dict[WordType, MfsPrediction] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 6:
                raise DataFormatError(f"{path}, line {lineno}: expected 6 fields")
            word = WordType(parts[0], parts[1])
            chosen = SynsetId.parse(parts[2])
            used = frozenset(parts[5].split(",")) - {"-"}
            predictions[word] = MfsPrediction(
                word=word,
                chosen=chosen,
                scores={chosen: float(parts[3])},
                method=parts[4],
                features_used=used,
            )
    return predictions
