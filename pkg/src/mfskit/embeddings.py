"""Word vectors: a skip-gram negative-sampling trainer, a text-format
loader for externally trained vectors, and the similarity helpers.

The trainer is single-process and deterministic for a fixed seed:
per-position updates follow the usual skip-gram recipe (one positive
context plus ``negatives`` draws from the unigram^0.75 distribution,
learning rate decaying linearly over the token stream). Frequent-word
subsampling uses the standard discard probability 1 - (sqrt(t/f) + t/f).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DataFormatError


@dataclass
class VectorSpace:
    dim: int
    vectors: dict[str, np.ndarray]
    language: str = ""

    def __post_init__(self):
        for token, vec in self.vectors.items():
            if len(vec) != self.dim or not np.all(np.isfinite(vec)):
                raise ValueError(f"bad vector for {token!r}")

    def get(self, token: str) -> np.ndarray | None:
        return self.vectors.get(token)

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass
class SkipgramParams:
    dim: int = 200
    window: int = 5
    negatives: int = 5
    min_count: int = 5
    subsample: float = 1e-3
    epochs: int = 5
    lr0: float = 0.025
    seed: int = 1


def train_skipgram(
    sentences: Sequence[list[str]],
    params: SkipgramParams | None = None,
    language: str = "",
    **overrides,
) -> VectorSpace:
    """Train skip-gram vectors over tokenized sentences held in memory.

    Tokens below ``min_count`` are dropped; an empty vocabulary after
    filtering is an error. Keyword overrides patch individual fields of
    ``params`` (``dim=50`` etc.).
    """
    p = params or SkipgramParams()
    if overrides:
        p = SkipgramParams(**{**p.__dict__, **overrides})

    counts: dict[str, int] = {}
    for sentence in sentences:
        for token in sentence:
            counts[token] = counts.get(token, 0) + 1
    vocab = [t for t, c in sorted(counts.items()) if c >= p.min_count]
    if not vocab:
        raise DataFormatError(
            f"empty vocabulary: no token reaches min_count={p.min_count}"
        )
    token_id = {t: i for i, t in enumerate(vocab)}
    freq = np.array([counts[t] for t in vocab], dtype=np.float64)
    total_tokens = float(freq.sum())

    # negative-sampling distribution: unigram^0.75
    noise = freq**0.75
    noise_cdf = np.cumsum(noise / noise.sum())

    # subsampling keep probability per vocabulary word
    if p.subsample > 0:
        ratio = p.subsample / (freq / total_tokens)
        keep = np.minimum(1.0, np.sqrt(ratio) + ratio)
    else:
        keep = np.ones(len(vocab))

    rng = np.random.default_rng(p.seed)
    syn0 = (rng.random((len(vocab), p.dim)) - 0.5) / p.dim
    syn1 = np.zeros((len(vocab), p.dim))

    encoded = [
        np.array([token_id[t] for t in sentence if t in token_id], dtype=np.int64)
        for sentence in sentences
    ]
    encoded = [s for s in encoded if len(s) > 0]
    stream_total = p.epochs * sum(len(s) for s in encoded)
    lr_floor = p.lr0 * 1e-4

    processed = 0
    for _epoch in range(p.epochs):
        for ids in encoded:
            if p.subsample > 0:
                ids = ids[rng.random(len(ids)) < keep[ids]]
            length = len(ids)
            for pos in range(length):
                processed += 1
                center = ids[pos]
                lr = max(lr_floor, p.lr0 * (1.0 - processed / (stream_total + 1)))
                # word2vec-style randomly shrunk window
                span = int(rng.integers(1, p.window + 1))
                lo, hi = max(0, pos - span), min(length, pos + span + 1)
                for ctx_pos in range(lo, hi):
                    if ctx_pos == pos:
                        continue
                    context = ids[ctx_pos]
                    negs = np.searchsorted(
                        noise_cdf, rng.random(p.negatives)
                    ).astype(np.int64)
                    negs = negs[negs != context]
                    out_ids = np.concatenate(([context], negs))
                    labels = np.zeros(len(out_ids))
                    labels[0] = 1.0
                    out_vecs = syn1[out_ids]  # fancy index: copies the old rows
                    center_vec = syn0[center]
                    scores = out_vecs @ center_vec
                    gradient = (labels - _sigmoid(scores)) * lr
                    # both updates use the pre-update values; add.at handles
                    # repeated negative draws of the same word
                    np.add.at(syn1, out_ids, gradient[:, None] * center_vec)
                    syn0[center] = center_vec + gradient @ out_vecs
    vectors = {t: syn0[i].copy() for t, i in token_id.items()}
    return VectorSpace(dim=p.dim, vectors=vectors, language=language)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -30.0, 30.0)))


def save_vectors(space: VectorSpace, path: str | os.PathLike) -> None:
    """Text format: header ``<count> <dim>``, then one token per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(space.vectors)} {space.dim}\n")
        for token in sorted(space.vectors):
            comps = " ".join(f"{x:.8g}" for x in space.vectors[token])
            fh.write(f"{token} {comps}\n")


def load_vectors(path: str | os.PathLike, language: str = "") -> VectorSpace:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DataFormatError(f"{path}, line 1: expected '<count> <dim>' header")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError:
            raise DataFormatError(f"{path}, line 1: non-numeric header")
        vectors: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(fh, 2):
            parts = line.rstrip("\n").split(" ")
            parts = [x for x in parts if x]
            if not parts:
                continue
            token, comps = parts[0], parts[1:]
            if len(comps) != dim:
                raise DataFormatError(
                    f"{path}, line {lineno}: expected {dim} components, got {len(comps)}"
                )
            vectors[token] = np.array([float(x) for x in comps])
    if len(vectors) != count:
        raise DataFormatError(
            f"{path}: header declares {count} vectors, found {len(vectors)}"
        )
    return VectorSpace(dim=dim, vectors=vectors, language=language)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity; pairs involving a zero vector score 0."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    norm = float(np.linalg.norm(a)) * float(np.linalg.norm(b))
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(a, b) / norm, -1.0, 1.0))


def average(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Componentwise mean; the empty case is the caller's decision."""
    if len(vectors) == 0:
        raise ValueError("cannot average zero vectors")
    return np.mean(np.asarray(vectors, dtype=np.float64), axis=0)
