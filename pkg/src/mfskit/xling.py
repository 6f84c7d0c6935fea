"""Cross-lingual linear mapping: learns a translation matrix taking
foreign word vectors into the English space, trained on pairs derived
from the most frequent translations of the most frequent English words.

The objective is unconstrained least squares, sum over pairs of
``|| T f_i - e_i ||^2``. Production uses the closed-form normal-equations
solution; a stochastic-gradient variant is kept alongside it and must
converge to the same optimum, which the tests verify against the
closed form and against finite differences.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import numpy as np

from .align import MftTable
from .embeddings import VectorSpace
from .errors import DataFormatError, NumericalError
from .wordnet import WordType

logger = logging.getLogger(__name__)


@dataclass
class TrainingPairs:
    """Paired vectors: english[i] should equal matrix @ foreign[i]."""

    english: np.ndarray  # (n, english dim)
    foreign: np.ndarray  # (n, foreign dim)
    words: list[tuple[WordType, str]]  # (english word, foreign token) for audit

    def __len__(self) -> int:
        return len(self.words)


def build_training_pairs(
    mft: MftTable,
    english: VectorSpace,
    foreign: VectorSpace,
    frequencies: dict[WordType, int],
    n: int = 5000,
) -> TrainingPairs:
    """Pairs from the ``n`` most frequent English words with usable data.

    Frequency order comes from corpus sentence counts; a word is usable
    when it has an English vector and its most frequent translation has
    a foreign vector. Skipped words are logged. Fewer than ``n`` usable
    words yields fewer pairs; zero is an error.
    """
    ranked = sorted(frequencies.items(), key=lambda item: (-item[1], item[0]))
    e_rows, f_rows, words = [], [], []
    for word, _count in ranked:
        if len(words) >= n:
            break
        entry = mft.get(word)
        if entry is None:
            continue
        e_vec = english.get(word.lemma)
        if e_vec is None:
            logger.info("skipping %s: no english vector", word)
            continue
        f_vec = foreign.get(entry.foreign)
        if f_vec is None:
            logger.info("skipping %s: no foreign vector for %r", word, entry.foreign)
            continue
        e_rows.append(e_vec)
        f_rows.append(f_vec)
        words.append((word, entry.foreign))
    if not words:
        raise DataFormatError("no usable translation pairs")
    pairs = TrainingPairs(
        english=np.asarray(e_rows), foreign=np.asarray(f_rows), words=words
    )
    if len(pairs) < pairs.foreign.shape[1]:
        logger.warning(
            "only %d pairs for foreign dimension %d; the matrix is underdetermined",
            len(pairs),
            pairs.foreign.shape[1],
        )
    return pairs


def objective(matrix: np.ndarray, pairs: TrainingPairs) -> float:
    """Sum of squared residuals ``|| T f_i - e_i ||^2`` over all pairs."""
    residual = pairs.foreign @ matrix.T - pairs.english
    return float(np.sum(residual * residual))


def learn_matrix_lsq(pairs: TrainingPairs, damping: float = 1e-6) -> np.ndarray:
    """Exact least-squares solution via the normal equations.

    Solves ``T (F F^T) = E F^T`` with E and F holding the vectors as
    columns; Tikhonov damping is applied only if the Gram matrix is
    singular, so well-posed instances are solved exactly.
    """
    f = pairs.foreign  # (n, df)
    e = pairs.english  # (n, de)
    gram = f.T @ f
    cross = e.T @ f
    try:
        solution = np.linalg.solve(gram, cross.T).T
        if not np.all(np.isfinite(solution)):
            raise np.linalg.LinAlgError("non-finite solution")
    except np.linalg.LinAlgError:
        damped = gram + damping * np.eye(gram.shape[0])
        solution = np.linalg.solve(damped, cross.T).T
    return solution


def sgd_gradient(matrix: np.ndarray, english: np.ndarray, foreign: np.ndarray) -> np.ndarray:
    """Mean over the batch of the per-pair gradient ``2 (T f - e) f^T``."""
    residual = foreign @ matrix.T - english  # (b, de)
    return 2.0 * residual.T @ foreign / len(foreign)


def learn_matrix_sgd(
    pairs: TrainingPairs,
    lr0: float = 0.01,
    epochs: int = 50,
    batch: int = 16,
    seed: int = 1,
    schedule: str = "linear",
) -> np.ndarray:
    """Mini-batch stochastic gradient descent on the same objective.

    The learning rate decays over steps: ``linear`` anneals to near zero
    across the run (the default; reaches the optimum on well-conditioned
    data), ``inverse`` uses lr0 / (1 + epoch). Raises
    :class:`NumericalError` when the objective rises five epochs in a
    row, which signals a too-large learning rate.
    """
    if len(pairs) == 0:
        raise DataFormatError("no training pairs")
    if schedule not in ("linear", "inverse"):
        raise ValueError(f"unknown schedule {schedule!r}")
    rng = np.random.default_rng(seed)
    de, df = pairs.english.shape[1], pairs.foreign.shape[1]
    matrix = np.zeros((de, df))
    n = len(pairs)
    steps_per_epoch = max(1, (n + batch - 1) // batch)
    total_steps = epochs * steps_per_epoch

    last_objective = np.inf
    rises = 0
    step = 0
    for epoch in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, batch):
            if schedule == "linear":
                lr = lr0 * max(1e-4, 1.0 - step / total_steps)
            else:
                lr = lr0 / (1.0 + epoch)
            chunk = order[start : start + batch]
            grad = sgd_gradient(matrix, pairs.english[chunk], pairs.foreign[chunk])
            matrix -= lr * grad
            step += 1
        current = objective(matrix, pairs)
        if not np.isfinite(current) or current > last_objective:
            rises += 1
            if rises >= 5 or not np.isfinite(current):
                raise NumericalError(
                    "gradient descent diverging; retry with a smaller learning rate"
                )
        else:
            rises = 0
        last_objective = current
    return matrix


def map_vector(matrix: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Image of a foreign vector in the English space."""
    if matrix.shape[1] != len(f):
        raise ValueError(
            f"dimension mismatch: matrix expects {matrix.shape[1]}, vector has {len(f)}"
        )
    return matrix @ f


def save_matrix(matrix: np.ndarray, path: str | os.PathLike) -> None:
    """Text format: ``<rows> <cols>`` header, then one row per line."""
    rows, cols = matrix.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{rows} {cols}\n")
        for row in matrix:
            fh.write(" ".join(f"{x:.12g}" for x in row) + "\n")


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DataFormatError(f"{path}, line 1: expected '<rows> <cols>'")
        rows, cols = int(header[0]), int(header[1])
        values = []
        for line in fh:
            values.extend(float(x) for x in line.split())
    if len(values) != rows * cols:
        raise DataFormatError(
            f"{path}: expected {rows * cols} values, found {len(values)}"
        )
    return np.array(values).reshape(rows, cols)
