"""Unsupervised most-frequent-sense detection from raw (bi)text.

Subpackages cover the full pipeline: corpus statistics and companion
extraction, WordNet parsing with jcn similarity, skip-gram embeddings,
bitext word alignment with most-frequent-translation extraction, the
cross-lingual translation matrix, the sense scorers, and the evaluation
protocols. ``mfskit.cli`` wires the stages into a cached pipeline.
"""

from .errors import (
    DataFormatError,
    MfskitError,
    NoPredictionError,
    NumericalError,
    UsageError,
    WordNetLoadError,
)
from .wordnet import SynsetId, WordType

__all__ = [
    "DataFormatError",
    "MfskitError",
    "NoPredictionError",
    "NumericalError",
    "UsageError",
    "WordNetLoadError",
    "SynsetId",
    "WordType",
]

__version__ = "0.1.0"
