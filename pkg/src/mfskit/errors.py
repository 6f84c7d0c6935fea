"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage errors exit 1, data/format
errors exit 2, numerical failures exit 3.
"""


class MfskitError(Exception):
    """Base class for all package errors."""


class UsageError(MfskitError):
    """Bad command-line arguments or inconsistent configuration."""


class DataFormatError(MfskitError):
    """Malformed or missing input data (corpora, databases, artifacts)."""


class WordNetLoadError(DataFormatError):
    """WordNet database files missing or unparseable."""


class NumericalError(MfskitError):
    """A numerical procedure failed (e.g. diverging gradient descent)."""


class NoPredictionError(MfskitError):
    """A scorer could not produce a sense prediction for a word.

    Carries the word so batch drivers can record it and let the
    evaluation layer apply a backoff.
    """

    def __init__(self, word, reason: str):
        self.word = word
        self.reason = reason
        super().__init__(f"no prediction for {word}: {reason}")
