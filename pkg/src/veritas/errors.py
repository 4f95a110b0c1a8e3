"""Exception hierarchy shared by every veritas module.

The CLI maps these onto exit codes: ConfigError -> 1, DataError (and all
its subclasses) -> 2, InternalError -> 3.
"""

from __future__ import annotations


class VeritasError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(VeritasError):
    """Bad usage: invalid flag, config field, or hyperparameter value."""


class ConfigInvalid(ConfigError):
    """An ExperimentConfig fails validation."""


class InternalError(VeritasError):
    """An internal invariant was violated; indicates a bug, not bad input."""


class DataError(VeritasError):
    """Base class for problems with input data, files, or fitted state."""


# --- corpus ---------------------------------------------------------------

class MissingLabelPath(DataError):
    """A corpus file path encodes neither label substring."""


class CorpusEmpty(DataError):
    """No reviews were found where some were required."""


class EncodingError(DataError):
    """A corpus file is not valid UTF-8."""


class EmptyReviewText(DataError):
    """A review body is empty after whitespace trimming."""


class MissingColumn(DataError):
    """A required CSV column is absent from the header."""


class UnmappedLabel(DataError):
    """A CSV label cell has no entry in the configured label map."""


class DegenerateSplit(DataError):
    """A train/test split would leave one side empty."""


# --- embedding ------------------------------------------------------------

class EmptyText(DataError):
    """No tokens survive tokenization."""


class EmptyTokenList(DataError):
    """Pooling was asked to combine zero token vectors."""


class DimensionMismatch(DataError):
    """Vector or matrix width differs from the expected dimension."""


class EmptyVocabulary(DataError):
    """No token survives the vectorizer's document-frequency threshold."""


class UnknownReviewId(DataError):
    """A requested review id is absent from an embedding matrix."""


class BadMagic(DataError):
    """An embedding file does not start with the FRVE magic bytes."""


class UnsupportedVersion(DataError):
    """An embedding file declares a format version this reader cannot parse."""


class TruncatedPayload(DataError):
    """An embedding file ends before its declared contents are complete."""


class IdCountMismatch(DataError):
    """An embedding file's id records do not match its declared row count."""


class NonFiniteValue(DataError):
    """An embedding value is NaN or infinite."""


# --- classifiers ----------------------------------------------------------

class DegenerateLabels(DataError):
    """Training data contains only one of the two classes."""


class NonFiniteFeature(DataError):
    """A feature matrix contains NaN or infinite entries."""


class KTooLarge(DataError):
    """k exceeds the number of stored training rows."""


class NonFiniteLoss(DataError):
    """Gradient descent diverged to a non-finite loss."""


# --- evaluation -----------------------------------------------------------

class LengthMismatch(DataError):
    """True and predicted label sequences differ in length."""


class EmptyInput(DataError):
    """An evaluation was requested over zero predictions."""


class UnknownClassifier(DataError):
    """A classifier kind has no row in the reference comparison table."""


# --- bundles --------------------------------------------------------------

class UnsupportedBundleVersion(DataError):
    """A model bundle declares a format version this loader cannot parse."""


class CorruptBundle(DataError):
    """A model bundle fails its checksum or cannot be parsed."""


class FingerprintMismatch(DataError):
    """Features offered at predict time do not match the bundle's pipeline."""
