from __future__ import annotations


class ExporterError(Exception):
    """Base class for exporter failures."""


class UnknownModel(ExporterError):
    """The encoder model id cannot be resolved to weights."""


class TokenizationFailure(ExporterError):
    """A review could not be tokenized; carries the review id."""


class WriteError(ExporterError):
    """The output file could not be written."""


class CorpusError(ExporterError):
    """The corpus path does not satisfy the documented layout."""
