"""Exception hierarchy shared across the linter."""

from __future__ import annotations


class RestLintError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RestLintError):
    """Input bytes are not parseable as JSON or YAML."""

    def __init__(self, message: str, position: str | None = None):
        super().__init__(message if position is None else f"{message} ({position})")
        self.position = position


class NotAnApiSpec(RestLintError):
    """Parsed document is not an OpenAPI/Swagger API description."""


class LexiconError(RestLintError):
    """Word-list data file is malformed or violates its invariants."""


class UnsupportedFormat(RestLintError):
    """Requested output format does not apply to the given payload."""


class EmptyCorpus(RestLintError):
    """Aggregation requested over an empty corpus."""


class ConfigError(RestLintError):
    """Lint configuration is invalid."""
