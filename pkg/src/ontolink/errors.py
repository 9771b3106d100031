"""Exception types shared across the package."""

from __future__ import annotations


class OntolinkError(Exception):
    """Base class for every error this package raises deliberately."""


class RdfSyntaxError(OntolinkError):
    """Malformed RDF input. Carries the 1-based line number of the offence."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SchemaError(OntolinkError):
    """A file or payload does not match its declared schema."""


class DuplicateCurieError(OntolinkError):
    """Two records share the same CURIE where uniqueness is required."""


class UnknownCurieError(OntolinkError):
    """A CURIE was referenced that is not present in the loaded dump."""


class DimensionMismatchError(OntolinkError):
    """A vector's dimension does not match the index it is queried against."""


class ProviderError(OntolinkError):
    """An embedding or completion provider failed to produce a usable response."""


class EmptyCandidatesError(OntolinkError):
    """An agent prompt was requested for an empty candidate list."""


class MalformedResponseError(OntolinkError):
    """An agent response contained no parseable JSON object."""


class MissingKeyError(MalformedResponseError):
    """An agent response parsed as JSON but lacked a required key."""


class MissingGoldError(OntolinkError):
    """A run record's mention has no matching gold annotation."""


class EmptyRunError(OntolinkError):
    """Metrics were requested over zero run records."""


class MentionMismatchError(OntolinkError):
    """Two runs being compared do not cover the same mentions."""

    def __init__(self, message: str, mentions: list[str]):
        super().__init__(message)
        self.mentions = mentions
