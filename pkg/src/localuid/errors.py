"""Exception hierarchy shared by every module."""


class LocalUIDError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LocalUIDError):
    """Input text is not well-formed (bad JSON, missing keys, wrong types)."""


class ValidationError(LocalUIDError):
    """Input is well-formed but violates a contract (range, duplicates, ...)."""


class DimensionError(ValidationError):
    """Array shapes do not agree with the model configuration."""


class MissingColorTable(ValidationError):
    """A node's color has no embedding table in the parameter set."""


class ComplexityError(LocalUIDError):
    """An exhaustive search would exceed its configured size cap."""
