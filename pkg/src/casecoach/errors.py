"""Exception types shared across the package."""


class CasecoachError(Exception):
    """Base class for all casecoach errors."""


class SchemaError(CasecoachError):
    """A schema is invalid, or a value violates it.

    Carries the offending parameter name when one is known so that
    validation reports can point at it.
    """

    def __init__(self, message: str, parameter: str | None = None):
        super().__init__(message if parameter is None else f"{parameter}: {message}")
        self.parameter = parameter


class ArgumentError(CasecoachError):
    """An operation was called with inconsistent arguments."""


class IncompleteDataError(CasecoachError):
    """A computation needs coverage (e.g. a value for every parameter) it did not get."""


class SequencingError(CasecoachError):
    """A dialogue operation was invoked out of order."""


class AccessError(CasecoachError):
    """The caller does not own the requested record."""


class NotFoundError(CasecoachError):
    """Unknown identifier."""
