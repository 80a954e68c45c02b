"""Exception hierarchy shared by every module.

The CLI maps these onto its exit codes, so keep the classes coarse.
"""


class CogrowthError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(CogrowthError, ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(CogrowthError):
    """A configured resource cap (states, terms, group order) was exceeded."""


class InconsistencyError(CogrowthError):
    """Internal cross-check failed; signals a bug or a malformed input system."""


class AmbiguityError(CogrowthError):
    """A series root is not determined by the supplied prefix."""

    def __init__(self, message: str, order: int):
        super().__init__(message)
        self.order = order


class PreconditionError(CogrowthError, ValueError):
    """Not enough data (terms, bounds) to run an operation soundly."""
