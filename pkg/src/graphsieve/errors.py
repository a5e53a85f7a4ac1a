"""Exception types shared across the package."""


class GraphSieveError(Exception):
    """Base class for all package errors."""


class DomainError(GraphSieveError, ValueError):
    """An argument is outside the domain an operation is defined on.

    Covers invalid shapes, out-of-range probabilities, and violated
    theorem preconditions.
    """


class ResourceError(GraphSieveError, RuntimeError):
    """A computation would exceed a configured resource budget."""
