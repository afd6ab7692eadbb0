from __future__ import annotations


class CasimirError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of the operation (usually a caller bug)."""


class ConfigurationError(CasimirError, ValueError):
    """Invalid material, provider or run configuration."""


class NumericalFailure(CasimirError, RuntimeError):
    """A sum or integral failed to converge within its budget.

    ``partial`` carries whatever diagnostics were available when the budget ran out.
    """

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = dict(partial or {})
