"""Exception types shared across the package."""


class CbhError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CbhError, ValueError):
    """An argument lies outside the mathematically valid domain."""


class BudgetExceededError(CbhError, RuntimeError):
    """A summation could not reach the requested accuracy within its term budget."""


class MethodDisagreementError(CbhError, RuntimeError):
    """Two independent summation routes disagree beyond their combined error bounds."""


class UnknownIdentityError(CbhError, KeyError):
    """An identity id is not present in the catalog."""
