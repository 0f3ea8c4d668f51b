"""Exception hierarchy shared by all modules."""


class WeakmultError(Exception):
    """Base class for every error raised by this package."""


class DomainError(WeakmultError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """A query or range bound falls outside the tabulated range."""


class EmptyRangeError(DomainError):
    pass


class UndefinedValueError(DomainError):
    """The requested value does not exist (e.g. the largest prime factor of 1)."""


class RefusalError(DomainError):
    """A brute-force routine was asked for more than its hard-coded limits."""


class PartialResultError(DomainError):
    """Raised when a computation stops early.

    ``rows`` holds the completed rows and ``partial`` the partially filled
    result object, when there is one.
    """

    def __init__(self, message, rows, partial=None):
        super().__init__(message)
        self.rows = rows
        self.partial = partial
