# Exception hierarchy shared by every qh_covers module.
# The CLI maps these onto exit codes.


class QHCoversError(Exception):
    """Base class for all errors raised by qh_covers."""


class DomainMismatchError(QHCoversError, ValueError):
    """Raised when an operation gets the wrong coefficient domain or algebra."""


class InvalidInputError(QHCoversError, ValueError):
    """Raised for malformed user input: ring specs, parameters, files."""


class NotProjectiveError(QHCoversError):
    """Raised when a module expected to be projective fails the test."""


class VerificationError(QHCoversError):
    """Raised when a constructed object violates one of its own invariants."""
