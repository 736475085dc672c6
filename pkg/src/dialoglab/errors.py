"""Exception types shared across the package."""


class DialogLabError(Exception):
    """Base class for all package errors."""


class CorpusError(DialogLabError):
    """Raised for malformed or unusable corpus input."""


class InsufficientDataError(DialogLabError):
    """Raised when a training set is too small or degenerate to fit."""


class NlgError(DialogLabError):
    """Raised when no surface form can be produced for an act."""


class EvalError(DialogLabError):
    """Raised for undefined metric computations (e.g. zero-variance correlation)."""


class ServiceError(DialogLabError):
    """Base class for chat-service errors."""


class UnknownSystemError(ServiceError, LookupError):
    """Raised when a session names a system id that is not registered."""


class UnknownSessionError(ServiceError, LookupError):
    """Raised for operations on a session id that does not exist."""


class SessionClosedError(ServiceError):
    """Raised when messaging or surveying a session that no longer accepts it."""


class DuplicateSurveyError(ServiceError):
    """Raised when a session already holds a survey."""
