"""Exception hierarchy shared by all modules."""


class ScgdError(Exception):
    """Base class for every error raised by this package."""


class DegenerateError(ScgdError, ValueError):
    """Raised when a geometric construction hits a degenerate configuration."""


class PreconditionError(ScgdError, ValueError):
    """Raised when an operation is called outside of its domain."""


class ModeError(ScgdError, TypeError):
    """Raised when exact and floating-point values are mixed."""


class BudgetError(ScgdError, RuntimeError):
    """Raised when a brute-force oracle would exceed its enumeration budget."""
