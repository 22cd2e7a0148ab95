"""Exception types raised across the package."""


class OoidError(Exception):
    """Base class for all package errors."""


class DomainError(OoidError, ValueError):
    """Argument outside the domain of a function (non-finite, negative, ...)."""


class AccuracyError(OoidError, ArithmeticError):
    """Requested accuracy could not be reached.

    The best available estimate is kept on ``estimate`` so callers can decide
    whether it is still usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NotRealizableError(OoidError, ValueError):
    """Local parameters outside the realizable set (c1_hat > critical value)."""


class DegenerateLimitError(NotRealizableError):
    """c1_hat sits exactly on the critical value; the curve is unbounded."""


class NoZeroError(OoidError, ValueError):
    """Curvature profile has no zero (q = 0, constant curvature)."""


class InvariantError(OoidError, RuntimeError):
    """A numerical invariant that should always hold was violated."""


class DegeneracyError(OoidError, ValueError):
    """Degenerate geometry, e.g. coincident markers."""


class TopologyError(OoidError, RuntimeError):
    """The evolving polygon self-intersected or lost positive area."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
