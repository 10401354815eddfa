"""Exception types shared across the package."""


class StochentError(Exception):
    """Base class for all errors raised by stochent."""


class ShapeError(StochentError, ValueError):
    """Operands have incompatible or invalid shapes."""


class ValidationError(StochentError, ValueError):
    """An argument violates a mathematical precondition (not stochastic, not Hermitian, ...)."""


class ConvergenceError(StochentError, RuntimeError):
    """An iterative routine failed to converge, or numeric damage broke an invariant."""
