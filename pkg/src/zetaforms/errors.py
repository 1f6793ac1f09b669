"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class PrecisionError(ArithmeticError):
    """The requested precision cannot support the computation (cancellation, floors)."""


class ConvergenceError(ArithmeticError):
    """An iterative or series computation failed to reach its target."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer after denominator clearing is not."""


class AmbiguityError(ArithmeticError):
    """A numerical decision (root count, sign) sits on a tolerance boundary."""
