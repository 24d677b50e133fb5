"""Exception types raised by the simulation modules."""


class BirefringenceError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BirefringenceError, ValueError):
    """An input lies outside the domain where an operation is defined."""


class SingularityError(DomainError):
    """Evaluation at (or numerically at) a zero of the filtered amplitude or a pole."""


class DegenerateLoopError(DomainError):
    """A winding loop passes through a zero of the amplitude."""


class SolverError(BirefringenceError, RuntimeError):
    """Root bracketing or bisection failed to produce the requested extrema."""


class QuadratureError(BirefringenceError, ArithmeticError):
    """The frequency integrand produced a non-finite sample."""

    def __init__(self, message, omega=None):
        super().__init__(message)
        self.omega = omega
