"""Exception types shared across the package."""


class DiscspecError(Exception):
    """Base class for all package errors."""


class DomainError(DiscspecError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularShiftError(DiscspecError, ArithmeticError):
    """A resolvent was requested at (or numerically at) a spectral point."""


class NumericalError(DiscspecError, ArithmeticError):
    """Base class for numerical failures (exit code 3 in the CLI)."""


class ConvergenceError(NumericalError):
    """An iterative method exhausted its budget.

    ``diagnostics`` carries whatever residual information the method had.
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class QuadratureError(NumericalError):
    """Adaptive quadrature could not reach the requested tolerance."""


class ConfigError(DiscspecError, ValueError):
    """Invalid experiment configuration (exit code 2 in the CLI)."""


class NormalizationError(DomainError):
    """A holomorphic test function is not normalized by ``h(0) = 1``."""
