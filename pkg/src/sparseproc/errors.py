"""Exception types shared across the package."""


class SparseProcError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SparseProcError):
    """Invalid run configuration; names the offending field."""


class ParseError(SparseProcError):
    """A serialized document could not be parsed."""


class NumericalError(SparseProcError):
    """Base class for numerical failures (quadrature, fitting, consistency)."""


class QuadratureError(NumericalError):
    """Quadrature did not reach the requested accuracy.

    Carries the achieved error estimate in ``achieved``.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class PartialFractionError(NumericalError):
    """Partial-fraction fit failed; carries the condition number report."""

    def __init__(self, message, condition=None, residual=None):
        super().__init__(message)
        self.condition = condition
        self.residual = residual


class ConsistencyError(NumericalError):
    """Internal consistency violated (e.g. imaginary residue too large)."""
