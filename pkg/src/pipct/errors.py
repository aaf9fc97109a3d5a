"""Exception types shared across the package."""


class EvaluationError(ValueError):
    """A target function returned a non-finite value at a quadrature node."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class PoleEvaluationError(ArithmeticError):
    """The denominator polynomial vanished at an evaluation point."""

    def __init__(self, message, x=None, theta=None):
        super().__init__(message)
        self.x = x
        self.theta = theta


class CellConstructionError(RuntimeError):
    """A per-cell approximant could not be built (or is missing on evaluation)."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class ConfigError(ValueError):
    """Invalid experiment configuration (bad JSON, schema violation, bad values)."""


class NumericalError(RuntimeError):
    """An experiment failed for numerical reasons (non-finite results, fatal build errors)."""
