"""Exception types raised across the package."""


class GradeError(ValueError):
    """An operation received an octon with grades it is not defined for."""


class GridMismatchError(ValueError):
    """Fields that must share a lattice were built on different grids."""


class PathMismatchError(ArithmeticError):
    """The octonic and classical routes to the same quantity disagree."""


class MissingDerivativeError(ValueError):
    """A time derivative needed by the operation was not supplied."""


class NumericalAbort(FloatingPointError):
    """The time integrator produced a non-finite value."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
