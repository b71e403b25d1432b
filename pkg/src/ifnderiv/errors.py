"""Exception hierarchy shared across the package."""


class IFNError(Exception):
    """Base class for every error raised by :mod:`ifnderiv`."""


class ParameterError(IFNError, ValueError):
    """Invalid check parameters (alpha out of range, empty grid, ...)."""


class EvaluationError(IFNError, ValueError):
    """A user-supplied map produced a value outside its declared codomain."""

    def __init__(self, message, inputs=None):
        super().__init__(message)
        self.inputs = inputs


class DomainError(IFNError, ValueError):
    """Argument outside the domain of a membership map (e.g. ``t <= 0``)."""


class ShapeError(IFNError, ValueError):
    """Vector dimension does not match the space it is evaluated in."""


class AxiomViolationError(IFNError, ValueError):
    """A membership pair breaks ``mu + nu <= 1``, ``mu > 0`` or ``nu < 1``."""

    def __init__(self, message, x=None, t=None):
        super().__init__(message)
        self.x = x
        self.t = t


class NumericError(IFNError, ArithmeticError):
    """A residual or function value became non-finite."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DegenerateSampleError(IFNError, ValueError):
    """A sample makes a membership denominator vanish."""


class UnsupportedOrderError(IFNError, ValueError):
    """Requested derivative order exceeds the accuracy guard."""


class ConfigError(IFNError, ValueError):
    """Malformed or invalid run configuration."""

    def __init__(self, message, field=None, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.field = field
        self.line = line
