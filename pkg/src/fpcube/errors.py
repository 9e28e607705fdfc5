"""Exception types raised across the package."""


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class ParameterError(ValueError):
    """A numerical or instrument parameter is out of its valid range."""


class DivergenceError(RuntimeError):
    """The solver produced a non-finite iterate."""

    def __init__(self, iteration, message=None):
        self.iteration = iteration
        super().__init__(message or f"non-finite iterate at iteration {iteration}")


class CubeFileError(ValueError):
    """A cube file is malformed or of the wrong kind."""
