"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid measure, catalog or algorithm parameters."""


class QuadratureError(RuntimeError):
    """Quadrature could not produce a trustworthy value."""


class EigenConvergenceError(RuntimeError):
    """The tridiagonal eigensolver hit its iteration cap."""
