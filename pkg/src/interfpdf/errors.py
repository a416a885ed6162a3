"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole (e.g. gamma at -2, eta = 2)."""


class ConvergenceError(RuntimeError):
    """A series did not converge within the term budget."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


class BackendError(RuntimeError):
    """The requested evaluation backend cannot handle the given parameters."""


class ParameterMismatchError(ValueError):
    """Two supposedly-consistent configurations disagree."""
