"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific type that applies rather than bare ValueError.
"""


class ConfigurationError(ValueError):
    """A parameter set violates a precondition (bad mesh sizes, horizons, ...)."""


class StabilityError(ConfigurationError):
    """The mesh-ratio constraint tau/h^2 < 1/(6*pi^2) is violated.

    Carries the offending ratio so callers can report it.
    """

    def __init__(self, message: str, cfl_ratio: float):
        super().__init__(message)
        self.cfl_ratio = cfl_ratio


class EvaluationDomainError(ValueError):
    """A pointwise evaluation was requested outside a function's domain."""


class NumericalError(RuntimeError):
    """A computation produced unusable numbers (divergence, overflow, NaN)."""


class SolverConvergenceError(NumericalError):
    """An iterative solve stopped at its cap without meeting tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class NonFiniteFieldError(NumericalError):
    """A lattice field acquired NaN or Inf entries."""
