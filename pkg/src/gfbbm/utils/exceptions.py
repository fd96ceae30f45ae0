"""Exception hierarchy for gfbbm-lab."""

from typing import Optional


class LabError(Exception):
    """Base class for every error raised by the laboratory."""


class ConfigurationError(LabError):
    """A parameter violates a documented precondition."""


class DimensionError(LabError):
    """Array length does not match the grid."""


class SymmetryError(LabError):
    """A Fourier multiplier produced a non-real field."""


class ExistenceError(LabError):
    """No solitary wave exists for the requested parameters."""


class HamiltonianUndefinedError(ExistenceError):
    """alpha <= p/(p+2): the Hamiltonian is not well defined."""


class NoSolutionError(ExistenceError):
    """Wave speed inside the empty strip 3/5 <= c <= 1 (or no branch for this p)."""


class NonConvergenceError(LabError):
    """Iteration budget exhausted before the convergence gates were met."""

    def __init__(self, message: str, last_residual: float, iterations: int):
        super().__init__(message)
        self.last_residual = last_residual
        self.iterations = iterations


class DivergenceError(LabError):
    """NaN or Inf appeared in an iterate."""


class DomainError(LabError):
    """Requested samples fall outside the domain of the supplied profile."""


class DegenerateInputError(LabError):
    """Input has zero norm where a nonzero profile is required."""


class ResourceError(LabError):
    """Dense assembly requested above the configured size cap."""


class NumericError(LabError):
    """A linear-algebra routine failed."""


class BlowUpError(LabError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, message: str, last_finite_time: Optional[float] = None):
        super().__init__(message)
        self.last_finite_time = last_finite_time


class NoRealRootError(LabError):
    """dK/dc has no real zero for these parameters."""
