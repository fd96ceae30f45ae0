"""Utility modules for gfbbm-lab."""

from .constants import Constants
from .exceptions import (
    LabError, ConfigurationError, DimensionError, SymmetryError, ExistenceError,
    HamiltonianUndefinedError, NoSolutionError, NonConvergenceError, DivergenceError,
    DomainError, DegenerateInputError, ResourceError, NumericError, BlowUpError,
    NoRealRootError,
)
from .helpers import ValidationHelper
from .logging_setup import configure_logging

__all__ = [
    "Constants", "ValidationHelper", "configure_logging",
    "LabError", "ConfigurationError", "DimensionError", "SymmetryError",
    "ExistenceError", "HamiltonianUndefinedError", "NoSolutionError",
    "NonConvergenceError", "DivergenceError", "DomainError", "DegenerateInputError",
    "ResourceError", "NumericError", "BlowUpError", "NoRealRootError",
]
