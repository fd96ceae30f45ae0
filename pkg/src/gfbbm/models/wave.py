"""Solitary-wave data models."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..utils.exceptions import ConfigurationError, NoSolutionError
from .enums import Branch
from .grid import SpectralGrid
from .params import ModelParams


@dataclass
class PetviashviliSettings:
    """Controls for the Petviashvili fixed-point iteration.

    ``nu`` defaults to (p+1)/p for the p of the problem being solved. The seed
    is either an explicit array or a Gaussian ``amplitude * exp(-x^2/width^2)``;
    unset amplitude/width fall back to the ground-state scaling of the wave.
    """

    tolerance: float = 1e-12
    max_iterations: int = 500
    nu: Optional[float] = None
    initial_amplitude: Optional[float] = None
    initial_width: Optional[float] = None
    initial_guess: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ConfigurationError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ConfigurationError(
                f"max_iterations must be at least 1, got {self.max_iterations}"
            )

    def exponent(self, p: int) -> float:
        """Stabilizing-factor exponent."""
        return self.nu if self.nu is not None else (p + 1.0) / p


@dataclass(frozen=True)
class GroundStateMap:
    """Scaling Q_c(x) = sign * amplitude_factor * phi(length_factor * x)."""

    amplitude_factor: float
    length_factor: float
    sign: int

    @classmethod
    def from_params(cls, params: ModelParams) -> "GroundStateMap":
        """Scaling for the branch selected by ``params``."""
        branch = params.branch
        if branch is Branch.NONE:
            raise NoSolutionError(
                f"no solitary-wave branch at c={params.c}, p={params.p} "
                "(requires c > 1, or c < 3/5 with p odd)"
            )
        return cls(params.amplitude_factor, params.theta, branch.sign)


@dataclass
class SolitaryWave:
    """Converged samples of a travelling-wave profile Q_c."""

    params: ModelParams
    grid: SpectralGrid
    profile: np.ndarray = field(repr=False)
    residual: float
    iterations: int = 0
    stabilizing_factor_history: np.ndarray = field(
        default_factory=lambda: np.empty(0), repr=False
    )
    warnings: List[str] = field(default_factory=list)

    @property
    def branch(self) -> Branch:
        return self.params.branch

    @property
    def peak(self) -> float:
        """Signed extremum of the profile."""
        index = int(np.argmax(np.abs(self.profile)))
        return float(self.profile[index])

    @property
    def peak_magnitude(self) -> float:
        return float(np.max(np.abs(self.profile)))

    def scaled(self, gamma: float) -> np.ndarray:
        """Perturbed samples gamma * Q_c."""
        return gamma * self.profile


@dataclass
class GroundState:
    """Samples of the normalized ground state phi: D^a phi + phi - phi^(p+1) = 0."""

    alpha: float
    p: int
    grid: SpectralGrid
    profile: np.ndarray = field(repr=False)
    residual: float
    iterations: int = 0
    stabilizing_factor_history: np.ndarray = field(
        default_factory=lambda: np.empty(0), repr=False
    )

    def norm_squared(self) -> float:
        """Quadrature of phi^2."""
        return float(self.grid.spacing * np.sum(self.profile ** 2))
