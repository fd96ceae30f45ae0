"""Conserved quantities of the gfBBM flow."""

import numpy as np

from ..models.grid import SpectralGrid
from ..utils.constants import Constants
from . import spectral


def mass(field: np.ndarray, grid: SpectralGrid) -> float:
    """I(u) = integral of u."""
    return spectral.quadrature(field, grid)


def momentum(field: np.ndarray, alpha: float, grid: SpectralGrid) -> float:
    """F(u) = 1/2 integral of u^2 + (5/4)|D^(a/2) u|^2."""
    return 0.5 * spectral.weighted_norm_squared(field, spectral.bbm_symbol(alpha, grid), grid)


def energy(field: np.ndarray, alpha: float, p: int, grid: SpectralGrid) -> float:
    """H(u) = -1/2 integral of u^2 + u^(p+2)/(p+2) + (3/4)|D^(a/2) u|^2."""
    field = spectral.check_length(field, grid)
    weight = 1.0 + Constants.KDV_COEFFICIENT * grid.abs_wavenumbers ** alpha
    quadratic = spectral.weighted_norm_squared(field, weight, grid)
    nonlinear = spectral.quadrature(field ** (p + 2), grid) / (p + 2)
    return -0.5 * (quadratic + nonlinear)
