"""Periodic Fourier collocation operations.

All transforms use the unnormalized forward FFT, so Parseval reads
``h * sum(u**2) == (h / N) * sum(abs(u_hat)**2)``. Fields stay real in
physical space: every multiplier application checks the imaginary residue
and discards it.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import fft as sfft

from ..models.grid import SpectralGrid
from ..utils.constants import Constants
from ..utils.exceptions import ConfigurationError, DimensionError, SymmetryError
from ..utils.helpers import ValidationHelper

logger = logging.getLogger(__name__)

Symbol = Callable[[np.ndarray], np.ndarray]


def make_grid(half_length: float, n_points: int) -> SpectralGrid:
    """Uniform periodic grid on [-L, L) with N (a power of two) nodes."""
    ValidationHelper.require(ValidationHelper.validate_positive("half_length", half_length))
    ValidationHelper.require(
        ValidationHelper.validate_power_of_two("n_points", n_points, Constants.MIN_N_POINTS)
    )
    grid = SpectralGrid.create(half_length, n_points)
    logger.debug("grid L=%g N=%d spacing=%g", half_length, n_points, grid.spacing)
    return grid


def check_length(field: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Return ``field`` as a float array, raising DimensionError on mismatch."""
    array = np.asarray(field, dtype=float)
    if array.ndim != 1 or array.shape[0] != grid.n_points:
        raise DimensionError(
            f"field has shape {array.shape}, grid expects ({grid.n_points},)"
        )
    return array


def forward(field: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Full complex spectrum in FFT order."""
    return sfft.fft(check_length(field, grid))


def inverse(spectrum: np.ndarray, grid: SpectralGrid, scale: Optional[float] = None) -> np.ndarray:
    """Real field from a spectrum, rejecting imaginary residue above tolerance."""
    values = sfft.ifft(spectrum)
    real = values.real
    if scale is None:
        scale = float(np.max(np.abs(real))) if real.size else 0.0
    residue = float(np.max(np.abs(values.imag))) if real.size else 0.0
    if residue > Constants.SYMMETRY_TOLERANCE * max(scale, np.finfo(float).tiny):
        raise SymmetryError(
            f"multiplier output has imaginary part {residue:.3e} "
            f"(field scale {scale:.3e}); symbol(-xi) must equal conj(symbol(xi))"
        )
    return real


def apply_multiplier(field: np.ndarray, multiplier: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Multiply the spectrum pointwise by ``multiplier`` (FFT order) and invert."""
    field = check_length(field, grid)
    spectrum = sfft.fft(field) * multiplier
    scale = float(np.max(np.abs(field))) * float(np.max(np.abs(multiplier)))
    return inverse(spectrum, grid, scale=scale)


def apply_symbol(field: np.ndarray, symbol: Symbol, grid: SpectralGrid) -> np.ndarray:
    """Apply the Fourier multiplier ``symbol(xi)``.

    The unpaired Nyquist bin receives the real part of the symbol, the average
    of symbol(xi_N) and symbol(-xi_N); odd symbols such as i*xi vanish there.
    """
    multiplier = np.asarray(symbol(grid.wavenumbers), dtype=complex)
    if multiplier.shape != grid.wavenumbers.shape:
        multiplier = np.broadcast_to(multiplier, grid.wavenumbers.shape).copy()
    else:
        multiplier = multiplier.copy()
    nyquist = grid.n_points // 2
    multiplier[nyquist] = multiplier[nyquist].real
    return apply_multiplier(field, multiplier, grid)


def fractional_derivative(field: np.ndarray, order: float, grid: SpectralGrid) -> np.ndarray:
    """Riesz operator D^order: multiplier |xi|^order."""
    if order < 0:
        raise ConfigurationError(f"fractional order must be nonnegative, got {order}")
    return apply_multiplier(field, grid.abs_wavenumbers ** order, grid)


def derivative(field: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Spectral first derivative (Nyquist mode zeroed)."""
    return apply_multiplier(field, 1j * grid.odd_wavenumbers, grid)


def bbm_symbol(alpha: float, grid: SpectralGrid) -> np.ndarray:
    """1 + (5/4)|xi|^alpha in FFT order; never below 1."""
    return 1.0 + Constants.BBM_COEFFICIENT * grid.abs_wavenumbers ** alpha


def apply_bbm_operator(field: np.ndarray, alpha: float, grid: SpectralGrid) -> np.ndarray:
    """v -> v + (5/4) D^alpha v."""
    return apply_multiplier(field, bbm_symbol(alpha, grid), grid)


def invert_bbm_operator(field: np.ndarray, alpha: float, grid: SpectralGrid) -> np.ndarray:
    """(I + (5/4) D^alpha)^-1 by spectral division."""
    return apply_multiplier(field, 1.0 / bbm_symbol(alpha, grid), grid)


def quadrature(field: np.ndarray, grid: SpectralGrid) -> float:
    """Trapezoidal (spectrally exact for periodic data) integral."""
    return float(grid.spacing * np.sum(check_length(field, grid)))


def weighted_norm_squared(
    field: np.ndarray, weight: np.ndarray, grid: SpectralGrid
) -> float:
    """(h/N) * sum weight * |u_hat|^2, i.e. the integral of u * W(D) u."""
    spectrum = forward(field, grid)
    return float(grid.spectral_weight() * np.sum(weight * np.abs(spectrum) ** 2))


def spectral_inner(first_hat: np.ndarray, second_hat: np.ndarray, grid: SpectralGrid) -> float:
    """Real L2 inner product of two fields given by their spectra."""
    return float(grid.spectral_weight() * np.real(np.sum(first_hat * np.conj(second_hat))))


def spectral_shift(field: np.ndarray, shift: float, grid: SpectralGrid) -> np.ndarray:
    """Periodic translate u(x - shift) through the trigonometric interpolant."""
    phase = np.exp(-1j * grid.wavenumbers * shift)
    phase[grid.n_points // 2] = np.cos(grid.wavenumbers[grid.n_points // 2] * shift)
    return apply_multiplier(field, phase, grid)


def interpolate(
    field: np.ndarray, points: Sequence[float], grid: SpectralGrid, chunk: int = 256
) -> np.ndarray:
    """Evaluate the trigonometric interpolant of ``field`` at arbitrary points."""
    spectrum = forward(field, grid) / grid.n_points
    points = np.atleast_1d(np.asarray(points, dtype=float))
    offsets = points + grid.half_length
    nyquist = grid.n_points // 2
    xi = grid.odd_wavenumbers
    result = np.empty(points.shape[0])
    for start in range(0, points.shape[0], chunk):
        stop = start + chunk
        phases = np.exp(1j * np.outer(offsets[start:stop], xi))
        values = phases @ spectrum
        values += (
            spectrum[nyquist]
            * (np.cos(grid.abs_wavenumbers[nyquist] * offsets[start:stop]) - 1.0)
        )
        result[start:stop] = values.real
    return result


def aliasing_tail(field: np.ndarray, grid: SpectralGrid) -> float:
    """Largest |u_hat| in the top third of the spectrum relative to the largest overall."""
    magnitude = np.abs(forward(field, grid))
    peak = float(np.max(magnitude))
    if peak == 0.0:
        return 0.0
    cutoff = (2.0 / 3.0) * grid.max_wavenumber
    return float(np.max(magnitude[grid.abs_wavenumbers > cutoff])) / peak


def check_aliasing(
    field: np.ndarray, grid: SpectralGrid, threshold: float = Constants.ALIASING_THRESHOLD
) -> Optional[str]:
    """Warn if the top third of the spectrum of ``field`` is not negligible."""
    tail = aliasing_tail(field, grid)
    if tail > threshold:
        message = (
            f"spectral tail {tail:.2e} in the top third exceeds {threshold:.0e}; "
            "refine the grid"
        )
        logger.warning(message)
        return message
    return None


def multiplier_matrix(multiplier: np.ndarray, grid: SpectralGrid) -> np.ndarray:
    """Dense real matrix of a Fourier multiplier acting on grid samples."""
    identity = np.eye(grid.n_points)
    columns = sfft.ifft(multiplier[:, None] * sfft.fft(identity, axis=0), axis=0)
    return np.ascontiguousarray(columns.real)
