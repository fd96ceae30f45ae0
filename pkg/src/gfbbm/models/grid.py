"""Periodic collocation grid."""

from dataclasses import dataclass, field

import numpy as np
from scipy import fft as sfft


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform periodic grid on [-L, L) with FFT-ordered wavenumbers.

    ``wavenumbers`` follow the full-FFT ordering xi_k = pi k / L. The Nyquist
    bin (k = -N/2) carries magnitude pi N / (2L) in ``abs_wavenumbers`` and is
    zeroed in ``odd_wavenumbers``, which every odd (derivative-bearing) symbol
    is built from. The ``r*`` arrays are the half-spectrum counterparts used by
    the real transforms.
    """

    half_length: float
    n_points: int
    nodes: np.ndarray = field(repr=False, compare=False)
    wavenumbers: np.ndarray = field(repr=False, compare=False)
    abs_wavenumbers: np.ndarray = field(repr=False, compare=False)
    odd_wavenumbers: np.ndarray = field(repr=False, compare=False)
    r_abs_wavenumbers: np.ndarray = field(repr=False, compare=False)
    r_odd_wavenumbers: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def create(cls, half_length: float, n_points: int) -> "SpectralGrid":
        """Build the grid arrays; validation lives in ``make_grid``."""
        spacing = 2.0 * half_length / n_points
        nodes = -half_length + spacing * np.arange(n_points)
        wavenumbers = 2.0 * np.pi * sfft.fftfreq(n_points, d=spacing)
        abs_wavenumbers = np.abs(wavenumbers)
        odd_wavenumbers = wavenumbers.copy()
        odd_wavenumbers[n_points // 2] = 0.0

        r_wavenumbers = 2.0 * np.pi * sfft.rfftfreq(n_points, d=spacing)
        r_odd = r_wavenumbers.copy()
        r_odd[-1] = 0.0

        return cls(
            half_length=float(half_length),
            n_points=int(n_points),
            nodes=_frozen(nodes),
            wavenumbers=_frozen(wavenumbers),
            abs_wavenumbers=_frozen(abs_wavenumbers),
            odd_wavenumbers=_frozen(odd_wavenumbers),
            r_abs_wavenumbers=_frozen(np.abs(r_wavenumbers)),
            r_odd_wavenumbers=_frozen(r_odd),
        )

    @property
    def spacing(self) -> float:
        """Node spacing 2L/N."""
        return 2.0 * self.half_length / self.n_points

    @property
    def max_wavenumber(self) -> float:
        """Largest resolved |xi| = pi N / (2L)."""
        return np.pi * self.n_points / (2.0 * self.half_length)

    @property
    def center_index(self) -> int:
        """Index of the node x = 0."""
        return self.n_points // 2

    def spectral_weight(self) -> float:
        """Factor turning sum |u_hat|^2 into the quadrature of u^2 (Parseval)."""
        return self.spacing / self.n_points
