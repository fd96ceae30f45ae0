"""Analytic and numeric stability classification of solitary waves."""

import logging
import math
from typing import Iterable, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy import linalg

from ..models import (
    Branch, CriticalSpeeds, GroundState, GrowingModes, ModelParams, OperatorKind,
    OperatorMatrix, SolitaryWave, SpectralGrid, SpectrumCounts, StabilityReport, Verdict,
)
from ..utils.constants import Constants
from ..utils.exceptions import (
    ConfigurationError, NoRealRootError, NumericError, ResourceError, SymmetryError,
)
from . import functionals, spectral
from .solitary_wave_service import SolitaryWaveService, require_existence

logger = logging.getLogger(__name__)

Profile = Union[SolitaryWave, GroundState]


class StabilityService:
    """Closed-form K(c) analysis plus dense spectra of the linearized operators."""

    def __init__(
        self,
        wave_service: Optional[SolitaryWaveService] = None,
        dense_cap: int = Constants.DENSE_CAP,
    ):
        self.wave_service = wave_service or SolitaryWaveService()
        self.dense_cap = dense_cap

    # ------------------------------------------------------------------
    # Closed-form analysis
    # ------------------------------------------------------------------
    @staticmethod
    def k_of_c(params: ModelParams) -> float:
        """K(c) with F(Q_c) = momentum_scale(p) * K(c) * |phi|^2.

        On the negative branch (c-1)^(2/p) is read as ((c-1)^2)^(1/p) and the
        dilation base as the positive ratio (5c-3)/(4(c-1)).
        """
        require_existence(params)
        alpha, p, c = params.alpha, params.p, params.c
        s = c - 1.0
        t = 5.0 * c - 3.0
        beta = alpha * (p + 2) - p
        return (
            (s * s) ** (1.0 / p)
            * (t / (4.0 * s)) ** (1.0 / alpha)
            * (1.0 + 5.0 * p * s / (t * beta))
        )

    @classmethod
    def dk_dc(cls, params: ModelParams) -> float:
        """Closed-form derivative of K by logarithmic differentiation."""
        k_value = cls.k_of_c(params)
        alpha, p, c = params.alpha, params.p, params.c
        s = c - 1.0
        t = 5.0 * c - 3.0
        beta = alpha * (p + 2) - p
        log_derivative = (
            2.0 / (p * s)
            - 1.0 / (alpha * s)
            + 5.0 / (alpha * t)
            + 10.0 * p / (t * (t * beta + 5.0 * p * s))
        )
        return k_value * log_derivative

    @staticmethod
    def momentum_scale(p: int) -> float:
        """2^(2/p - 1)."""
        return 2.0 ** (2.0 / p - 1.0)

    @staticmethod
    def essential_edge(params: ModelParams) -> float:
        """Bottom |c - 1| of the far-field multiplier of L_c (or L_c^-)."""
        return abs(params.c - 1.0)

    @staticmethod
    def critical_speeds(alpha: float, p: int) -> CriticalSpeeds:
        """Zeros c1 > c2 of dK/dc for general p."""
        radicand = 2.0 * alpha - p + alpha * p
        if radicand < 0:
            raise NoRealRootError(
                f"2*alpha - p + alpha*p = {radicand:.6g} < 0 at alpha={alpha}, p={p}: "
                "dK/dc has no real zero"
            )
        centre = 6.0 * alpha + 2.0 * p + 3.0 * alpha * p
        spread = math.sqrt(2.0) * p * math.sqrt(radicand)
        denominator = 5.0 * alpha * (p + 2)
        return CriticalSpeeds((centre + spread) / denominator, (centre - spread) / denominator)

    def classify(self, params: ModelParams) -> StabilityReport:
        """Analytic verdict from the sign of dK/dc; stable iff dK/dc > 0."""
        try:
            roots: Optional[Tuple[float, float]] = tuple(
                self.critical_speeds(params.alpha, params.p)
            )
        except NoRealRootError:
            roots = None

        if not params.hamiltonian_defined:
            return StabilityReport(params, Verdict.HAMILTONIAN_UNDEFINED, roots=roots)
        if params.branch is Branch.NONE:
            return StabilityReport(params, Verdict.NO_SOLITARY_WAVE, roots=roots)

        k_value = self.k_of_c(params)
        derivative = self.dk_dc(params)
        sign = 0
        if abs(derivative) > 1e-12 * k_value:
            sign = 1 if derivative > 0 else -1
        verdict = Verdict.SPECTRALLY_STABLE if sign > 0 else Verdict.SPECTRALLY_UNSTABLE
        return StabilityReport(
            params,
            verdict,
            k_derivative_sign=sign,
            roots=roots,
            k_value=k_value,
            k_derivative=derivative,
            predicted_edge=self.essential_edge(params),
        )

    def region_map(
        self,
        p: int,
        alpha_range: Tuple[float, float],
        c_range: Tuple[float, float],
        resolution: float = Constants.DEFAULT_RESOLUTION,
    ) -> pd.DataFrame:
        """Verdict on a lattice of (alpha, c) for fixed p."""
        alphas = self.lattice("alpha", alpha_range, resolution)
        speeds = self.lattice("c", c_range, resolution)
        rows = [
            (alpha, c, self.classify(ModelParams(alpha, p, c)).verdict.value)
            for alpha in alphas
            for c in speeds
        ]
        logger.info("region map p=%d: %d lattice points", p, len(rows))
        return pd.DataFrame(rows, columns=["alpha", "c", "verdict"])

    def root_curves(self, p: int, alpha_values: Iterable[float]) -> pd.DataFrame:
        """(alpha, c1, c2) rows; NaN where dK/dc has no real zero."""
        rows = []
        for alpha in alpha_values:
            try:
                c1, c2 = self.critical_speeds(float(alpha), p)
            except NoRealRootError:
                c1, c2 = math.nan, math.nan
            rows.append((float(alpha), c1, c2))
        return pd.DataFrame(rows, columns=["alpha", "c1", "c2"])

    @staticmethod
    def lattice(name: str, bounds: Tuple[float, float], resolution: float) -> np.ndarray:
        low, high = bounds
        if not resolution > 0:
            raise ConfigurationError(f"resolution must be positive, got {resolution}")
        if high < low:
            raise ConfigurationError(f"empty {name} range [{low}, {high}]")
        count = int(math.floor((high - low) / resolution + 1e-9)) + 1
        return np.round(low + resolution * np.arange(count), 12)

    # ------------------------------------------------------------------
    # Dense operators
    # ------------------------------------------------------------------
    def stability_grid(
        self,
        params: ModelParams,
        n_points: int = Constants.DEFAULT_EIGEN_N_POINTS,
        normalized_half_length: float = Constants.NORMALIZED_HALF_LENGTH,
    ) -> SpectralGrid:
        """Grid of half-length normalized_half_length / theta(c).

        Every wave then fills the same fraction of the domain, and L_c on this
        grid is |c-1| times the normalized operator P sample by sample.
        """
        require_existence(params)
        return spectral.make_grid(normalized_half_length / params.theta, n_points)

    def _check_cap(self, grid: SpectralGrid) -> None:
        if grid.n_points > self.dense_cap:
            raise ResourceError(
                f"dense assembly needs N <= {self.dense_cap}, got N={grid.n_points}"
            )

    @staticmethod
    def _symmetric(matrix: np.ndarray, kind: OperatorKind) -> np.ndarray:
        scale = max(float(np.max(np.abs(matrix))), np.finfo(float).tiny)
        asymmetry = float(np.max(np.abs(matrix - matrix.T))) / scale
        if asymmetry > Constants.SYMMETRY_TOLERANCE:
            raise SymmetryError(f"{kind.value} matrix asymmetry {asymmetry:.2e} exceeds 1e-10")
        return 0.5 * (matrix + matrix.T)

    def assemble_lc(self, wave: SolitaryWave) -> OperatorMatrix:
        """L_c on the positive branch, L_c^- = -L_c on the negative one.

        Both read |5c/4 - 3/4| D^a + |c - 1| - ((p+1)/2)|Q_c|^p.
        """
        grid = wave.grid
        self._check_cap(grid)
        params = wave.params
        kind = OperatorKind.LC_MINUS if wave.branch is Branch.NEGATIVE else OperatorKind.LC
        multiplier = (
            abs(params.dispersion_coefficient) * grid.abs_wavenumbers ** params.alpha
            + abs(params.mass_coefficient)
        )
        potential = 0.5 * (params.p + 1) * np.abs(wave.profile) ** params.p
        matrix = spectral.multiplier_matrix(multiplier, grid) - np.diag(potential)
        return OperatorMatrix(self._symmetric(matrix, kind), kind, grid, params)

    def assemble_ground_state_operator(
        self, phi: np.ndarray, alpha: float, p: int, grid: SpectralGrid
    ) -> OperatorMatrix:
        """P = D^a + 1 - (p+1) phi^p."""
        self._check_cap(grid)
        phi = spectral.check_length(phi, grid)
        multiplier = grid.abs_wavenumbers ** alpha + 1.0
        matrix = spectral.multiplier_matrix(multiplier, grid) - np.diag((p + 1) * phi ** p)
        return OperatorMatrix(self._symmetric(matrix, OperatorKind.GROUND), OperatorKind.GROUND, grid)

    def skew_operator(self, alpha: float, grid: SpectralGrid) -> np.ndarray:
        """Dense J = (I + (5/4) D^a)^-1 d/dx."""
        self._check_cap(grid)
        symbol = 1j * grid.odd_wavenumbers / spectral.bbm_symbol(alpha, grid)
        return spectral.multiplier_matrix(symbol, grid)

    def spectrum_counts(self, operator: OperatorMatrix, wave: Profile) -> SpectrumCounts:
        """Negative count, kernel alignment with Q', and essential-edge estimate."""
        if not operator.kind.is_symmetric:
            raise ConfigurationError(f"spectrum_counts needs a self-adjoint kind, got {operator.kind.value}")
        try:
            eigenvalues, eigenvectors = linalg.eigh(operator.matrix)
        except linalg.LinAlgError as exc:
            raise NumericError(f"symmetric eigensolver failed: {exc}") from exc

        radius = float(np.max(np.abs(eigenvalues)))
        threshold = Constants.EIGEN_THRESHOLD_FACTOR * radius
        n_negative = int(np.sum(eigenvalues < -threshold))

        slope = spectral.derivative(wave.profile, wave.grid)
        kernel_vector = eigenvectors[:, int(np.argmin(np.abs(eigenvalues)))]
        denominator = float(np.linalg.norm(kernel_vector) * np.linalg.norm(slope))
        kernel_quality = abs(float(kernel_vector @ slope)) / denominator if denominator else 0.0

        # eigh returns unit columns, so the participation ratio is 1 / (N sum v^4)
        participation = 1.0 / (operator.size * np.sum(eigenvectors ** 4, axis=0))
        spread = np.nonzero(participation >= Constants.PARTICIPATION_THRESHOLD)[0]
        edge = float(eigenvalues[spread[0]]) if spread.size else math.nan

        logger.debug(
            "%s spectrum: n_negative=%d kernel=%.6f edge=%.4g",
            operator.kind.value, n_negative, kernel_quality, edge,
        )
        return SpectrumCounts(n_negative, kernel_quality, edge)

    def assemble_jlc(self, wave: SolitaryWave) -> OperatorMatrix:
        """J L_c with the signed L_c on either branch."""
        operator = self.assemble_lc(wave)
        signed = wave.branch.sign * operator.matrix
        product = self.skew_operator(wave.params.alpha, wave.grid) @ signed
        return OperatorMatrix(product, OperatorKind.JLC, wave.grid, wave.params)

    def growing_modes(self, wave: SolitaryWave) -> GrowingModes:
        """Eigenvalues of J L_c."""
        operator = self.assemble_jlc(wave)
        try:
            eigenvalues = linalg.eigvals(operator.matrix)
        except linalg.LinAlgError as exc:
            raise NumericError(f"non-symmetric eigensolver failed: {exc}") from exc
        if not np.all(np.isfinite(eigenvalues)):
            raise NumericError("non-finite eigenvalue of J L_c")
        return GrowingModes(eigenvalues, float(np.max(eigenvalues.real)))

    # ------------------------------------------------------------------
    # Momentum derivative and full analysis
    # ------------------------------------------------------------------
    def momentum_derivative(
        self,
        params: ModelParams,
        dc: float = Constants.DEFAULT_DC,
        n_points: int = Constants.DEFAULT_EIGEN_N_POINTS,
        grid: Optional[SpectralGrid] = None,
        normalized_half_length: float = Constants.NORMALIZED_HALF_LENGTH,
    ) -> float:
        """I = -dF(Q_c)/dc by central differences of re-solved waves.

        Without an explicit ``grid`` each neighbour is solved on its own
        stability grid, so all three waves are dilations of one discrete profile.
        """
        if not dc > 0:
            raise ConfigurationError(f"dc must be positive, got {dc}")
        values = []
        for speed in (params.c + dc, params.c - dc):
            neighbour = params.with_speed(speed)
            target = grid or self.stability_grid(neighbour, n_points, normalized_half_length)
            wave = self.wave_service.solve_petviashvili(neighbour, target)
            values.append(functionals.momentum(wave.profile, params.alpha, target))
        return -(values[0] - values[1]) / (2.0 * dc)

    def analyze(
        self,
        params: ModelParams,
        n_points: int = Constants.DEFAULT_EIGEN_N_POINTS,
        dc: float = Constants.DEFAULT_DC,
        growth: bool = True,
        normalized_half_length: float = Constants.NORMALIZED_HALF_LENGTH,
    ) -> StabilityReport:
        """classify plus dense counts, numeric n_I and the index."""
        report = self.classify(params)
        if report.verdict in (Verdict.HAMILTONIAN_UNDEFINED, Verdict.NO_SOLITARY_WAVE):
            return report

        grid = self.stability_grid(params, n_points, normalized_half_length)
        self._check_cap(grid)
        wave = self.wave_service.solve_petviashvili(params, grid)
        counts = self.spectrum_counts(self.assemble_lc(wave), wave)
        momentum_derivative = self.momentum_derivative(
            params, dc, n_points, normalized_half_length=normalized_half_length
        )

        report.n_negative = counts.n_negative
        report.kernel_quality = counts.kernel_quality
        report.essential_edge_estimate = counts.essential_edge_estimate
        report.momentum_derivative = momentum_derivative
        report.n_I = 1 if momentum_derivative < 0 else 0
        if growth:
            report.max_growth_rate = self.growing_modes(wave).max_real_part
        if report.verdict_agreement is False:
            logger.warning(
                "alpha=%g p=%d c=%g: numeric index %s disagrees with analytic %s",
                params.alpha, params.p, params.c, report.index, report.verdict.value,
            )
        return report

