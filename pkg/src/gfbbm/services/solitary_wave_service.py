"""Solitary-wave construction service."""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy import fft as sfft
from scipy.optimize import brentq

from ..models import (
    Branch, GroundState, GroundStateMap, ModelParams, PetviashviliSettings,
    SolitaryWave, SpectralGrid,
)
from ..utils.constants import Constants
from ..utils.exceptions import (
    ConfigurationError, DegenerateInputError, DivergenceError, DomainError,
    ExistenceError, HamiltonianUndefinedError, NoSolutionError, NonConvergenceError,
)
from . import spectral

logger = logging.getLogger(__name__)


def sech_squared(z: np.ndarray) -> np.ndarray:
    """sech^2 without overflow for large |z|."""
    decay = np.exp(-2.0 * np.abs(z))
    return 4.0 * decay / (1.0 + decay) ** 2


def require_existence(params: ModelParams) -> None:
    """Raise the ExistenceError subclass naming the violated region."""
    if not params.hamiltonian_defined:
        raise HamiltonianUndefinedError(
            f"alpha={params.alpha} <= p/(p+2)={params.p / (params.p + 2):.6g}: "
            "the Hamiltonian is not well-defined and no ground state exists"
        )
    if params.branch is Branch.NONE:
        if 0.6 <= params.c <= 1.0:
            raise NoSolutionError(
                f"c={params.c} lies in the strip 3/5 <= c <= 1 with no nontrivial solitary wave"
            )
        raise NoSolutionError(
            f"c={params.c} < 3/5 needs odd p for a negative wave, got p={params.p}"
        )


class SolitaryWaveService:
    """Builds solitary-wave profiles and checks their quality."""

    def __init__(self, settings: Optional[PetviashviliSettings] = None):
        """Initialize with default iteration settings."""
        self.settings = settings or PetviashviliSettings()

    # ------------------------------------------------------------------
    # Residuals and iteration map
    # ------------------------------------------------------------------
    @staticmethod
    def residual(profile: np.ndarray, params: ModelParams, grid: SpectralGrid) -> float:
        """max |(5c/4 - 3/4) D^a Q + (c - 1) Q - Q^(p+1)/2| on the grid."""
        profile = spectral.check_length(profile, grid)
        dispersive = spectral.fractional_derivative(profile, params.alpha, grid)
        left = (
            params.dispersion_coefficient * dispersive
            + params.mass_coefficient * profile
            - 0.5 * profile ** (params.p + 1)
        )
        return float(np.max(np.abs(left)))

    @staticmethod
    def ground_residual(profile: np.ndarray, alpha: float, p: int, grid: SpectralGrid) -> float:
        """max |D^a phi + phi - phi^(p+1)| on the grid."""
        profile = spectral.check_length(profile, grid)
        left = (
            spectral.fractional_derivative(profile, alpha, grid)
            + profile
            - profile ** (p + 1)
        )
        return float(np.max(np.abs(left)))

    @staticmethod
    def _wave_multiplier(params: ModelParams, grid: SpectralGrid) -> np.ndarray:
        """|5c/4 - 3/4| |k|^a + |c - 1|, the positive-definite linear part on either branch."""
        multiplier = (
            abs(params.dispersion_coefficient) * grid.abs_wavenumbers ** params.alpha
            + abs(params.mass_coefficient)
        )
        if np.any(multiplier <= 0):
            raise ExistenceError(
                f"Petviashvili denominator is not positive at c={params.c}: "
                "parameters lie outside the existence region"
            )
        return multiplier

    @staticmethod
    def _step(
        profile: np.ndarray,
        multiplier: np.ndarray,
        coefficient: float,
        p: int,
        nu: float,
        grid: SpectralGrid,
    ) -> Tuple[np.ndarray, float]:
        """One Petviashvili update; returns (next iterate, stabilizing factor M)."""
        profile_hat = sfft.fft(profile)
        nonlinear_hat = coefficient * sfft.fft(profile ** (p + 1))
        numerator = spectral.spectral_inner(multiplier * profile_hat, profile_hat, grid)
        denominator = spectral.spectral_inner(nonlinear_hat, profile_hat, grid)
        if not np.isfinite(denominator) or denominator <= 0.0:
            raise DivergenceError(
                f"stabilizing factor denominator became {denominator:.3e}; iteration diverged"
            )
        factor = numerator / denominator
        next_hat = factor ** nu * nonlinear_hat / multiplier
        next_profile = spectral.inverse(next_hat, grid)
        if not np.all(np.isfinite(next_profile)):
            raise DivergenceError("NaN or Inf in Petviashvili iterate")
        return next_profile, float(factor)

    def petviashvili_step(
        self, profile: np.ndarray, params: ModelParams, grid: SpectralGrid
    ) -> Tuple[np.ndarray, float]:
        """Apply the iteration map once to a signed profile Q."""
        require_existence(params)
        sign = params.branch.sign
        multiplier = self._wave_multiplier(params, grid)
        nu = self.settings.exponent(params.p)
        reflected = sign * spectral.check_length(profile, grid)
        next_profile, factor = self._step(reflected, multiplier, 0.5, params.p, nu, grid)
        return sign * next_profile, factor

    def _iterate(
        self,
        seed: np.ndarray,
        multiplier: np.ndarray,
        coefficient: float,
        p: int,
        grid: SpectralGrid,
        settings: PetviashviliSettings,
    ) -> Tuple[np.ndarray, int, np.ndarray, float]:
        """Run to convergence; returns (profile, iterations, M history, residual)."""
        nu = settings.exponent(p)
        profile = seed
        history: List[float] = []
        residual = float("inf")

        def equation_residual(values: np.ndarray) -> float:
            linear = spectral.apply_multiplier(values, multiplier, grid)
            return float(np.max(np.abs(linear - coefficient * values ** (p + 1))))

        for iteration in range(1, settings.max_iterations + 1):
            next_profile, factor = self._step(profile, multiplier, coefficient, p, nu, grid)
            history.append(factor)
            change = float(np.max(np.abs(next_profile - profile)))
            profile = next_profile
            if iteration % 50 == 0:
                logger.debug("iteration %d: change=%.3e M=%.12f", iteration, change, factor)
            if change < settings.tolerance:
                residual = equation_residual(profile)
                if residual < Constants.RESIDUAL_FACTOR * settings.tolerance:
                    return profile, iteration, np.asarray(history), residual

        residual = equation_residual(profile)
        raise NonConvergenceError(
            f"Petviashvili did not converge in {settings.max_iterations} iterations "
            f"(last residual {residual:.3e}, tolerance {settings.tolerance:.1e})",
            last_residual=residual,
            iterations=settings.max_iterations,
        )

    # ------------------------------------------------------------------
    # Solvers
    # ------------------------------------------------------------------
    def solve_petviashvili(
        self,
        params: ModelParams,
        grid: SpectralGrid,
        settings: Optional[PetviashviliSettings] = None,
    ) -> SolitaryWave:
        """Solitary wave Q_c by Petviashvili iteration on the branch of ``params``.

        The negative branch iterates the reflected equation for R_c = -Q_c,
        whose linear part is positive definite, and negates the result.
        """
        settings = settings or self.settings
        require_existence(params)
        sign = params.branch.sign
        multiplier = self._wave_multiplier(params, grid)

        if settings.initial_guess is not None:
            seed = sign * spectral.check_length(settings.initial_guess, grid)
        else:
            amplitude = settings.initial_amplitude
            if amplitude is None:
                amplitude = Constants.SEED_AMPLITUDE_FACTOR * params.amplitude_factor
            width = settings.initial_width
            if width is None:
                width = Constants.SEED_WIDTH_FACTOR / params.theta
            seed = abs(amplitude) * np.exp(-(grid.nodes / width) ** 2)

        reflected, iterations, history, _ = self._iterate(
            seed, multiplier, 0.5, params.p, grid, settings
        )
        profile = self.center_profile(sign * reflected, grid)
        residual = self.residual(profile, params, grid)
        logger.info(
            "solitary wave alpha=%g p=%d c=%g converged in %d iterations (residual %.2e)",
            params.alpha, params.p, params.c, iterations, residual,
        )
        wave = SolitaryWave(params, grid, profile, residual, iterations, history)
        wave.warnings.extend(self.diagnose(wave))
        return wave

    def solve_ground_state(
        self,
        alpha: float,
        p: int,
        grid: SpectralGrid,
        settings: Optional[PetviashviliSettings] = None,
    ) -> GroundState:
        """Normalized ground state phi of D^a phi + phi - phi^(p+1) = 0."""
        settings = settings or self.settings
        if not alpha > p / (p + 2):
            raise HamiltonianUndefinedError(
                f"alpha={alpha} <= p/(p+2)={p / (p + 2):.6g}: no ground state"
            )
        multiplier = 1.0 + grid.abs_wavenumbers ** alpha
        if settings.initial_guess is not None:
            seed = np.abs(spectral.check_length(settings.initial_guess, grid))
        else:
            amplitude = settings.initial_amplitude or Constants.SEED_AMPLITUDE_FACTOR
            width = settings.initial_width or Constants.SEED_WIDTH_FACTOR
            seed = abs(amplitude) * np.exp(-(grid.nodes / width) ** 2)
        profile, iterations, history, residual = self._iterate(
            seed, multiplier, 1.0, p, grid, settings
        )
        profile = self.center_profile(profile, grid)
        residual = self.ground_residual(profile, alpha, p, grid)
        return GroundState(alpha, p, grid, profile, residual, iterations, history)

    def exact_solution(self, c: float, grid: SpectralGrid) -> SolitaryWave:
        """Closed-form sech^2 wave for alpha = 2, p = 1 at t = 0."""
        params = ModelParams(2.0, 1, c)
        if params.branch is Branch.NONE:
            raise NoSolutionError(
                f"c={c} lies in [3/5, 1]: the closed form has no real solitary wave"
            )
        inner = 0.5 * np.sqrt(4.0 * (c - 1.0) / (5.0 * c - 3.0))
        profile = 3.0 * (c - 1.0) * sech_squared(inner * grid.nodes)
        residual = self.residual(profile, params, grid)
        wave = SolitaryWave(params, grid, profile, residual)
        wave.warnings.extend(self.diagnose(wave))
        return wave

    def ground_state_rescale(
        self,
        normalized_profile: np.ndarray,
        params: ModelParams,
        grid: SpectralGrid,
        source_grid: Optional[SpectralGrid] = None,
    ) -> SolitaryWave:
        """Q_c(x) = sign * (2|c-1|)^(1/p) * phi(theta x), resampled onto ``grid``.

        ``source_grid`` is the grid the normalized profile is sampled on
        (defaults to ``grid``). When it is exactly the dilated grid the samples
        map one to one; otherwise the trigonometric interpolant is evaluated.
        """
        require_existence(params)
        source = source_grid or grid
        phi = spectral.check_length(normalized_profile, source)
        phi_residual = self.ground_residual(phi, params.alpha, params.p, source)
        if phi_residual > 1e-8:
            raise ConfigurationError(
                f"normalized profile residual {phi_residual:.2e} exceeds 1e-8; "
                "it does not solve D^a phi + phi - phi^(p+1) = 0"
            )

        mapping = GroundStateMap.from_params(params)
        targets = mapping.length_factor * grid.nodes
        reach = mapping.length_factor * grid.half_length
        if reach > source.half_length * (1.0 + 1e-12):
            raise DomainError(
                f"theta*L = {reach:.6g} exceeds the normalized profile's half-length "
                f"{source.half_length:.6g}"
            )
        if source.n_points == grid.n_points and np.allclose(
            targets, source.nodes, rtol=0.0, atol=1e-12 * source.half_length
        ):
            values = phi.copy()
        else:
            values = spectral.interpolate(phi, targets, source)

        profile = mapping.sign * mapping.amplitude_factor * values
        residual = self.residual(profile, params, grid)
        wave = SolitaryWave(params, grid, profile, residual)
        wave.warnings.extend(self.diagnose(wave))
        return wave

    @staticmethod
    def pohozaev_ratio(wave: SolitaryWave) -> Tuple[float, float]:
        """(measured, predicted) ratio of |D^(a/2) Q|^2 to Q^2 integrals."""
        params = wave.params
        spectrum = spectral.forward(wave.profile, wave.grid)
        power = np.abs(spectrum) ** 2
        total = float(np.sum(power))
        if total == 0.0:
            raise DegenerateInputError("profile has zero norm; Pohozaev ratio undefined")
        measured = float(np.sum(wave.grid.abs_wavenumbers ** params.alpha * power)) / total
        predicted = (
            4.0 * params.p * (params.c - 1.0)
            / ((5.0 * params.c - 3.0) * (params.alpha * (params.p + 2) - params.p))
        )
        return measured, predicted

    # ------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------
    @staticmethod
    def parabolic_vertex(profile: np.ndarray, index: int, grid: SpectralGrid) -> float:
        """Vertex of the parabola through the extremum and its two neighbours."""
        n = grid.n_points
        below = abs(profile[(index - 1) % n])
        middle = abs(profile[index])
        above = abs(profile[(index + 1) % n])
        curvature = below - 2.0 * middle + above
        x_index = float(grid.nodes[index])
        if curvature >= 0.0:
            return x_index
        offset = 0.5 * (below - above) / curvature
        return x_index + grid.spacing * float(np.clip(offset, -1.0, 1.0))

    @classmethod
    def center_profile(cls, profile: np.ndarray, grid: SpectralGrid) -> np.ndarray:
        """Shift the extremum to x = 0 with sub-grid accuracy."""
        index = int(np.argmax(np.abs(profile)))
        h = grid.spacing
        x_index = float(grid.nodes[index])
        slope = spectral.derivative(profile, grid)
        left, right = spectral.interpolate(slope, [x_index - h, x_index + h], grid)
        location = x_index
        if left * right < 0:
            try:
                location = brentq(
                    lambda x: spectral.interpolate(slope, [x], grid)[0],
                    x_index - h,
                    x_index + h,
                    xtol=Constants.CENTER_XTOL_FACTOR * h,
                    maxiter=Constants.CENTER_MAX_ITERATIONS,
                )
            except RuntimeError as exc:
                location = cls.parabolic_vertex(profile, index, grid)
                logger.debug("peak root search failed (%s); parabolic vertex %.6g", exc, location)
        if abs(location) <= 1e-10 * h:
            return profile
        return spectral.spectral_shift(profile, -location, grid)

    @staticmethod
    def diagnose(wave: SolitaryWave) -> List[str]:
        """Shape checks recorded as warnings: sign, evenness, decay, aliasing."""
        notes: List[str] = []
        profile = wave.profile
        peak = wave.peak_magnitude
        if peak == 0.0:
            return ["profile is identically zero"]
        sign = wave.branch.sign or 1
        if np.min(sign * profile) < -Constants.DECAY_THRESHOLD * peak:
            notes.append("profile changes sign beyond 1e-8 ripple")
        mirrored = np.roll(profile[::-1], 1)
        if np.max(np.abs(profile - mirrored)) > Constants.DECAY_THRESHOLD * peak:
            notes.append("profile is not even about x = 0 to 1e-8")
        edge = abs(profile[0])
        if edge > Constants.DECAY_THRESHOLD * peak:
            notes.append(
                f"domain too small: |Q(-L)| = {edge:.2e} exceeds 1e-8 of the peak {peak:.3g}"
            )
        aliasing = spectral.check_aliasing(profile ** (wave.params.p + 1), wave.grid)
        if aliasing:
            notes.append(aliasing)
        for note in notes:
            logger.warning("alpha=%g p=%d c=%g: %s", wave.params.alpha, wave.params.p,
                           wave.params.c, note)
        return notes
