"""Pseudo-spectral RK4 integration of the gfBBM equation."""

import logging
from typing import List, NamedTuple, Tuple

import numpy as np
from scipy import fft as sfft
from scipy.optimize import minimize_scalar

from ..models import (
    EvolutionState, EvolutionTrace, InvariantRecord, ModelParams, PerturbationSpec,
    SolitaryWave, SpectralGrid,
)
from ..utils.constants import Constants
from ..utils.exceptions import BlowUpError, ConfigurationError
from . import functionals, spectral

logger = logging.getLogger(__name__)


class RhsSymbols(NamedTuple):
    """Half-spectrum factors of the evolution form u_t = -J((1 + 3/4 D^a) u + u^(p+1)/2)."""
    wavenumbers: np.ndarray
    dispersive: np.ndarray
    inverse_bbm: np.ndarray


class EvolutionService:
    """Time stepping, invariants and the perturbed-wave experiment."""

    @staticmethod
    def symbols(params: ModelParams, grid: SpectralGrid) -> RhsSymbols:
        """Precomputed rfft-ordered factors for ``params`` on ``grid``."""
        power = grid.r_abs_wavenumbers ** params.alpha
        return RhsSymbols(
            grid.r_odd_wavenumbers,
            1.0 + Constants.KDV_COEFFICIENT * power,
            1.0 / (1.0 + Constants.BBM_COEFFICIENT * power),
        )

    @staticmethod
    def dispersion_relation(params: ModelParams, grid: SpectralGrid) -> np.ndarray:
        """omega(xi) = xi (1 + 3/4|xi|^a) / (1 + 5/4|xi|^a) in FFT order, Nyquist zeroed."""
        power = grid.abs_wavenumbers ** params.alpha
        return (
            grid.odd_wavenumbers
            * (1.0 + Constants.KDV_COEFFICIENT * power)
            / (1.0 + Constants.BBM_COEFFICIENT * power)
        )

    def max_frequency(self, params: ModelParams, grid: SpectralGrid) -> float:
        return float(np.max(np.abs(self.dispersion_relation(params, grid))))

    def check_time_step(self, dt: float, params: ModelParams, grid: SpectralGrid) -> List[str]:
        """Reject dt outside the RK4 stability disc; return advisory warnings."""
        if not dt > 0:
            raise ConfigurationError(f"time step must be positive, got {dt}")
        product = self.max_frequency(params, grid) * dt
        if product > Constants.RK4_STABILITY_LIMIT:
            raise ConfigurationError(
                f"max|omega|*dt = {product:.3g} exceeds the RK4 stability limit "
                f"{Constants.RK4_STABILITY_LIMIT}; reduce dt below "
                f"{Constants.RK4_STABILITY_LIMIT / self.max_frequency(params, grid):.3g}"
            )
        notes = []
        if dt > grid.spacing:
            note = f"CFL advisory: dt={dt:g} exceeds the grid spacing {grid.spacing:g}"
            logger.warning(note)
            notes.append(note)
        return notes

    # ------------------------------------------------------------------
    # Right-hand side and stepping
    # ------------------------------------------------------------------
    @staticmethod
    def _rhs(
        field: np.ndarray,
        symbols: RhsSymbols,
        p: int,
        nonlinear: bool,
        time: float,
    ) -> np.ndarray:
        spectrum = symbols.dispersive * sfft.rfft(field)
        if nonlinear:
            with np.errstate(over="ignore", invalid="ignore"):
                power = field ** (p + 1)
            if not np.all(np.isfinite(power)):
                raise BlowUpError(
                    f"u^(p+1) overflowed after t={time:g}", last_finite_time=time
                )
            spectrum = spectrum + 0.5 * sfft.rfft(power)
        tendency = -1j * symbols.wavenumbers * symbols.inverse_bbm * spectrum
        return sfft.irfft(tendency, n=field.shape[0])

    def rhs(
        self,
        state: EvolutionState,
        params: ModelParams,
        grid: SpectralGrid,
        nonlinear: bool = True,
    ) -> np.ndarray:
        """u_t evaluated spectrally, u^(p+1) formed in physical space."""
        field = spectral.check_length(state.field, grid)
        return self._rhs(field, self.symbols(params, grid), params.p, nonlinear, state.time)

    def _advance(
        self,
        state: EvolutionState,
        symbols: RhsSymbols,
        p: int,
        dt: float,
        nonlinear: bool,
    ) -> EvolutionState:
        u, t = state.field, state.time
        k1 = self._rhs(u, symbols, p, nonlinear, t)
        k2 = self._rhs(u + 0.5 * dt * k1, symbols, p, nonlinear, t)
        k3 = self._rhs(u + 0.5 * dt * k2, symbols, p, nonlinear, t)
        k4 = self._rhs(u + dt * k3, symbols, p, nonlinear, t)
        field = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(field)):
            raise BlowUpError(
                f"non-finite field after the step from t={t:g}", last_finite_time=t
            )
        return EvolutionState(field, t + dt, state.step_count + 1)

    def step_rk4(
        self,
        state: EvolutionState,
        params: ModelParams,
        grid: SpectralGrid,
        dt: float,
        nonlinear: bool = True,
    ) -> EvolutionState:
        """One classical fourth-order Runge-Kutta step."""
        self.check_time_step(dt, params, grid)
        spectral.check_length(state.field, grid)
        return self._advance(state, self.symbols(params, grid), params.p, dt, nonlinear)

    def integrate(
        self,
        state: EvolutionState,
        params: ModelParams,
        grid: SpectralGrid,
        dt: float,
        n_steps: int,
        nonlinear: bool = True,
    ) -> EvolutionState:
        """``n_steps`` RK4 steps; time is kept as start + step_count * dt."""
        self.check_time_step(dt, params, grid)
        symbols = self.symbols(params, grid)
        start_time, start_count = state.time, state.step_count
        current = state
        for index in range(1, n_steps + 1):
            current = self._advance(current, symbols, params.p, dt, nonlinear)
            current.time = start_time + index * dt
        current.step_count = start_count + n_steps
        return current

    def linear_propagator(
        self, field: np.ndarray, params: ModelParams, grid: SpectralGrid, t: float
    ) -> np.ndarray:
        """Exact linear flow: multiply the spectrum by exp(-i t omega(xi))."""
        phase = np.exp(-1j * t * self.dispersion_relation(params, grid))
        return spectral.apply_multiplier(field, phase, grid)

    # ------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------
    @staticmethod
    def invariants(state: EvolutionState, params: ModelParams, grid: SpectralGrid) -> InvariantRecord:
        """Quadratures of I, F and H at the state's time."""
        return InvariantRecord(
            state.time,
            functionals.mass(state.field, grid),
            functionals.momentum(state.field, params.alpha, grid),
            functionals.energy(state.field, params.alpha, params.p, grid),
        )

    @staticmethod
    def orbital_distance(
        field: np.ndarray, wave: SolitaryWave, grid: SpectralGrid
    ) -> Tuple[float, float]:
        """min over x0 of the F-norm of u - Q_c(. - x0); returns (distance, x0)."""
        weight = spectral.bbm_symbol(wave.params.alpha, grid)
        field_hat = spectral.forward(field, grid)
        wave_hat = spectral.forward(wave.profile, grid)
        correlation = sfft.ifft(weight * field_hat * np.conj(wave_hat)).real
        index = int(np.argmax(correlation))
        shift = index * grid.spacing
        if shift >= grid.half_length:
            shift -= 2.0 * grid.half_length

        def distance_squared(x0: float) -> float:
            difference = field - spectral.spectral_shift(wave.profile, x0, grid)
            return spectral.weighted_norm_squared(difference, weight, grid)

        result = minimize_scalar(
            distance_squared,
            bounds=(shift - grid.spacing, shift + grid.spacing),
            method="bounded",
            options={"xatol": 1e-10 * max(1.0, grid.spacing)},
        )
        best_shift, best = shift, distance_squared(shift)
        if result.success and result.fun < best:
            best_shift, best = float(result.x), float(result.fun)
        return float(np.sqrt(max(best, 0.0))), best_shift

    @staticmethod
    def peak_location(field: np.ndarray, grid: SpectralGrid) -> Tuple[float, float]:
        """Signed extremum and its position, refined by a three-point parabola."""
        index = int(np.argmax(np.abs(field)))
        n = grid.n_points
        left, centre, right = field[(index - 1) % n], field[index], field[(index + 1) % n]
        curvature = left - 2.0 * centre + right
        offset = 0.0
        if curvature != 0.0:
            offset = float(np.clip(0.5 * (left - right) / curvature, -0.5, 0.5))
        return float(centre), float(grid.nodes[index] + offset * grid.spacing)

    # ------------------------------------------------------------------
    # Experiment
    # ------------------------------------------------------------------
    def run_experiment(
        self,
        spec: PerturbationSpec,
        dt: float = Constants.DEFAULT_DT,
        t_final: float = Constants.DEFAULT_T_FINAL,
        sample_interval: float = Constants.DEFAULT_SAMPLE_INTERVAL,
        keep_snapshots: bool = False,
        nonlinear: bool = True,
    ) -> EvolutionTrace:
        """Evolve u0 = gamma * Q_c and sample peak, orbital distance and invariants."""
        wave = spec.base_wave
        params, grid = wave.params, wave.grid
        if not t_final > 0:
            raise ConfigurationError(f"t_final must be positive, got {t_final}")
        if not sample_interval > 0:
            raise ConfigurationError(f"sample_interval must be positive, got {sample_interval}")
        trace = EvolutionTrace(params, grid, dt, spec.gamma)
        trace.warnings.extend(self.check_time_step(dt, params, grid))
        if wave.residual > 1e-8:
            note = f"base wave residual {wave.residual:.2e} is above 1e-8"
            logger.warning(note)
            trace.warnings.append(note)

        n_steps = max(1, int(round(t_final / dt)))
        sample_every = max(1, int(round(sample_interval / dt)))
        symbols = self.symbols(params, grid)
        state = EvolutionState(spec.initial_field().astype(float), 0.0, 0)

        def record(current: EvolutionState) -> None:
            peak, position = self.peak_location(current.field, grid)
            distance, _ = self.orbital_distance(current.field, wave, grid)
            trace.times.append(current.time)
            trace.peaks.append(peak)
            trace.peak_positions.append(position)
            trace.orbital_distances.append(distance)
            trace.invariants.append(self.invariants(current, params, grid))
            if keep_snapshots:
                snapshot = current.copy()
                trace.snapshots.append((snapshot.time, snapshot.field))

        record(state)
        for step in range(1, n_steps + 1):
            state = self._advance(state, symbols, params.p, dt, nonlinear)
            state.time = step * dt
            if step % sample_every == 0 or step == n_steps:
                record(state)

        logger.info(
            "evolution alpha=%g p=%d c=%g gamma=%g finished at t=%g: |F(t)-F(0)| = %.2e",
            params.alpha, params.p, params.c, spec.gamma, state.time,
            trace.max_drift("momentum"),
        )
        return trace

    def translate_exact(self, wave: SolitaryWave, t: float) -> np.ndarray:
        """Q_c(x - c t), the travelling-wave reference."""
        return spectral.spectral_shift(wave.profile, wave.params.c * t, wave.grid)


def initial_state(field: np.ndarray, grid: SpectralGrid, time: float = 0.0) -> EvolutionState:
    """State wrapper with length validation."""
    return EvolutionState(spectral.check_length(field, grid).copy(), time, 0)
