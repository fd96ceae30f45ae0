"""Tests for the time integrator, invariants and the perturbation experiment."""

import numpy as np
import pytest

from gfbbm.models import EvolutionState, ModelParams, PerturbationSpec, TRACE_COLUMNS
from gfbbm.services import functionals, spectral
from gfbbm.services.evolution_service import initial_state
from gfbbm.utils.exceptions import BlowUpError, ConfigurationError, DimensionError


class TestRightHandSide:
    def test_constant_is_stationary(self, evolution_service, trig_grid, kdv_params):
        state = initial_state(np.full(trig_grid.n_points, 0.7), trig_grid)
        np.testing.assert_allclose(evolution_service.rhs(state, kdv_params, trig_grid), 0.0, atol=1e-14)

    def test_travelling_wave(self, evolution_service, exact_wave, wave_grid, kdv_params):
        state = initial_state(exact_wave.profile, wave_grid)
        tendency = evolution_service.rhs(state, kdv_params, wave_grid)
        expected = -1.5 * spectral.derivative(exact_wave.profile, wave_grid)
        assert np.max(np.abs(tendency - expected)) < 1e-8

    def test_wrong_length(self, evolution_service, trig_grid, kdv_params):
        with pytest.raises(DimensionError):
            evolution_service.rhs(EvolutionState(np.zeros(10)), kdv_params, trig_grid)

    def test_overflow_reports_blow_up(self, evolution_service, trig_grid, kdv_params):
        state = initial_state(np.full(trig_grid.n_points, 1e200), trig_grid, time=3.0)
        with pytest.raises(BlowUpError) as info:
            evolution_service.rhs(state, kdv_params, trig_grid)
        assert info.value.last_finite_time == 3.0


class TestLinearFlow:
    def test_phase_speed(self, evolution_service, trig_grid, kdv_params):
        omega = evolution_service.dispersion_relation(kdv_params, trig_grid)
        assert omega[1] == pytest.approx(1.75 / 2.25)
        assert omega[trig_grid.n_points // 2] == 0.0

    def test_propagator_inverts_and_is_periodic(self, evolution_service, trig_grid, kdv_params, smooth_field):
        forward = evolution_service.linear_propagator(smooth_field, kdv_params, trig_grid, 1.3)
        back = evolution_service.linear_propagator(forward, kdv_params, trig_grid, -1.3)
        np.testing.assert_allclose(back, smooth_field, atol=1e-12)

        period = 2.0 * np.pi / (1.75 / 2.25)
        wave = np.cos(trig_grid.nodes)
        np.testing.assert_allclose(
            evolution_service.linear_propagator(wave, kdv_params, trig_grid, period), wave, atol=1e-12
        )

    def test_rk4_fourth_order(self, evolution_service):
        grid = spectral.make_grid(32.0, 256)
        params = ModelParams(2.0, 1, 1.5)
        field = np.exp(-grid.nodes ** 2 / 4.0)
        reference = evolution_service.linear_propagator(field, params, grid, 2.0)

        errors = []
        for dt in (0.05, 0.025):
            state = evolution_service.integrate(
                initial_state(field, grid), params, grid, dt, int(round(2.0 / dt)), nonlinear=False
            )
            assert state.time == pytest.approx(2.0)
            errors.append(np.max(np.abs(state.field - reference)))
        assert 12.0 <= errors[0] / errors[1] <= 20.0


class TestTimeStep:
    def test_rk4_limit(self, evolution_service, wave_grid, kdv_params):
        with pytest.raises(ConfigurationError):
            evolution_service.check_time_step(1.0, kdv_params, wave_grid)
        with pytest.raises(ConfigurationError):
            evolution_service.check_time_step(0.0, kdv_params, wave_grid)

    def test_cfl_advisory(self, evolution_service, wave_grid, kdv_params):
        assert evolution_service.check_time_step(0.01, kdv_params, wave_grid) == []
        notes = evolution_service.check_time_step(0.15, kdv_params, wave_grid)
        assert len(notes) == 1
        assert "CFL" in notes[0]


class TestInvariants:
    def test_cosine(self, evolution_service, trig_grid, kdv_params):
        record = evolution_service.invariants(initial_state(np.cos(trig_grid.nodes), trig_grid), kdv_params, trig_grid)
        assert record.mass == pytest.approx(0.0, abs=1e-13)
        assert record.momentum == pytest.approx(9 * np.pi / 8, rel=1e-12)
        assert record.energy == pytest.approx(-7 * np.pi / 8, rel=1e-12)

    def test_energy_of_exact_wave(self, exact_wave, wave_grid):
        # 1.5 sech^2(x/3): int Q = 9, int Q^2 = 9, int Q'^2 = 0.8, int Q^3 = 10.8
        assert functionals.mass(exact_wave.profile, wave_grid) == pytest.approx(9.0, rel=1e-10)
        assert functionals.energy(exact_wave.profile, 2.0, 1, wave_grid) == pytest.approx(-0.5 * (9.0 + 0.6 + 3.6), rel=1e-9)


class TestTransport:
    def test_exact_wave_translates(self, evolution_service, exact_wave, wave_grid, kdv_params):
        state = evolution_service.integrate(initial_state(exact_wave.profile, wave_grid), kdv_params, wave_grid, 0.01, 200)
        assert state.step_count == 200
        reference = evolution_service.translate_exact(exact_wave, 2.0)
        assert np.max(np.abs(state.field - reference)) < 1e-6

    def test_orbital_distance_finds_shift(self, evolution_service, exact_wave, wave_grid):
        moved = evolution_service.translate_exact(exact_wave, 2.0)
        distance, shift = evolution_service.orbital_distance(moved, exact_wave, wave_grid)
        assert distance < 1e-6
        assert shift == pytest.approx(3.0, abs=1e-6)

    def test_peak_location(self, evolution_service, exact_wave, wave_grid):
        moved = evolution_service.translate_exact(exact_wave, 1.0)
        peak, position = evolution_service.peak_location(moved, wave_grid)
        assert peak == pytest.approx(1.5, abs=1e-3)
        assert position == pytest.approx(1.5, abs=1e-2)

    def test_unperturbed_experiment(self, evolution_service, exact_wave):
        trace = evolution_service.run_experiment(
            PerturbationSpec(exact_wave, gamma=1.0), dt=0.01, t_final=20.0, sample_interval=1.0
        )
        frame = trace.to_frame()
        assert list(frame.columns) == TRACE_COLUMNS
        assert len(frame) == 21
        assert frame["t"].iloc[-1] == pytest.approx(20.0)
        assert frame["orbital_distance"].max() < 1e-4
        assert frame["x_peak"].iloc[-1] == pytest.approx(30.0, abs=1e-2)
        assert trace.max_drift("mass") < 1e-10
        assert trace.max_drift("momentum") < 1e-5

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha, c", [(0.6, 1.1), (2.0, 1.5)])
    def test_translation_at_full_resolution(self, evolution_service, wave_service, alpha, c):
        params = ModelParams(alpha, 1, c)
        grid = spectral.make_grid(512.0, 2 ** 13)
        wave = wave_service.solve_petviashvili(params, grid)
        t_final = 2.0
        state = evolution_service.integrate(initial_state(wave.profile, grid), params, grid, 5e-4, 4000)
        assert state.time == pytest.approx(t_final)
        reference = evolution_service.translate_exact(wave, t_final)
        assert np.max(np.abs(state.field - reference)) / t_final < 1e-5


class TestExperiment:
    def test_sampling_and_snapshots(self, evolution_service, exact_wave):
        trace = evolution_service.run_experiment(
            PerturbationSpec(exact_wave, gamma=1.1),
            dt=0.01, t_final=1.0, sample_interval=0.25, keep_snapshots=True,
        )
        np.testing.assert_allclose(trace.times, [0.0, 0.25, 0.5, 0.75, 1.0], atol=1e-12)
        assert len(trace.snapshots) == 5
        assert trace.peaks[0] == pytest.approx(1.65)
        assert trace.orbital_distances[0] > 0

    def test_rejects_bad_inputs(self, evolution_service, exact_wave):
        with pytest.raises(ConfigurationError):
            PerturbationSpec(exact_wave, gamma=0.0)
        with pytest.raises(ConfigurationError):
            evolution_service.run_experiment(PerturbationSpec(exact_wave), t_final=0.0)
        with pytest.raises(ConfigurationError):
            evolution_service.run_experiment(PerturbationSpec(exact_wave), dt=5.0)

    @pytest.mark.slow
    def test_conservation_gate(self, evolution_service, wave_service):
        params = ModelParams(0.6, 1, 1.1)
        grid = spectral.make_grid(512.0, 2 ** 13)
        wave = wave_service.solve_petviashvili(params, grid)
        trace = evolution_service.run_experiment(
            PerturbationSpec(wave, gamma=1.1), dt=5e-4, t_final=50.0, sample_interval=1.0
        )
        assert trace.max_drift("momentum") < 1e-5
        assert trace.max_drift("mass") < 1e-10
        distances = np.asarray(trace.orbital_distances)
        assert np.max(distances) <= 3.0 * distances[1]

    @pytest.mark.slow
    def test_negative_wave_sheds_amplitude(self, evolution_service, wave_service):
        params = ModelParams(0.6, 1, 0.5)
        grid = spectral.make_grid(512.0, 2 ** 13)
        wave = wave_service.solve_petviashvili(params, grid)
        trace = evolution_service.run_experiment(
            PerturbationSpec(wave, gamma=1.1), dt=5e-4, t_final=50.0, sample_interval=1.0
        )
        peaks = np.abs(trace.peaks)
        assert np.all(np.isfinite(peaks))
        assert np.max(peaks) <= 1.5 * peaks[0]
        assert trace.amplitude_slope() < 0
