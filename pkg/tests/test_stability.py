"""Tests for the stability classification and dense spectra."""

import math

import numpy as np
import pytest

from gfbbm.models import ModelParams, OperatorKind, SolitaryWave, Verdict
from gfbbm.services import StabilityService, functionals, spectral
from gfbbm.utils.exceptions import (
    ConfigurationError, NoRealRootError, ResourceError, SymmetryError,
)


def p1_roots(alpha):
    spread = math.sqrt(2.0 * (3.0 * alpha - 1.0))
    return (9.0 * alpha + 2.0 + spread) / (15.0 * alpha), (9.0 * alpha + 2.0 - spread) / (15.0 * alpha)


def p2_roots(alpha):
    spread = math.sqrt(2.0 * alpha - 1.0)
    return (3.0 * alpha + 1.0 + spread) / (5.0 * alpha), (3.0 * alpha + 1.0 - spread) / (5.0 * alpha)


# closed-form reference speeds: c1(0.45, p=1), c2(2, p=1), c1(0.75, p=2)
C1_P1_ALPHA_045 = (6.05 + math.sqrt(0.7)) / 6.75
C2_P1_ALPHA_2 = (20.0 - math.sqrt(10.0)) / 30.0
C1_P2_ALPHA_075 = (3.25 + math.sqrt(0.5)) / 3.75


class TestClosedForm:
    def test_k_value(self):
        assert StabilityService.k_of_c(ModelParams(2.0, 1, 1.5)) == pytest.approx(0.416667, rel=1e-5)

    def test_momentum_of_exact_wave(self, exact_wave, wave_grid):
        # F = momentum_scale * K * |phi|^2 with |phi|^2 = 6
        value = functionals.momentum(exact_wave.profile, 2.0, wave_grid)
        assert value == pytest.approx(5.0, rel=1e-10)
        predicted = StabilityService.momentum_scale(1) * StabilityService.k_of_c(exact_wave.params) * 6.0
        assert predicted == pytest.approx(5.0, rel=1e-10)

    @pytest.mark.parametrize("c", [1.2, 1.5, 3.0, 0.5, 0.2])
    def test_derivative_matches_finite_difference(self, c):
        params = ModelParams(1.3, 1, c)
        step = 1e-6
        numeric = (
            StabilityService.k_of_c(params.with_speed(c + step))
            - StabilityService.k_of_c(params.with_speed(c - step))
        ) / (2 * step)
        assert StabilityService.dk_dc(params) == pytest.approx(numeric, rel=1e-6)

    @pytest.mark.parametrize(
        "alpha, p, c",
        [(2.0, 1, 1.5), (0.6, 1, 1.1), (0.45, 1, 1.1), (1.5, 1, 0.58), (0.75, 2, 2.0)],
    )
    def test_stable_points(self, stability_service, alpha, p, c):
        report = stability_service.classify(ModelParams(alpha, p, c))
        assert report.k_derivative > 0
        assert report.k_derivative_sign == 1
        assert report.verdict is Verdict.SPECTRALLY_STABLE

    @pytest.mark.parametrize(
        "alpha, p, c",
        [(0.45, 1, 1.01), (0.4, 1, 0.5), (0.75, 1, 0.5), (1.5, 1, 0.3), (0.75, 2, 1.02)],
    )
    def test_unstable_points(self, stability_service, alpha, p, c):
        report = stability_service.classify(ModelParams(alpha, p, c))
        assert report.k_derivative < 0
        assert report.verdict is Verdict.SPECTRALLY_UNSTABLE

    def test_no_wave_and_undefined(self, stability_service):
        assert stability_service.classify(ModelParams(1.5, 1, 0.8)).verdict is Verdict.NO_SOLITARY_WAVE
        assert stability_service.classify(ModelParams(1.5, 2, 0.5)).verdict is Verdict.NO_SOLITARY_WAVE
        report = stability_service.classify(ModelParams(0.3, 1, 1.5))
        assert report.verdict is Verdict.HAMILTONIAN_UNDEFINED
        assert report.k_value is None

    def test_predicted_edge(self, stability_service):
        assert stability_service.classify(ModelParams(2.0, 1, 0.5)).predicted_edge == pytest.approx(0.5)


class TestCriticalSpeeds:
    def test_reference_values(self):
        assert StabilityService.critical_speeds(0.45, 1).c1 == pytest.approx(C1_P1_ALPHA_045, rel=1e-12)
        assert StabilityService.critical_speeds(0.45, 1).c1 == pytest.approx(1.0202459, abs=1e-7)
        assert StabilityService.critical_speeds(2.0, 1).c2 == pytest.approx(C2_P1_ALPHA_2, rel=1e-12)
        assert StabilityService.critical_speeds(2.0, 1).c2 == pytest.approx(0.561257, abs=1e-6)
        assert StabilityService.critical_speeds(0.75, 2).c1 == pytest.approx(C1_P2_ALPHA_075, rel=1e-12)

    def test_reduces_to_low_power_formulas(self, rng):
        for alpha in rng.uniform(0.7, 2.0, size=20):
            np.testing.assert_allclose(StabilityService.critical_speeds(alpha, 1), p1_roots(alpha), rtol=1e-13)
            np.testing.assert_allclose(StabilityService.critical_speeds(alpha, 2), p2_roots(alpha), rtol=1e-13)

    def test_roots_are_zeros_of_derivative(self):
        for params in (
            ModelParams(2.0, 1, StabilityService.critical_speeds(2.0, 1).c2),
            ModelParams(0.45, 1, StabilityService.critical_speeds(0.45, 1).c1),
        ):
            k_value = StabilityService.k_of_c(params)
            assert abs(StabilityService.dk_dc(params)) < 1e-9 * k_value

    def test_no_real_root(self):
        with pytest.raises(NoRealRootError):
            StabilityService.critical_speeds(0.3, 1)

    def test_root_curves(self, stability_service):
        frame = stability_service.root_curves(1, [0.3, 0.45, 2.0])
        assert list(frame.columns) == ["alpha", "c1", "c2"]
        assert math.isnan(frame.loc[0, "c1"])
        assert frame.loc[1, "c1"] == pytest.approx(C1_P1_ALPHA_045, rel=1e-12)
        assert frame.loc[2, "c2"] == pytest.approx(C2_P1_ALPHA_2, rel=1e-12)


class TestRegionMap:
    def test_lattice(self):
        np.testing.assert_allclose(StabilityService.lattice("c", (0.5, 0.7), 0.1), [0.5, 0.6, 0.7])
        with pytest.raises(ConfigurationError):
            StabilityService.lattice("c", (1.0, 0.5), 0.1)
        with pytest.raises(ConfigurationError):
            StabilityService.lattice("c", (0.5, 1.0), 0.0)

    def test_region_map(self, stability_service):
        frame = stability_service.region_map(1, (0.3, 0.8), (0.5, 1.5), 0.5)
        assert list(frame.columns) == ["alpha", "c", "verdict"]
        assert len(frame) == 6
        verdicts = {(row.alpha, row.c): row.verdict for row in frame.itertuples()}
        assert verdicts[(0.3, 1.5)] == "HamiltonianUndefined"
        assert verdicts[(0.8, 1.0)] == "NoSolitaryWave"
        assert verdicts[(0.8, 1.5)] == "SpectrallyStable"
        assert verdicts[(0.8, 0.5)] == "SpectrallyUnstable"

    @pytest.mark.slow
    def test_verdict_changes_follow_boundaries(self, stability_service):
        step = 0.01
        frame = stability_service.region_map(1, (0.05, 2.0), (0.01, 3.0), step)
        table = frame.pivot(index="alpha", columns="c", values="verdict")
        alphas = table.index.to_numpy()
        speeds = table.columns.to_numpy()
        verdicts = table.to_numpy()

        def roots(alpha):
            try:
                return list(StabilityService.critical_speeds(alpha, 1))
            except NoRealRootError:
                return []

        def within_cell(value, low, high):
            return low - step - 1e-9 <= value <= high + step + 1e-9

        for i, alpha in enumerate(alphas):
            boundaries = [0.6, 1.0] + roots(alpha)
            for j in np.nonzero(verdicts[i, 1:] != verdicts[i, :-1])[0]:
                low, high = speeds[j], speeds[j + 1]
                assert any(within_cell(b, low, high) for b in boundaries), (alpha, low)

        for j, c in enumerate(speeds):
            for i in np.nonzero(verdicts[1:, j] != verdicts[:-1, j])[0]:
                low, high = alphas[i], alphas[i + 1]
                if any(within_cell(a, low, high) for a in (1.0 / 3.0, 0.5, 1.0)):
                    continue
                pairs = zip(roots(low), roots(high))
                assert any(within_cell(c, min(pair), max(pair)) for pair in pairs), (c, low)


class TestDenseOperators:
    def test_resource_cap(self, wave_service):
        service = StabilityService(wave_service, dense_cap=64)
        with pytest.raises(ResourceError):
            service.skew_operator(2.0, spectral.make_grid(10.0, 128))

    def test_symmetry_guard(self):
        with pytest.raises(SymmetryError):
            StabilityService._symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]), OperatorKind.LC)

    def test_jlc_operator(self, stability_service, wave_service):
        params = ModelParams(2.0, 1, 1.5)
        wave = wave_service.solve_petviashvili(params, stability_service.stability_grid(params, 128))
        operator = stability_service.assemble_jlc(wave)
        assert operator.kind is OperatorKind.JLC
        assert operator.params == params
        assert operator.size == 128
        with pytest.raises(ConfigurationError):
            stability_service.spectrum_counts(operator, wave)

    def test_skew_operator(self, stability_service, rng):
        grid = spectral.make_grid(12.0, 64)
        skew = stability_service.skew_operator(1.5, grid)
        f, g = rng.normal(size=(2, 64))
        assert (skew @ f) @ g == pytest.approx(-(f @ (skew @ g)), abs=1e-12)

    def test_transport_eigenvalues(self, stability_service):
        grid = spectral.make_grid(12.0, 64)
        skew = stability_service.skew_operator(1.2, grid)
        eigenvalues = np.linalg.eigvals(skew)
        expected = grid.odd_wavenumbers / spectral.bbm_symbol(1.2, grid)
        assert np.max(np.abs(eigenvalues.real)) < 1e-10
        np.testing.assert_allclose(np.sort(eigenvalues.imag), np.sort(expected), atol=1e-10)

    def test_lc_counts_match_ground_state_operator(self, stability_service, wave_service):
        params = ModelParams(2.0, 1, 1.5)
        grid = stability_service.stability_grid(params, 512)
        wave = wave_service.solve_petviashvili(params, grid)
        wave_counts = stability_service.spectrum_counts(stability_service.assemble_lc(wave), wave)

        normalized = spectral.make_grid(48.0, 512)
        ground = wave_service.solve_ground_state(2.0, 1, normalized)
        operator = stability_service.assemble_ground_state_operator(ground.profile, 2.0, 1, normalized)
        ground_counts = stability_service.spectrum_counts(operator, ground)

        assert wave_counts.n_negative == ground_counts.n_negative == 1
        assert wave_counts.kernel_quality > 0.999
        assert ground_counts.kernel_quality > 0.999

    def test_negative_branch_kind(self, stability_service, wave_service):
        params = ModelParams(2.0, 1, 0.5)
        wave = wave_service.solve_petviashvili(params, stability_service.stability_grid(params, 256))
        operator = stability_service.assemble_lc(wave)
        assert operator.kind is OperatorKind.LC_MINUS
        assert operator.asymmetry() == 0.0

    def test_essential_edge_estimate(self, stability_service, wave_service):
        params = ModelParams(2.0, 1, 1.5)
        wave = wave_service.solve_petviashvili(params, stability_service.stability_grid(params, 512))
        counts = stability_service.spectrum_counts(stability_service.assemble_lc(wave), wave)
        assert counts.essential_edge_estimate == pytest.approx(0.5, rel=0.2)

    @pytest.mark.parametrize("alpha, c", [(2.0, 0.5), (1.5, 0.3), (0.8, 0.5)])
    def test_negative_branch_counts(self, stability_service, wave_service, alpha, c):
        params = ModelParams(alpha, 1, c)
        wave = wave_service.solve_petviashvili(params, stability_service.stability_grid(params, 512))
        counts = stability_service.spectrum_counts(stability_service.assemble_lc(wave), wave)
        assert counts.n_negative == 1
        assert counts.kernel_quality > 0.999
        assert counts.essential_edge_estimate == pytest.approx(
            StabilityService.essential_edge(params), rel=0.2
        )

    @pytest.mark.parametrize("c", [1.5, 0.5])
    def test_zero_potential_spectrum(self, stability_service, c):
        params = ModelParams(2.0, 1, c)
        grid = stability_service.stability_grid(params, 128)
        wave = SolitaryWave(params, grid, np.zeros(grid.n_points), 0.0)
        operator = stability_service.assemble_lc(wave)
        counts = stability_service.spectrum_counts(operator, wave)
        assert counts.n_negative == 0
        assert np.min(np.linalg.eigvalsh(operator.matrix)) == pytest.approx(abs(c - 1.0), rel=1e-10)
        assert counts.essential_edge_estimate == pytest.approx(abs(c - 1.0), rel=1e-10)

    def test_growing_modes_of_stable_wave(self, stability_service, wave_service):
        params = ModelParams(2.0, 1, 1.5)
        wave = wave_service.solve_petviashvili(params, stability_service.stability_grid(params, 256))
        modes = stability_service.growing_modes(wave)
        assert modes.eigenvalues.shape == (256,)
        assert modes.max_real_part < 1e-5


class TestSpeedDerivativeIdentity:
    @pytest.mark.parametrize("alpha, c", [(2.0, 1.5), (2.0, 0.5), (0.8, 1.3), (1.5, 0.3)])
    def test_lc_maps_speed_derivative(self, stability_service, wave_service, alpha, c):
        # L_c dQ/dc = -(Q + (5/4) D^a Q); the assembled operator is -L_c on the negative branch
        params = ModelParams(alpha, 1, c)
        grid = stability_service.stability_grid(params, 512)
        wave = wave_service.solve_petviashvili(params, grid)
        dc = 1e-3
        ahead = wave_service.solve_petviashvili(params.with_speed(c + dc), grid)
        behind = wave_service.solve_petviashvili(params.with_speed(c - dc), grid)
        speed_derivative = (ahead.profile - behind.profile) / (2.0 * dc)

        image = stability_service.assemble_lc(wave).matrix @ speed_derivative
        expected = -wave.branch.sign * spectral.apply_bbm_operator(wave.profile, alpha, grid)
        assert np.max(np.abs(image - expected)) < 1e-3 * np.max(np.abs(expected))


class TestMomentumDerivative:
    def test_matches_closed_form(self, stability_service):
        params = ModelParams(2.0, 1, 1.5)
        value = stability_service.momentum_derivative(params, n_points=512)
        expected = -StabilityService.momentum_scale(1) * StabilityService.dk_dc(params) * 6.0
        assert value == pytest.approx(expected, rel=1e-4)

    def test_rejects_nonpositive_step(self, stability_service, kdv_params):
        with pytest.raises(ConfigurationError):
            stability_service.momentum_derivative(kdv_params, dc=0.0)

    @pytest.mark.parametrize(
        "alpha, p, c, stable",
        [
            (0.6, 1, 1.1, True), (1.5, 1, 0.58, True), (1.5, 1, 0.3, False), (0.45, 1, 1.01, False),
            (0.45, 1, 1.07, True), (2.0, 1, 0.59, True), (2.0, 1, 0.52, False),
            (0.75, 2, 1.02, False), (0.75, 2, 2.0, True), (1.5, 2, 1.3, True),
            (0.4, 1, 1.3568098155630357, True),
        ],
    )
    def test_sign_opposes_k_derivative(self, stability_service, alpha, p, c, stable):
        params = ModelParams(alpha, p, c)
        value = stability_service.momentum_derivative(params, n_points=512)
        assert np.sign(value) == -np.sign(StabilityService.dk_dc(params))
        assert (value < 0) is stable

    def test_above_first_root_on_coarse_grid(self, stability_service):
        c1 = StabilityService.critical_speeds(0.4, 1).c1
        assert stability_service.momentum_derivative(ModelParams(0.4, 1, c1 + 0.1), n_points=512) < 0


class TestAnalyze:
    @pytest.mark.parametrize("alpha, p, c", [(2.0, 1, 1.5), (0.6, 1, 1.1), (1.5, 1, 0.58)])
    def test_stable_index(self, stability_service, alpha, p, c):
        report = stability_service.analyze(ModelParams(alpha, p, c), growth=False)
        assert report.n_negative == 1
        assert report.n_I == 1
        assert report.index == 0
        assert report.verdict_agreement is True

    @pytest.mark.parametrize("alpha, p, c", [(1.5, 1, 0.3), (0.45, 1, 1.01)])
    def test_unstable_index(self, stability_service, alpha, p, c):
        report = stability_service.analyze(ModelParams(alpha, p, c), growth=False)
        assert report.n_negative == 1
        assert report.n_I == 0
        assert report.numeric_verdict is Verdict.SPECTRALLY_UNSTABLE
        assert report.verdict_agreement is True

    def test_short_circuits_without_wave(self, stability_service):
        report = stability_service.analyze(ModelParams(1.5, 1, 0.8))
        assert report.verdict is Verdict.NO_SOLITARY_WAVE
        assert report.n_negative is None
        assert report.to_dict()["index"] is None

    def test_report_dict(self, stability_service):
        report = stability_service.analyze(ModelParams(2.0, 1, 1.5), n_points=256)
        data = report.to_dict()
        assert data["verdict"] == "SpectrallyStable"
        assert data["numeric_verdict"] == "SpectrallyStable"
        assert data["max_growth_rate"] < 1e-5
