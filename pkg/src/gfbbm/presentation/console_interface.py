"""Console interface for gfbbm-lab."""

import logging
import sys
from typing import Any, Dict, Optional

import numpy as np
from colorama import Fore, Style, init

from ..data import FileManager, TraceStore, WaveStore
from ..models import ModelParams, PerturbationSpec, PetviashviliSettings, RunConfig
from ..services import (
    EvolutionService, SolitaryWaveService, StabilityService, SweepService, spectral,
)
from ..utils.constants import Constants
from ..utils.exceptions import ConfigurationError, LabError
from ..utils.helpers import ValidationHelper
from ..utils.logging_setup import configure_logging
from .formatters import ResultFormatter

# Initialize colorama for Windows compatibility
init()

logger = logging.getLogger(__name__)


def exit_code_for(error: LabError) -> int:
    """Status of the most specific error class listed in Constants.EXIT_CODES."""
    for cls in type(error).__mro__:
        if cls.__name__ in Constants.EXIT_CODES:
            return Constants.EXIT_CODES[cls.__name__]
    return 1


class ConsoleInterface:
    """Dispatches subcommands and reports results."""

    def __init__(
        self,
        wave_service: SolitaryWaveService,
        stability_service: StabilityService,
        evolution_service: EvolutionService,
    ):
        """Initialize console interface."""
        self.wave_service = wave_service
        self.stability_service = stability_service
        self.evolution_service = evolution_service
        self.formatter = ResultFormatter()

    def run(self, args: Any) -> int:
        """Run one subcommand; returns the process exit status."""
        configure_logging(getattr(args, "verbose", 0), getattr(args, "quiet", False))
        self.formatter = ResultFormatter(getattr(args, "output_format", "table"))
        cli: Dict[str, Any] = vars(args)
        try:
            file_values = RunConfig.load_file(args.config) if args.config else None
            config = RunConfig.from_sources(cli, file_values)
            handler = getattr(self, f"cmd_{config.subcommand}")
            return handler(config, cli)
        except LabError as error:
            print(f"{Fore.RED}{type(error).__name__}: {error}{Style.RESET_ALL}", file=sys.stderr)
            return exit_code_for(error)

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------
    @staticmethod
    def _success(message: str) -> None:
        print(f"{Fore.GREEN}✓ {message}{Style.RESET_ALL}")

    @staticmethod
    def _warn(messages) -> None:
        for message in messages:
            print(f"{Fore.YELLOW}! {message}{Style.RESET_ALL}")

    @staticmethod
    def _params(config: RunConfig) -> ModelParams:
        return ModelParams(config.alpha, config.p, config.c)

    @staticmethod
    def _stem(config: RunConfig, default: str) -> str:
        return ValidationHelper.label_stem(config.label) if config.label else default

    def _settings(self, config: RunConfig) -> PetviashviliSettings:
        return PetviashviliSettings(tolerance=config.tolerance, max_iterations=config.max_iterations)

    # ------------------------------------------------------------------
    # Subcommands
    # ------------------------------------------------------------------
    def cmd_solve(self, config: RunConfig, cli: Optional[Dict[str, Any]] = None) -> int:
        """Solve, report and write the profile CSV with its JSON header."""
        params = self._params(config)
        grid = spectral.make_grid(config.half_length, config.n_points)
        wave = self.wave_service.solve_petviashvili(params, grid, self._settings(config))
        pohozaev = self.wave_service.pohozaev_ratio(wave)

        store = WaveStore(config.output)
        csv_path, _ = store.save(wave, self._stem(config, store.default_stem(params)))
        FileManager.write_sidecar(csv_path, config.to_dict())

        self._success(f"converged in {wave.iterations} iterations (residual {wave.residual:.2e})")
        print(self.formatter.format_wave(wave, pohozaev))
        self._warn(wave.warnings)
        print(f"Wrote {csv_path}")
        return 0

    def cmd_classify(self, config: RunConfig, cli: Optional[Dict[str, Any]] = None) -> int:
        """Single-point verdict when alpha and c are set by flag or config file, else a region map."""
        output = FileManager.ensure_directory(config.output)
        if config.single_point:
            report = self.stability_service.classify(self._params(config))
            stem = self._stem(config, f"classify_a{config.alpha:g}_p{config.p}_c{config.c:g}")
            FileManager.write_json(output / f"{stem}.json", report.to_dict())
            print(f"{Fore.CYAN}{report.verdict.value}{Style.RESET_ALL}")
            return 0

        frame = self.stability_service.region_map(
            config.p,
            (config.alpha_min, config.alpha_max),
            (config.c_min, config.c_max),
            config.resolution,
        )
        path = FileManager.write_table(frame, output / f"{self._stem(config, f'region_map_p{config.p}')}.csv")
        FileManager.write_sidecar(path, config.to_dict())
        self._success(f"classified {len(frame)} lattice points")
        print(self.formatter.table_formatter.format_region_counts(frame))
        print(f"Wrote {path}")
        return 0

    def cmd_evolve(self, config: RunConfig, cli: Optional[Dict[str, Any]] = None) -> int:
        """Solve or load a wave, perturb it and integrate."""
        if config.wave_input:
            wave = WaveStore(config.output).load(config.wave_input)
            logger.info("loaded wave alpha=%g p=%d c=%g from %s", wave.params.alpha,
                        wave.params.p, wave.params.c, config.wave_input)
            self.evolution_service.check_time_step(config.dt, wave.params, wave.grid)
        else:
            params = self._params(config)
            grid = spectral.make_grid(config.half_length, config.n_points)
            self.evolution_service.check_time_step(config.dt, params, grid)
            wave = self.wave_service.solve_petviashvili(params, grid, self._settings(config))

        spec = PerturbationSpec(wave, config.gamma)
        trace = self.evolution_service.run_experiment(
            spec,
            dt=config.dt,
            t_final=config.t_final,
            sample_interval=config.sample_interval,
            keep_snapshots=config.snapshots,
        )
        params = wave.params
        store = TraceStore(config.output)
        stem = self._stem(
            config, f"trace_a{params.alpha:g}_p{params.p}_c{params.c:g}_g{config.gamma:g}"
        )
        csv_path, _ = store.save(trace, stem)
        if config.snapshots:
            store.save_snapshots(trace, stem)
        FileManager.write_sidecar(csv_path, config.to_dict())

        self._success(f"evolved to t={trace.times[-1]:g} ({len(trace.times)} samples)")
        print(self.formatter.format_summary(store.summary(trace)))
        print(f"|F(t)-F(0)| = {trace.max_drift('momentum'):.3e}")
        self._warn(trace.warnings)
        print(f"Wrote {csv_path}")
        return 0

    def cmd_spectrum(self, config: RunConfig, cli: Optional[Dict[str, Any]] = None) -> int:
        """Dense eigen report with the index formula."""
        self.stability_service.dense_cap = config.dense_cap
        params = self._params(config)
        report = self.stability_service.analyze(
            params,
            n_points=config.n_points,
            dc=config.dc,
            normalized_half_length=config.normalized_half_length,
        )
        output = FileManager.ensure_directory(config.output)
        stem = self._stem(config, f"spectrum_a{params.alpha:g}_p{params.p}_c{params.c:g}")
        path = FileManager.write_json(output / f"{stem}.json", report.to_dict())
        FileManager.write_sidecar(path, config.to_dict())

        print(self.formatter.format_report(report))
        if report.verdict_agreement is False:
            self._warn([f"numeric index {report.index} disagrees with {report.verdict.value}"])
        else:
            self._success(f"{report.verdict.value}")
        print(f"Wrote {path}")
        return 0

    def cmd_sweep(self, config: RunConfig, cli: Optional[Dict[str, Any]] = None) -> int:
        """Worker-pool batch over a points file."""
        if not config.points_file:
            raise ConfigurationError("sweep needs --points-file (CSV with columns alpha,p,c)")
        sweep = SweepService(config.workers)
        points = sweep.load_points(config.points_file)
        frame = sweep.run(
            points,
            config.sweep_kind,
            config.output,
            n_points=config.n_points,
            dc=config.dc,
            dense_cap=config.dense_cap,
            normalized_half_length=config.normalized_half_length,
        )
        output = FileManager.ensure_directory(config.output)
        path = FileManager.write_table(frame, output / f"{self._stem(config, f'sweep_{config.sweep_kind}')}.csv")
        FileManager.write_sidecar(path, config.to_dict())

        failures = int(frame["error"].notna().sum())
        self._success(f"swept {len(frame)} points ({failures} failed)")
        print(self.formatter.format_frame(frame))
        print(f"Wrote {path}")
        return 0

    def cmd_roots(self, config: RunConfig, cli: Optional[Dict[str, Any]] = None) -> int:
        """Critical-speed curves c1(alpha), c2(alpha) for one p."""
        alphas = self.stability_service.lattice(
            "alpha", (config.alpha_min, config.alpha_max), config.resolution
        )
        frame = self.stability_service.root_curves(config.p, alphas)
        output = FileManager.ensure_directory(config.output)
        path = FileManager.write_table(frame, output / f"{self._stem(config, f'roots_p{config.p}')}.csv")
        FileManager.write_sidecar(path, config.to_dict())

        defined = int(np.isfinite(frame["c1"]).sum())
        self._success(f"{defined} of {len(frame)} alpha values have real roots")
        print(self.formatter.format_frame(frame))
        print(f"Wrote {path}")
        return 0
