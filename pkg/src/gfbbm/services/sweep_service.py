"""Batch evaluation of (alpha, p, c) points on a worker pool."""

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import pandas as pd

from ..models import ModelParams
from ..utils.constants import Constants
from ..utils.exceptions import ConfigurationError, LabError

logger = logging.getLogger(__name__)

Point = Tuple[float, int, float]


def _part_name(point: Point) -> str:
    alpha, p, c = point
    return f"part_a{alpha:.12g}_p{p}_c{c:.12g}.json"


def evaluate_point(task: Dict[str, Any]) -> str:
    """Worker entry: evaluate one point and write its JSON part; returns the path.

    Top-level so it pickles into pool workers. Solver failures become rows
    carrying the error class instead of aborting the sweep.
    """
    # data.wave_store imports services.spectral
    from ..data.file_manager import FileManager
    from ..data.wave_store import WaveStore
    from .solitary_wave_service import SolitaryWaveService
    from .stability_service import StabilityService

    alpha, p, c = task["point"]
    row: Dict[str, Any] = {"alpha": alpha, "p": p, "c": c, "error": None}
    try:
        params = ModelParams(alpha, p, c)
        waves = SolitaryWaveService()
        stability = StabilityService(waves, dense_cap=task["dense_cap"])
        if task["kind"] == "stability":
            report = stability.analyze(
                params,
                n_points=task["n_points"],
                dc=task["dc"],
                normalized_half_length=task["normalized_half_length"],
            )
            summary = report.to_dict()
            roots = summary.pop("roots")
            summary["c1"], summary["c2"] = roots if roots else (None, None)
            row.update(summary)
        else:
            grid = stability.stability_grid(
                params, task["n_points"], task["normalized_half_length"]
            )
            wave = waves.solve_petviashvili(params, grid)
            measured, predicted = waves.pohozaev_ratio(wave)
            WaveStore(task["parts_dir"]).save(wave)
            row.update({
                "branch": wave.branch.value,
                "peak": wave.peak,
                "half_length": grid.half_length,
                "residual": wave.residual,
                "iterations": wave.iterations,
                "pohozaev_measured": measured,
                "pohozaev_predicted": predicted,
                "pohozaev_error": abs(measured - predicted) / abs(predicted),
            })
    except LabError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    path = Path(task["parts_dir"]) / _part_name((alpha, p, c))
    FileManager.write_json(path, row)
    return str(path)


class SweepService:
    """Runs independent points concurrently and merges the parts deterministically."""

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ConfigurationError(f"workers must be at least 1, got {workers}")
        self.workers = workers

    @staticmethod
    def load_points(path: str) -> List[Point]:
        """Read an alpha,p,c CSV."""
        from ..data.file_manager import FileManager

        frame = FileManager.read_table(Path(path))
        missing = {"alpha", "p", "c"} - set(frame.columns)
        if missing:
            raise ConfigurationError(f"points file {path} lacks columns {sorted(missing)}")
        if frame.empty:
            raise ConfigurationError(f"points file {path} has no rows")
        return [
            (float(row.alpha), int(row.p), float(row.c))
            for row in frame.itertuples(index=False)
        ]

    def run(
        self,
        points: Sequence[Point],
        kind: str,
        output_dir: str,
        n_points: int = Constants.DEFAULT_EIGEN_N_POINTS,
        dc: float = Constants.DEFAULT_DC,
        dense_cap: int = Constants.DENSE_CAP,
        normalized_half_length: float = Constants.NORMALIZED_HALF_LENGTH,
    ) -> pd.DataFrame:
        """Evaluate every point, then merge the parts sorted by (alpha, p, c)."""
        if kind not in Constants.SWEEP_KINDS:
            raise ConfigurationError(f"sweep kind must be one of {Constants.SWEEP_KINDS}")
        if not points:
            raise ConfigurationError("sweep needs at least one point")
        parts_dir = Path(output_dir) / f"{kind}_parts"
        parts_dir.mkdir(parents=True, exist_ok=True)
        tasks = [
            {
                "point": tuple(point),
                "kind": kind,
                "parts_dir": str(parts_dir),
                "n_points": n_points,
                "dc": dc,
                "dense_cap": dense_cap,
                "normalized_half_length": normalized_half_length,
            }
            for point in points
        ]
        logger.info("sweep %s: %d points on %d workers", kind, len(tasks), self.workers)
        if self.workers == 1:
            paths = [evaluate_point(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                paths = list(pool.map(evaluate_point, tasks))
        return self.merge(paths)

    @staticmethod
    def merge(paths: Sequence[str]) -> pd.DataFrame:
        """One table from the per-point parts, sorted for determinism."""
        from ..data.file_manager import FileManager

        rows = [FileManager.read_json(Path(path)) for path in paths]
        frame = pd.DataFrame(rows)
        leading = ["alpha", "p", "c"]
        ordered = leading + sorted(column for column in frame.columns if column not in leading)
        frame = frame[ordered].sort_values(leading, kind="mergesort").reset_index(drop=True)
        failures = int(frame["error"].notna().sum())
        if failures:
            logger.warning("%d of %d sweep points failed", failures, len(frame))
        return frame
