"""Solitary-wave persistence: profile CSV (x, Q) plus a JSON header."""

import logging
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from ..models import ModelParams, SolitaryWave
from ..services import spectral
from ..utils.exceptions import ConfigurationError, DimensionError
from .file_manager import FileManager

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ["x", "Q"]


class WaveStore:
    """Handles saving and loading solitary waves."""

    def __init__(self, directory: str = "output"):
        """Initialize with the output directory."""
        self.directory = Path(directory)

    def save(self, wave: SolitaryWave, stem: Optional[str] = None) -> Tuple[Path, Path]:
        """Write <stem>.csv and <stem>.json; returns both paths."""
        stem = stem or self.default_stem(wave.params)
        FileManager.ensure_directory(str(self.directory))
        csv_path = self.directory / f"{stem}.csv"
        json_path = self.directory / f"{stem}.json"

        frame = pd.DataFrame({"x": wave.grid.nodes, "Q": wave.profile}, columns=PROFILE_COLUMNS)
        FileManager.write_table(frame, csv_path)
        FileManager.write_json(json_path, self.header(wave))
        logger.info("saved wave to %s", csv_path)
        return csv_path, json_path

    @staticmethod
    def header(wave: SolitaryWave) -> dict:
        return {
            **wave.params.to_dict(),
            "residual": wave.residual,
            "iterations": wave.iterations,
            "half_length": wave.grid.half_length,
            "n_points": wave.grid.n_points,
            "branch": wave.branch.value,
            "warnings": list(wave.warnings),
        }

    @staticmethod
    def default_stem(params: ModelParams) -> str:
        return f"wave_a{params.alpha:g}_p{params.p}_c{params.c:g}"

    def load(self, csv_path: str, json_path: Optional[str] = None) -> SolitaryWave:
        """Rebuild a SolitaryWave from its CSV and header."""
        csv_file = Path(csv_path)
        json_file = Path(json_path) if json_path else csv_file.with_suffix(".json")
        header = FileManager.read_json(json_file)
        try:
            params = ModelParams(header["alpha"], header["p"], header["c"])
            grid = spectral.make_grid(header["half_length"], header["n_points"])
        except KeyError as exc:
            raise ConfigurationError(f"wave header {json_file} lacks key {exc}") from exc

        frame = FileManager.read_table(csv_file)
        if list(frame.columns) != PROFILE_COLUMNS:
            raise ConfigurationError(
                f"{csv_file} must have columns {PROFILE_COLUMNS}, got {list(frame.columns)}"
            )
        if len(frame) != grid.n_points:
            raise DimensionError(
                f"{csv_file} has {len(frame)} rows, header says n_points={grid.n_points}"
            )
        nodes = frame["x"].to_numpy(dtype=float)
        if np.max(np.abs(nodes - grid.nodes)) > 1e-12 * grid.half_length:
            raise ConfigurationError(f"{csv_file} nodes do not match the header grid")

        return SolitaryWave(
            params,
            grid,
            frame["Q"].to_numpy(dtype=float),
            float(header.get("residual", np.nan)),
            int(header.get("iterations", 0)),
            warnings=list(header.get("warnings", [])),
        )
