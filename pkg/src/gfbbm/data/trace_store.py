"""Evolution output: trace CSV, JSON summary and flat binary snapshots.

Snapshot layout (little-endian): 8-byte magic ``GFBBMSNP``, uint32 format
version, uint32 N, then one record per sample: float64 t followed by N
float64 field values.
"""

import struct
from pathlib import Path
from typing import Tuple

import numpy as np
import pandas as pd

from ..models import TRACE_COLUMNS, EvolutionTrace
from ..utils.constants import Constants
from ..utils.exceptions import ConfigurationError, DimensionError
from .file_manager import FileManager

HEADER = struct.Struct("<8sII")


class TraceStore:
    """Handles writing and reading evolution traces."""

    def __init__(self, directory: str = "output"):
        self.directory = Path(directory)

    def save(self, trace: EvolutionTrace, stem: str) -> Tuple[Path, Path]:
        """Write <stem>.csv and the <stem>.json summary."""
        FileManager.ensure_directory(str(self.directory))
        csv_path = FileManager.write_table(trace.to_frame(), self.directory / f"{stem}.csv")
        json_path = FileManager.write_json(self.directory / f"{stem}.json", self.summary(trace))
        return csv_path, json_path

    @staticmethod
    def summary(trace: EvolutionTrace) -> dict:
        return {
            **trace.params.to_dict(),
            "half_length": trace.grid.half_length,
            "n_points": trace.grid.n_points,
            "dt": trace.dt,
            "gamma": trace.gamma,
            "t_final": trace.times[-1] if trace.times else 0.0,
            "samples": len(trace.times),
            "mass_drift": trace.max_drift("mass"),
            "momentum_drift": trace.max_drift("momentum"),
            "energy_drift": trace.max_drift("energy"),
            "amplitude_slope": trace.amplitude_slope(),
            "warnings": list(trace.warnings),
        }

    @staticmethod
    def load(csv_path: str) -> pd.DataFrame:
        frame = FileManager.read_table(Path(csv_path))
        if list(frame.columns) != TRACE_COLUMNS:
            raise ConfigurationError(
                f"{csv_path} must have columns {TRACE_COLUMNS}, got {list(frame.columns)}"
            )
        return frame

    def save_snapshots(self, trace: EvolutionTrace, stem: str) -> Path:
        """Write the kept full-field snapshots as <stem>.snap."""
        path = FileManager.ensure_directory(str(self.directory)) / f"{stem}.snap"
        n_points = trace.grid.n_points
        with open(path, "wb") as handle:
            handle.write(HEADER.pack(Constants.SNAPSHOT_MAGIC, Constants.SNAPSHOT_VERSION, n_points))
            for time, field in trace.snapshots:
                record = np.empty(n_points + 1, dtype="<f8")
                record[0] = time
                record[1:] = field
                handle.write(record.tobytes())
        return path

    @staticmethod
    def load_snapshots(path: str) -> Tuple[np.ndarray, np.ndarray]:
        """(times, fields) with fields shaped (records, N)."""
        raw = Path(path).read_bytes()
        if len(raw) < HEADER.size:
            raise ConfigurationError(f"{path} is too short for a snapshot header")
        magic, version, n_points = HEADER.unpack_from(raw)
        if magic != Constants.SNAPSHOT_MAGIC:
            raise ConfigurationError(f"{path} is not a snapshot file (magic {magic!r})")
        if version != Constants.SNAPSHOT_VERSION:
            raise ConfigurationError(f"unsupported snapshot version {version}")
        body = np.frombuffer(raw, dtype="<f8", offset=HEADER.size)
        if body.size % (n_points + 1):
            raise DimensionError(f"{path} body is not a whole number of {n_points}-point records")
        records = body.reshape(-1, n_points + 1)
        return records[:, 0].copy(), records[:, 1:].copy()
