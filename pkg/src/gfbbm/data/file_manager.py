"""File management utilities."""

import json
import platform
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from .. import __version__
from ..utils.constants import Constants
from ..utils.exceptions import ConfigurationError


def _to_builtin(value: Any) -> Any:
    """numpy scalars/arrays to plain Python for json."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


class FileManager:
    """Handles file operations for gfbbm-lab outputs."""

    @staticmethod
    def ensure_directory(directory: str) -> Path:
        """Ensure directory exists, create if it doesn't."""
        path = Path(directory)
        path.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def write_json(path: Path, data: Dict[str, Any]) -> Path:
        """Deterministic JSON: sorted keys, LF endings, repr-exact floats."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(data, indent=2, sort_keys=True, default=_to_builtin)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text + "\n")
        return path

    @staticmethod
    def read_json(path: Path) -> Dict[str, Any]:
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"could not find {path}")
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path} is not valid JSON: {exc}") from exc

    @staticmethod
    def write_table(frame: pd.DataFrame, path: Path) -> Path:
        """CSV with a header row, LF endings and 17 significant digits."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=Constants.FLOAT_FORMAT, lineterminator="\n")
        return path

    @staticmethod
    def read_table(path: Path) -> pd.DataFrame:
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"could not find {path}")
        return pd.read_csv(path, float_precision="round_trip")

    @staticmethod
    def write_sidecar(
        data_path: Path, config: Dict[str, Any], extra: Optional[Dict[str, Any]] = None
    ) -> Path:
        """Run metadata next to a data file; the only place timestamps live."""
        data_path = Path(data_path)
        metadata = {
            "data_file": data_path.name,
            "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "version": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "pandas": pd.__version__,
            "config": config,
        }
        if extra:
            metadata.update(extra)
        return FileManager.write_json(data_path.with_suffix(".meta.json"), metadata)
