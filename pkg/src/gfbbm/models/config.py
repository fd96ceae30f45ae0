"""Run configuration merged from command line, config file and defaults."""

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional

from ..utils.constants import Constants
from ..utils.exceptions import ConfigurationError
from ..utils.helpers import ValidationHelper

# Defaults that differ by subcommand (dense spectra use the smaller eigen grid).
_SUBCOMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "spectrum": {"n_points": Constants.DEFAULT_EIGEN_N_POINTS},
    "sweep": {"n_points": Constants.DEFAULT_EIGEN_N_POINTS},
}


@dataclass
class RunConfig:
    """All subcommand parameters; seedless and fully deterministic."""

    subcommand: str = "solve"
    alpha: float = 2.0
    p: int = 1
    c: float = 1.5
    half_length: float = Constants.DEFAULT_HALF_LENGTH
    n_points: int = Constants.DEFAULT_N_POINTS
    tolerance: float = Constants.DEFAULT_TOLERANCE
    max_iterations: int = Constants.DEFAULT_MAX_ITERATIONS
    dt: float = Constants.DEFAULT_DT
    t_final: float = Constants.DEFAULT_T_FINAL
    gamma: float = Constants.DEFAULT_GAMMA
    sample_interval: float = Constants.DEFAULT_SAMPLE_INTERVAL
    snapshots: bool = False
    dc: float = Constants.DEFAULT_DC
    dense_cap: int = Constants.DENSE_CAP
    normalized_half_length: float = Constants.NORMALIZED_HALF_LENGTH
    alpha_min: float = 0.05
    alpha_max: float = 2.0
    c_min: float = 0.01
    c_max: float = 1.5
    resolution: float = Constants.DEFAULT_RESOLUTION
    sweep_kind: str = "stability"
    points_file: Optional[str] = None
    workers: int = 1
    wave_input: Optional[str] = None
    output: str = Constants.DEFAULT_OUTPUT_DIR
    label: Optional[str] = None
    # keys set by a flag or the config file rather than by defaults
    explicit_keys: FrozenSet[str] = field(default=frozenset(), repr=False, compare=False)

    @classmethod
    def field_names(cls) -> List[str]:
        return [f.name for f in fields(cls) if f.name != "explicit_keys"]

    @classmethod
    def from_sources(
        cls,
        cli: Dict[str, Any],
        file_values: Optional[Dict[str, Any]] = None,
    ) -> "RunConfig":
        """Merge: command-line flags override config-file keys override defaults."""
        names = set(cls.field_names())
        file_values = file_values or {}
        unknown = sorted(set(file_values) - names)
        if unknown:
            raise ConfigurationError(f"unknown config-file keys: {', '.join(unknown)}")

        subcommand = cli.get("subcommand") or file_values.get("subcommand") or "solve"
        merged: Dict[str, Any] = dict(_SUBCOMMAND_DEFAULTS.get(subcommand, {}))
        merged.update(file_values)
        merged.update({k: v for k, v in cli.items() if k in names and v is not None})
        merged["subcommand"] = subcommand

        config = cls(**merged)
        config.explicit_keys = frozenset(
            name for name in names if name in file_values or cli.get(name) is not None
        )
        config.validate()
        return config

    @staticmethod
    def load_file(path: str) -> Dict[str, Any]:
        """Read a JSON config file."""
        ValidationHelper.require(ValidationHelper.validate_file_format(path, (".json",)))
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigurationError(f"config file {path} must hold a JSON object")
        return data

    def validate(self) -> None:
        """Check every numeric field against the owning module's preconditions."""
        check = ValidationHelper
        if self.subcommand not in Constants.SUBCOMMANDS:
            raise ConfigurationError(f"unknown subcommand {self.subcommand!r}")
        check.require(check.validate_alpha(self.alpha))
        check.require(check.validate_nonlinearity(self.p))
        for name in ("c", "half_length", "tolerance", "dt", "t_final", "gamma",
                     "sample_interval", "dc", "resolution", "normalized_half_length"):
            check.require(check.validate_positive(name, getattr(self, name)))
        check.require(
            check.validate_power_of_two("n_points", self.n_points, Constants.MIN_N_POINTS)
        )
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be at least 1")
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")
        if self.sweep_kind not in Constants.SWEEP_KINDS:
            raise ConfigurationError(
                f"sweep kind must be one of {Constants.SWEEP_KINDS}, got {self.sweep_kind!r}"
            )
        if self.subcommand == "classify":
            check.require(check.validate_range("alpha", self.alpha_min, self.alpha_max))
            check.require(check.validate_range("c", self.c_min, self.c_max))
        if self.subcommand == "evolve" and self.sample_interval < self.dt:
            raise ConfigurationError("sample_interval must be at least one time step dt")

    @property
    def single_point(self) -> bool:
        """True when both alpha and c were given explicitly."""
        return {"alpha", "c"} <= self.explicit_keys

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("explicit_keys")
        return data
