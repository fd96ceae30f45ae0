"""Time-evolution data models."""

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import pandas as pd

from ..utils.exceptions import ConfigurationError
from .grid import SpectralGrid
from .params import ModelParams
from .wave import SolitaryWave


@dataclass
class EvolutionState:
    """Field samples at one instant."""

    field: np.ndarray = field(repr=False)
    time: float = 0.0
    step_count: int = 0

    def copy(self) -> "EvolutionState":
        """Snapshot safe to hand to another thread."""
        return EvolutionState(self.field.copy(), self.time, self.step_count)


@dataclass(frozen=True)
class InvariantRecord:
    """Conserved quantities I (mass), F (momentum) and H (energy) at one time."""

    time: float
    mass: float
    momentum: float
    energy: float


@dataclass
class PerturbationSpec:
    """Initial datum u0 = gamma * Q_c."""

    base_wave: SolitaryWave
    gamma: float = 1.1

    def __post_init__(self):
        if not self.gamma > 0:
            raise ConfigurationError(f"gamma must be positive, got {self.gamma}")

    def initial_field(self) -> np.ndarray:
        return self.base_wave.scaled(self.gamma)


TRACE_COLUMNS = ["t", "peak", "x_peak", "orbital_distance", "I", "F", "H"]


@dataclass
class EvolutionTrace:
    """Sampled series of one trajectory."""

    params: ModelParams
    grid: SpectralGrid
    dt: float
    gamma: float
    times: List[float] = field(default_factory=list)
    peaks: List[float] = field(default_factory=list)
    peak_positions: List[float] = field(default_factory=list)
    orbital_distances: List[float] = field(default_factory=list)
    invariants: List[InvariantRecord] = field(default_factory=list)
    snapshots: List[Tuple[float, np.ndarray]] = field(default_factory=list, repr=False)
    warnings: List[str] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        """Trace table with the documented column order."""
        return pd.DataFrame(
            {
                "t": self.times,
                "peak": self.peaks,
                "x_peak": self.peak_positions,
                "orbital_distance": self.orbital_distances,
                "I": [record.mass for record in self.invariants],
                "F": [record.momentum for record in self.invariants],
                "H": [record.energy for record in self.invariants],
            },
            columns=TRACE_COLUMNS,
        )

    def max_drift(self, quantity: str) -> float:
        """max_t |Q(t) - Q(0)| for quantity in {'mass', 'momentum', 'energy'}."""
        values = np.array([getattr(record, quantity) for record in self.invariants])
        if values.size == 0:
            return 0.0
        return float(np.max(np.abs(values - values[0])))

    def amplitude_slope(self) -> float:
        """Least-squares slope of |peak| against time."""
        if len(self.times) < 2:
            return 0.0
        slope, _ = np.polyfit(np.asarray(self.times), np.abs(np.asarray(self.peaks)), 1)
        return float(slope)
