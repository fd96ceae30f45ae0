"""Data models for gfbbm-lab."""

from .config import RunConfig
from .enums import Branch, OperatorKind, Verdict
from .evolution import (
    TRACE_COLUMNS, EvolutionState, EvolutionTrace, InvariantRecord, PerturbationSpec,
)
from .grid import SpectralGrid
from .params import ModelParams, critical_exponent
from .stability import (
    CriticalSpeeds, GrowingModes, OperatorMatrix, SpectrumCounts, StabilityReport,
)
from .wave import GroundState, GroundStateMap, PetviashviliSettings, SolitaryWave

__all__ = [
    "RunConfig", "Branch", "OperatorKind", "Verdict", "TRACE_COLUMNS",
    "EvolutionState", "EvolutionTrace", "InvariantRecord", "PerturbationSpec",
    "SpectralGrid", "ModelParams", "critical_exponent", "CriticalSpeeds",
    "GrowingModes", "OperatorMatrix", "SpectrumCounts", "StabilityReport",
    "GroundState", "GroundStateMap", "PetviashviliSettings", "SolitaryWave",
]
