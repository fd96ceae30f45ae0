"""Business logic services for gfbbm-lab."""

from . import functionals, spectral
from .evolution_service import EvolutionService
from .solitary_wave_service import SolitaryWaveService
from .stability_service import StabilityService
from .sweep_service import SweepService

__all__ = [
    "functionals",
    "spectral",
    "EvolutionService",
    "SolitaryWaveService",
    "StabilityService",
    "SweepService",
]
