"""Shared fixtures for the gfbbm-lab test suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add src directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from gfbbm.models import ModelParams  # noqa: E402
from gfbbm.services import (  # noqa: E402
    EvolutionService, SolitaryWaveService, StabilityService, spectral,
)


@pytest.fixture
def wave_service():
    return SolitaryWaveService()


@pytest.fixture
def stability_service(wave_service):
    return StabilityService(wave_service)


@pytest.fixture
def evolution_service():
    return EvolutionService()


@pytest.fixture
def trig_grid():
    """[-pi, pi) with 32 nodes: wavenumbers are the integers."""
    return spectral.make_grid(np.pi, 32)


@pytest.fixture
def wave_grid():
    """L = 64, N = 1024, the closed-form regression grid."""
    return spectral.make_grid(64.0, 1024)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def smooth_field(trig_grid, rng):
    """Band-limited random real field on the trig grid."""
    x = trig_grid.nodes
    field = np.zeros_like(x)
    for k in range(1, 10):
        a, b = rng.normal(size=2)
        field += a * np.cos(k * x) + b * np.sin(k * x)
    return field + 0.3


@pytest.fixture
def exact_wave(wave_service, wave_grid):
    return wave_service.exact_solution(1.5, wave_grid)


@pytest.fixture
def kdv_params():
    return ModelParams(2.0, 1, 1.5)
