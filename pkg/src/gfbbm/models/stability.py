"""Stability data models."""

from dataclasses import dataclass, field
from typing import Any, Dict, NamedTuple, Optional, Tuple

import numpy as np

from .enums import OperatorKind, Verdict
from .grid import SpectralGrid
from .params import ModelParams


class CriticalSpeeds(NamedTuple):
    """Zeros of dK/dc, c1 > c2."""
    c1: float
    c2: float


class SpectrumCounts(NamedTuple):
    """Summary of a self-adjoint operator spectrum."""
    n_negative: int
    kernel_quality: float
    essential_edge_estimate: float


class GrowingModes(NamedTuple):
    """Eigenvalues of J L_c and the largest real part."""
    eigenvalues: np.ndarray
    max_real_part: float


@dataclass
class OperatorMatrix:
    """Dense matrix acting on grid samples."""

    matrix: np.ndarray = field(repr=False)
    kind: OperatorKind
    grid: SpectralGrid
    params: Optional[ModelParams] = None

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    def asymmetry(self) -> float:
        """max |A - A^T| relative to max |A|."""
        scale = max(float(np.max(np.abs(self.matrix))), np.finfo(float).tiny)
        return float(np.max(np.abs(self.matrix - self.matrix.T))) / scale


@dataclass
class StabilityReport:
    """Analytic and numeric stability verdict for one parameter point."""

    params: ModelParams
    verdict: Verdict
    k_derivative_sign: int = 0
    roots: Optional[Tuple[float, float]] = None
    k_value: Optional[float] = None
    k_derivative: Optional[float] = None
    n_negative: Optional[int] = None
    kernel_quality: Optional[float] = None
    essential_edge_estimate: Optional[float] = None
    predicted_edge: Optional[float] = None
    momentum_derivative: Optional[float] = None
    n_I: Optional[int] = None
    max_growth_rate: Optional[float] = None

    @property
    def index(self) -> Optional[int]:
        """n(L_c restricted to {F'(Q_c)}^perp) = n_negative - n_I."""
        if self.n_negative is None or self.n_I is None:
            return None
        return self.n_negative - self.n_I

    @property
    def numeric_verdict(self) -> Optional[Verdict]:
        """Verdict implied by the numeric counts alone."""
        if self.index is None:
            return None
        if self.n_negative == 1 and self.n_I == 1:
            return Verdict.SPECTRALLY_STABLE
        return Verdict.SPECTRALLY_UNSTABLE

    @property
    def verdict_agreement(self) -> Optional[bool]:
        numeric = self.numeric_verdict
        return None if numeric is None else numeric is self.verdict

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation."""
        return {
            **self.params.to_dict(),
            "verdict": self.verdict.value,
            "k_derivative_sign": self.k_derivative_sign,
            "roots": list(self.roots) if self.roots is not None else None,
            "k_value": self.k_value,
            "k_derivative": self.k_derivative,
            "n_negative": self.n_negative,
            "kernel_quality": self.kernel_quality,
            "essential_edge_estimate": self.essential_edge_estimate,
            "predicted_edge": self.predicted_edge,
            "momentum_derivative": self.momentum_derivative,
            "n_I": self.n_I,
            "index": self.index,
            "max_growth_rate": self.max_growth_rate,
            "numeric_verdict": self.numeric_verdict.value if self.numeric_verdict else None,
            "verdict_agreement": self.verdict_agreement,
        }
