"""Enumerations for model regimes and results."""

from enum import Enum


class Branch(Enum):
    """Solitary-wave branch selected by the wave speed."""
    POSITIVE = "positive"  # c > 1
    NEGATIVE = "negative"  # c < 3/5, p odd
    NONE = "none"

    @property
    def sign(self) -> int:
        """Sign of the profile on this branch (0 when no wave exists)."""
        return {Branch.POSITIVE: 1, Branch.NEGATIVE: -1}.get(self, 0)


class Verdict(Enum):
    """Stability classification of a parameter point."""
    SPECTRALLY_STABLE = "SpectrallyStable"
    SPECTRALLY_UNSTABLE = "SpectrallyUnstable"
    NO_SOLITARY_WAVE = "NoSolitaryWave"
    HAMILTONIAN_UNDEFINED = "HamiltonianUndefined"


class OperatorKind(Enum):
    """Kind of an assembled dense operator."""
    LC = "Lc"
    LC_MINUS = "LcMinus"
    JLC = "JLc"
    GROUND = "P"

    @property
    def is_symmetric(self) -> bool:
        """Self-adjoint kinds."""
        return self is not OperatorKind.JLC
