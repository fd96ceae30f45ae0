"""Model parameter triple (alpha, p, c) and its derived regime flags."""

import math
from dataclasses import dataclass

from ..utils.exceptions import ConfigurationError
from .enums import Branch


def critical_exponent(alpha: float) -> float:
    """p_max(alpha): 2 alpha / (1 - alpha) below alpha = 1, unbounded above."""
    if alpha < 1.0:
        return 2.0 * alpha / (1.0 - alpha)
    return math.inf


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the gfBBM equation and of one travelling wave."""

    alpha: float
    p: int
    c: float

    def __post_init__(self):
        """Validate basic ranges; regime questions are answered by properties."""
        if not 0 < self.alpha <= 2:
            raise ConfigurationError(f"alpha must lie in (0, 2], got {self.alpha}")
        if isinstance(self.p, bool) or int(self.p) != self.p or self.p < 1:
            raise ConfigurationError(f"p must be a positive integer, got {self.p}")
        if not self.c > 0:
            raise ConfigurationError(f"wave speed c must be positive, got {self.c}")
        object.__setattr__(self, "p", int(self.p))

    @property
    def hamiltonian_defined(self) -> bool:
        """alpha > p/(p+2); equivalent to p < p_max(alpha) for alpha < 1."""
        return self.alpha > self.p / (self.p + 2)

    @property
    def p_max(self) -> float:
        """Critical exponent for ground-state existence."""
        return critical_exponent(self.alpha)

    @property
    def branch(self) -> Branch:
        """Positive for c > 1, negative for c < 3/5 with p odd."""
        if self.c > 1.0:
            return Branch.POSITIVE
        if self.c < 0.6 and self.p % 2 == 1:
            return Branch.NEGATIVE
        return Branch.NONE

    @property
    def has_solitary_wave(self) -> bool:
        """A branch exists and the Hamiltonian is well defined."""
        return self.branch is not Branch.NONE and self.hamiltonian_defined

    @property
    def dispersion_coefficient(self) -> float:
        """(5/4) c - 3/4, the D^alpha coefficient of the wave equation."""
        return 1.25 * self.c - 0.75

    @property
    def mass_coefficient(self) -> float:
        """c - 1, the zeroth-order coefficient of the wave equation."""
        return self.c - 1.0

    @property
    def theta(self) -> float:
        """Dilation factor (4(c-1)/(5c-3))^(1/alpha); positive on both branches."""
        ratio = 4.0 * (self.c - 1.0) / (5.0 * self.c - 3.0)
        return ratio ** (1.0 / self.alpha)

    @property
    def amplitude_factor(self) -> float:
        """(2|c-1|)^(1/p)."""
        return (2.0 * abs(self.c - 1.0)) ** (1.0 / self.p)

    def with_speed(self, c: float) -> "ModelParams":
        """Same (alpha, p) at another wave speed."""
        return ModelParams(self.alpha, self.p, c)

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        return {"alpha": self.alpha, "p": self.p, "c": self.c}
