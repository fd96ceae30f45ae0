"""Helper utilities for gfbbm-lab."""

import re
from pathlib import Path
from typing import Tuple

from .constants import Constants
from .exceptions import ConfigurationError


class ValidationHelper:
    """Helper for validation operations.

    The ``validate_*`` methods return ``(ok, message)`` pairs; :meth:`require`
    turns a failed pair into a :class:`ConfigurationError`.
    """

    @staticmethod
    def require(result: Tuple[bool, str]) -> None:
        """Raise ConfigurationError if a validation result failed."""
        ok, message = result
        if not ok:
            raise ConfigurationError(message)

    @staticmethod
    def validate_power_of_two(name: str, value: int, minimum: int = 8) -> Tuple[bool, str]:
        """Validate an integer is a power of two no smaller than ``minimum``."""
        if not isinstance(value, int) or value < minimum:
            return False, f"{name} must be an integer >= {minimum}, got {value}"
        if value & (value - 1):
            return False, f"{name} must be a power of two, got {value}"
        return True, f"Valid {name}"

    @staticmethod
    def validate_positive(name: str, value: float) -> Tuple[bool, str]:
        """Validate a strictly positive finite real."""
        try:
            number = float(value)
        except (TypeError, ValueError):
            return False, f"{name} must be a number, got {value!r}"
        if not number > 0 or number == float("inf"):
            return False, f"{name} must be positive and finite, got {value}"
        return True, f"Valid {name}"

    @staticmethod
    def validate_alpha(alpha: float) -> Tuple[bool, str]:
        """Validate the dispersion order lies in (0, 2]."""
        if not 0 < alpha <= 2:
            return False, f"alpha must lie in (0, 2], got {alpha}"
        return True, "Valid alpha"

    @staticmethod
    def validate_nonlinearity(p: int) -> Tuple[bool, str]:
        """Validate the nonlinearity order is a positive integer."""
        if isinstance(p, bool) or not isinstance(p, int) or p < 1:
            return False, f"p must be a positive integer, got {p!r}"
        return True, "Valid p"

    @staticmethod
    def validate_range(name: str, low: float, high: float) -> Tuple[bool, str]:
        """Validate a nonempty closed interval."""
        if not low < high:
            return False, f"{name} range is empty: [{low}, {high}]"
        return True, f"Valid {name} range"

    @staticmethod
    def validate_file_format(file_path: str, suffixes: Tuple[str, ...]) -> Tuple[bool, str]:
        """Validate file existence and suffix."""
        path = Path(file_path)
        if not path.exists():
            return False, f"File does not exist: {file_path}"
        if not path.is_file():
            return False, f"Path is not a file: {file_path}"
        if path.suffix.lower() not in suffixes:
            return False, f"File must have one of the suffixes {', '.join(suffixes)}"
        return True, "Valid file format"

    @staticmethod
    def label_stem(label: str) -> str:
        """Turn a user label into an output file stem.

        Runs of characters outside ``[A-Za-z0-9._-]`` become one underscore;
        leading dots and underscores and trailing underscores are dropped so the
        stem is never hidden, and it is cut to ``Constants.MAX_LABEL_LENGTH``.
        """
        stem = re.sub(r"[^A-Za-z0-9._-]+", "_", label).lstrip("._").rstrip("_")
        stem = stem[: Constants.MAX_LABEL_LENGTH]
        if not stem:
            raise ConfigurationError(f"label {label!r} leaves no usable file stem")
        return stem
