"""Constants for gfbbm-lab."""

from typing import Dict


class Constants:
    """Application constants and desk-scale defaults."""

    # Grid
    DEFAULT_HALF_LENGTH = 512.0
    DEFAULT_N_POINTS = 2 ** 13
    MIN_N_POINTS = 8

    # Petviashvili
    DEFAULT_TOLERANCE = 1e-12
    DEFAULT_MAX_ITERATIONS = 500
    RESIDUAL_FACTOR = 100.0  # residual gate is RESIDUAL_FACTOR * tolerance
    SEED_AMPLITUDE_FACTOR = 1.5
    SEED_WIDTH_FACTOR = 2.0
    DECAY_THRESHOLD = 1e-8
    ALIASING_THRESHOLD = 1e-12
    CENTER_XTOL_FACTOR = 1e-12  # peak root search tolerance in grid spacings
    CENTER_MAX_ITERATIONS = 200

    # Spectral core
    SYMMETRY_TOLERANCE = 1e-10
    BBM_COEFFICIENT = 5.0 / 4.0  # (I + 5/4 D^alpha)
    KDV_COEFFICIENT = 3.0 / 4.0  # (I + 3/4 D^alpha)

    # Stability
    DENSE_CAP = 2 ** 12
    DEFAULT_EIGEN_N_POINTS = 2 ** 10
    NORMALIZED_HALF_LENGTH = 48.0
    EIGEN_THRESHOLD_FACTOR = 1e-6
    PARTICIPATION_THRESHOLD = 0.25
    DEFAULT_DC = 1e-3
    DEFAULT_RESOLUTION = 0.01

    # Evolution
    DEFAULT_DT = 5e-4
    DEFAULT_T_FINAL = 50.0
    DEFAULT_GAMMA = 1.1
    DEFAULT_SAMPLE_INTERVAL = 0.5
    RK4_STABILITY_LIMIT = 2.8

    # Output
    FLOAT_FORMAT = "%.17g"
    DEFAULT_OUTPUT_DIR = "output"
    SNAPSHOT_MAGIC = b"GFBBMSNP"
    SNAPSHOT_VERSION = 1
    MAX_LABEL_LENGTH = 64

    # Process exit status per error class name
    EXIT_CODES: Dict[str, int] = {
        "LabError": 1,
        "ConfigurationError": 2,
        "HamiltonianUndefinedError": 3,
        "NoSolutionError": 4,
        "ExistenceError": 4,
        "NonConvergenceError": 5,
        "DivergenceError": 6,
        "ResourceError": 7,
        "BlowUpError": 8,
        "DomainError": 9,
        "NumericError": 10,
        "NoRealRootError": 11,
        "DimensionError": 12,
        "SymmetryError": 13,
        "DegenerateInputError": 14,
    }

    # Subcommands
    SUBCOMMANDS = ["solve", "classify", "evolve", "spectrum", "sweep", "roots"]
    SWEEP_KINDS = ["stability", "profiles"]
