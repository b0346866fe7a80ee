"""
Configuration settings for ordlift
Numeric defaults, search caps and logging setup shared by the library and the CLI
"""
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent

# Reproducibility
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 200

# Numeric tolerances
DEFAULT_TOLERANCE = Fraction(1, 10**9)
INTERVAL_PRECISION_BITS = 192

# Search caps
DEFAULT_POWER_CAP = 2**40
PL_PERIOD_SEARCH = 1024  # largest period tried when certifying a rational translation number
PL_ORBIT_STEPS = 2**17
PL_ORBIT_CHECKPOINT = 64  # first orbit length at which a rational value is certified, then doubled
PL_ORBIT_EXACT_BITS = 256  # orbits leave exact arithmetic past this denominator size
PL_ORBIT_GRID_BITS = 128
SIGN_REFINEMENT_DEPTH = 40
PROBE_POWER_LIMIT = 1000

# Surface groups
DEFAULT_WORD_LENGTH = 8
LENGTH_CONSTANT = 1  # l_G for the PSL2 target
PERTURBATION_SHIFTS = (Fraction(0), Fraction(1, 2))  # translations perturbing the target order in rep-check

# Causal covers
DEFAULT_COVER = "circle"
LAGRANGIAN_TOLERANCE = 1e-9
LAGRANGIAN_PATH_STEPS = 64

# Output
DEFAULT_OUTPUT_FORMAT = "csv"

# Logging configuration
LOG_LEVEL_NAME = os.getenv("ORDLIFT_LOG_LEVEL", "INFO").upper()
LOG_LEVEL = getattr(logging, LOG_LEVEL_NAME, logging.ERROR)


def _configure_logging() -> None:
    root_logger = logging.getLogger()
    if not root_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter("%(asctime)s | %(levelname)s | %(name)s | %(message)s")
        )
        root_logger.addHandler(handler)
    root_logger.setLevel(LOG_LEVEL)


_configure_logging()


def get_configuration_status() -> Dict[str, Any]:
    """
    Get configuration status for report headers

    Returns:
        Dictionary with the active defaults
    """
    return {
        "log_level": logging.getLevelName(logging.getLogger().level),
        "project_root": str(PROJECT_ROOT),
        "default_seed": DEFAULT_SEED,
        "default_tolerance": str(DEFAULT_TOLERANCE),
        "interval_precision_bits": INTERVAL_PRECISION_BITS,
        "power_cap": DEFAULT_POWER_CAP,
        "length_constant": LENGTH_CONSTANT,
    }


def validate_configuration() -> tuple[bool, list[str]]:
    """
    Validate the numeric constants

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    errors = []

    if DEFAULT_TOLERANCE <= 0:
        errors.append(f"Tolerance must be positive: {DEFAULT_TOLERANCE}")

    for name, value in (
        ("DEFAULT_POWER_CAP", DEFAULT_POWER_CAP),
        ("PL_PERIOD_SEARCH", PL_PERIOD_SEARCH),
        ("PL_ORBIT_STEPS", PL_ORBIT_STEPS),
        ("PL_ORBIT_CHECKPOINT", PL_ORBIT_CHECKPOINT),
        ("PL_ORBIT_GRID_BITS", PL_ORBIT_GRID_BITS),
        ("PROBE_POWER_LIMIT", PROBE_POWER_LIMIT),
        ("SIGN_REFINEMENT_DEPTH", SIGN_REFINEMENT_DEPTH),
        ("INTERVAL_PRECISION_BITS", INTERVAL_PRECISION_BITS),
    ):
        if value < 1:
            errors.append(f"{name} must be positive: {value}")

    if LENGTH_CONSTANT < 1:
        errors.append(f"LENGTH_CONSTANT must be at least 1: {LENGTH_CONSTANT}")

    return len(errors) == 0, errors
