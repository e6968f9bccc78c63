# Configuration for urnlab
# Centralized settings for the solvers, the simulator and the CLI

import os
from typing import Optional

from dotenv import load_dotenv

# Pick up a .env next to wherever the CLI is run from
load_dotenv()

# ============================================================
# Debug
# ============================================================

# Debug mode - verbose logging on stderr
DEBUG = os.getenv("URNLAB_DEBUG", "").strip().lower() in {"1", "true", "yes", "on"}

# ============================================================
# Simulation defaults
# ============================================================

# Fixed so that a bare `simulate` is reproducible
DEFAULT_SEED = 1729
DEFAULT_TRIALS = 1_000_000
DEFAULT_Z_THRESHOLD = 4.0
DEFAULT_WORKERS = 1

# Trials per vectorized block; also the unit of work handed to a worker
CHUNK_SIZE = 250_000

# Acceptance quantile for the ordered-outcome chi-square check (3 df)
CHI_SQUARE_QUANTILE = 0.999

SEED_MAX = 2**64 - 1

# ============================================================
# Output
# ============================================================

DECIMAL_DIGITS = 12
OUTPUT_FORMATS = ("json", "csv", "table")
DEFAULT_FORMAT = "json"

# ============================================================
# Environment overrides (flags win)
# ============================================================

ENV_SEED = "URNLAB_SEED"
ENV_TRIALS = "URNLAB_TRIALS"
ENV_Z_THRESHOLD = "URNLAB_Z_THRESHOLD"
ENV_WORKERS = "URNLAB_WORKERS"


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw.strip(), 0)
    except ValueError:
        return None


def _env_float(name: str) -> Optional[float]:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        return float(raw)
    except ValueError:
        return None


def resolve_seed(flag: Optional[int] = None) -> int:
    """Seed from the flag, else URNLAB_SEED, else DEFAULT_SEED"""
    if flag is not None:
        return flag
    value = _env_int(ENV_SEED)
    if value is None or not 0 <= value <= SEED_MAX:
        return DEFAULT_SEED
    return value


def resolve_trials(flag: Optional[int] = None) -> int:
    """Trial count from the flag, else URNLAB_TRIALS, else DEFAULT_TRIALS"""
    if flag is not None:
        return flag
    value = _env_int(ENV_TRIALS)
    if value is None or value < 1:
        return DEFAULT_TRIALS
    return value


def resolve_z_threshold(flag: Optional[float] = None) -> float:
    if flag is not None:
        return flag
    value = _env_float(ENV_Z_THRESHOLD)
    if value is None or value <= 0:
        return DEFAULT_Z_THRESHOLD
    return value


def resolve_workers(flag: Optional[int] = None) -> int:
    if flag is not None:
        return flag
    value = _env_int(ENV_WORKERS)
    if value is None or value < 1:
        return DEFAULT_WORKERS
    return value

# ============================================================
# Validation
# ============================================================

def validate_config():
    """Validate constants and environment overrides"""
    errors = []
    warnings = []

    # Critical settings the simulator cannot work without
    if CHUNK_SIZE < 1:
        errors.append(f"CHUNK_SIZE must be positive: {CHUNK_SIZE}")

    if not 0.0 < CHI_SQUARE_QUANTILE < 1.0:
        errors.append(f"CHI_SQUARE_QUANTILE must lie in (0, 1): {CHI_SQUARE_QUANTILE}")

    if DECIMAL_DIGITS < 1:
        errors.append(f"DECIMAL_DIGITS must be positive: {DECIMAL_DIGITS}")

    # Non-critical: a bad override falls back to the default
    checks = [
        (ENV_SEED, _env_int, lambda v: 0 <= v <= SEED_MAX),
        (ENV_TRIALS, _env_int, lambda v: v >= 1),
        (ENV_Z_THRESHOLD, _env_float, lambda v: v > 0),
        (ENV_WORKERS, _env_int, lambda v: v >= 1),
    ]
    for name, parse, ok in checks:
        raw = os.getenv(name)
        if raw is None or not raw.strip():
            continue
        value = parse(name)
        if value is None or not ok(value):
            warnings.append(f"{name}={raw!r} is not valid; using the default")

    return errors, warnings
