"""
Counter-based random words
Every value is a pure function of (seed, trial index, stream, attempt), so a
trial draws the same numbers whichever worker runs it and in whatever order.
"""

import numpy as np

from .exact_core import DomainError

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64_int(z: int) -> int:
    """SplitMix64 finalizer on a Python int"""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer over a uint64 array (wrapping arithmetic)"""
    with np.errstate(over="ignore"):
        z = z ^ (z >> np.uint64(30))
        z = z * np.uint64(_MUL1)
        z = z ^ (z >> np.uint64(27))
        z = z * np.uint64(_MUL2)
        return z ^ (z >> np.uint64(31))


def check_seed(seed: int) -> int:
    if not 0 <= seed <= MASK64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def counter_words(seed: int, indices: np.ndarray, stream: int, attempt: int = 0) -> np.ndarray:
    """One uint64 word per trial index"""
    key = np.uint64(mix64_int(check_seed(seed) ^ GOLDEN))
    salt = np.uint64(mix64_int((stream << 32) | attempt))
    with np.errstate(over="ignore"):
        z = indices.astype(np.uint64) * np.uint64(GOLDEN) + key
    return mix64(mix64(z) ^ salt)


def bounded_integers(seed: int, indices: np.ndarray, stream: int, bound: int) -> np.ndarray:
    """
    Unbiased integers in [0, bound) per trial index. Words in the modulo-bias
    region are rejected and redrawn with the next attempt counter.
    """
    if not 1 <= bound <= MASK64:
        raise DomainError(f"bound must lie in 1..2^64-1, got {bound}")
    indices = np.asarray(indices, dtype=np.uint64)
    out = np.empty(indices.shape[0], dtype=np.int64)
    remainder = (1 << 64) % bound
    limit = None if remainder == 0 else np.uint64((1 << 64) - remainder)
    b = np.uint64(bound)

    pending = np.arange(indices.shape[0])
    attempt = 0
    while pending.size:
        words = counter_words(seed, indices[pending], stream, attempt)
        ok = np.ones(words.shape[0], dtype=bool) if limit is None else words < limit
        out[pending[ok]] = (words[ok] % b).astype(np.int64)
        pending = pending[~ok]
        attempt += 1
    return out
