"""Input validation helpers.

Small check_* functions in the scikit-learn idiom: validate, normalize the
representation, and return the value, raising ValueError with the offending
field named otherwise.
"""
from __future__ import annotations

import numbers

import numpy as np


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_complex_vector(y, length: int | None = None, name: str = "y") -> np.ndarray:
    """Coerce to a 1-d complex128 array, optionally enforcing its length."""
    arr = np.asarray(y, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} must have length {length}, got {arr.shape[0]}")
    return arr


def check_rng(seed) -> np.random.Generator:
    """Build a Generator from an int seed, a SeedSequence, or pass one through.

    Every randomized operation takes an explicit seed; there is no silent
    global entropy.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    if isinstance(seed, (numbers.Integral, tuple)):
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    raise ValueError(f"seed must be an int, tuple, SeedSequence or Generator, got {seed!r}")
