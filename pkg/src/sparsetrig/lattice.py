"""Frequency lattices, support sets, and number-theoretic helpers.

The frequency domain is an integer box, either the uniform cube [-q, q]^d or
a mixed-radix box I_1 x ... x I_d with per-axis prime sizes. Columns of every
sampling matrix follow the canonical enumeration fixed here: lexicographic by
axis, ascending within each axis, so matrices are reproducible bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_positive_int

#: A frequency index is a plain tuple of d integers.
FrequencyIndex = tuple[int, ...]

# Deterministic Miller-Rabin witness set, exact for all n < 3.317e24 (> 2^63).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Exact primality test (deterministic Miller-Rabin, valid up to 2^63).

    Parameters
    ----------
    n : int
        Positive integer to test.

    Returns
    -------
    bool
        True iff n is prime. Never probabilistic.
    """
    n = check_positive_int(n, "n")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime_at_least(lower: int) -> int:
    """Smallest prime p with p >= lower (lower >= 2)."""
    lower = check_positive_int(lower, "lower", minimum=2)
    p = lower
    while not is_prime(p):
        p += 1
    return p


def recovery_sample_count(q: int, d: int, sparsity: int) -> int:
    """Smallest prime sample count guaranteeing exact greedy/l1 recovery.

    Returns the least prime N with
    ``N >= max(2q + 1, (d - 1)^2 (2M - 1)^2 + 1)``; at such N the coherence
    bound (d - 1)/sqrt(N) makes every M-sparse polynomial on [-q, q]^d
    recoverable.
    """
    q = check_positive_int(q, "q", minimum=0)
    d = check_positive_int(d, "d")
    sparsity = check_positive_int(sparsity, "sparsity")
    lower = max(2 * q + 1, (d - 1) ** 2 * (2 * sparsity - 1) ** 2 + 1)
    return next_prime_at_least(max(lower, 2))


@dataclass(frozen=True)
class FrequencyLattice:
    """Integer frequency box with a fixed canonical column order.

    Parameters
    ----------
    axes : tuple of (lo, hi) pairs
        Inclusive integer range per dimension.
    """

    axes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.axes:
            raise ValueError("lattice needs at least one axis")
        axes = tuple((int(lo), int(hi)) for lo, hi in self.axes)
        for lo, hi in axes:
            if hi < lo:
                raise ValueError(f"axis range ({lo}, {hi}) is empty")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def uniform(cls, q: int, d: int) -> "FrequencyLattice":
        """The cube [-q, q]^d, of cardinality (2q + 1)^d."""
        q = check_positive_int(q, "q", minimum=0)
        d = check_positive_int(d, "d")
        return cls(((-q, q),) * d)

    @property
    def dimension(self) -> int:
        return len(self.axes)

    @property
    def size(self) -> int:
        """Number of lattice points D."""
        return math.prod(hi - lo + 1 for lo, hi in self.axes)

    def __len__(self) -> int:
        return self.size

    def indices(self) -> np.ndarray:
        """All lattice points as a (D, d) int64 array in canonical order.

        Canonical order is lexicographic across axes with the last axis
        varying fastest, each axis ascending from its lower bound.
        """
        ranges = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in self.axes]
        grids = np.meshgrid(*ranges, indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)

    def index_of(self, k) -> int:
        """Position of frequency k in the canonical enumeration."""
        k = tuple(int(c) for c in k)
        if len(k) != self.dimension:
            raise ValueError(f"index {k} has dimension {len(k)}, lattice has {self.dimension}")
        pos = 0
        for (lo, hi), c in zip(self.axes, k):
            if not lo <= c <= hi:
                raise ValueError(f"coordinate {c} outside axis range ({lo}, {hi})")
            pos = pos * (hi - lo + 1) + (c - lo)
        return pos

    def at(self, position: int) -> FrequencyIndex:
        """Frequency at a canonical position (inverse of index_of)."""
        position = int(position)
        if not 0 <= position < self.size:
            raise ValueError(f"position {position} outside 0..{self.size - 1}")
        coords = []
        for lo, hi in reversed(self.axes):
            width = hi - lo + 1
            coords.append(lo + position % width)
            position //= width
        return tuple(reversed(coords))

    def __contains__(self, k) -> bool:
        k = tuple(int(c) for c in k)
        return len(k) == self.dimension and all(
            lo <= c <= hi for (lo, hi), c in zip(self.axes, k)
        )

    def to_json(self) -> dict:
        return {"axes": [[lo, hi] for lo, hi in self.axes]}

    @classmethod
    def from_json(cls, data: dict) -> "FrequencyLattice":
        return cls(tuple((int(lo), int(hi)) for lo, hi in data["axes"]))


def mixed_radix_lattice(primes) -> FrequencyLattice:
    """Frequency box I_1 x ... x I_d for a descending list of primes.

    Axis t is the centered range [-(p_t - 1)/2, (p_t - 1)/2] for odd p_t and
    [0, 1] for p_t = 2; the cardinality is the product of the primes.
    """
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise ValueError("primes must be nonempty")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"primes must all be prime, got {p}")
    if any(a < b for a, b in zip(primes, primes[1:])):
        raise ValueError(f"primes must be nonincreasing, got {primes}")
    axes = []
    for p in primes:
        if p == 2:
            axes.append((0, 1))
        else:
            half = (p - 1) // 2
            axes.append((-half, half))
    return FrequencyLattice(tuple(axes))


@dataclass(frozen=True)
class SupportSet:
    """An ordered duplicate-free collection of frequency indices."""

    indices: tuple[FrequencyIndex, ...]

    def __post_init__(self):
        indices = tuple(tuple(int(c) for c in k) for k in self.indices)
        if indices:
            d = len(indices[0])
            if any(len(k) != d for k in indices):
                raise ValueError("all indices must share one dimension")
            if len(set(indices)) != len(indices):
                raise ValueError("support contains duplicate indices")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def from_columns(cls, lattice: FrequencyLattice, columns) -> "SupportSet":
        return cls(tuple(lattice.at(c) for c in columns))

    @property
    def size(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.indices)

    def column_indices(self, lattice: FrequencyLattice) -> list[int]:
        """Canonical column positions of the support inside a lattice."""
        return [lattice.index_of(k) for k in self.indices]

    def to_json(self) -> list:
        return [list(k) for k in self.indices]


def separation_bound(support: SupportSet) -> int:
    """Smallest b such that every pair of distinct indices in the support
    differs by at most b in some nonzero coordinate.

    Equals the maximum over unordered pairs of the minimum nonzero absolute
    coordinate difference. Controls how few sample points distinguish all
    frequencies in the support.
    """
    if support.size < 2:
        raise ValueError("separation bound needs at least two indices")
    pts = np.asarray(support.indices, dtype=np.int64)
    n = pts.shape[0]
    diffs = np.abs(pts[:, None, :] - pts[None, :, :]).astype(np.float64)
    diffs[diffs == 0] = np.inf
    per_pair = diffs.min(axis=2)
    iu = np.triu_indices(n, k=1)
    return int(per_pair[iu].max())


def _scaled_root_le(n: int, radicand: int, root: int, m: int) -> bool:
    """Exact test of n * radicand**(1/root) <= m for integers (radicand > 0)."""
    if n == 0:
        return m >= 0
    if n < 0 <= m:
        return True
    if n > 0 > m:
        return False
    if n > 0:
        return n**root * radicand <= m**root
    return (-m) ** root <= (-n) ** root * radicand


def _floor_scaled_root(m: int, radicand: int, root: int) -> int:
    """Mathematical floor of m / radicand**(1/root), decided exactly."""
    estimate = math.floor(m / radicand ** (1.0 / root))
    best = None
    for n in range(estimate - 2, estimate + 4):
        if _scaled_root_le(n, radicand, root, m):
            best = n
    assert best is not None
    return best


def staircase_curve(q: int, d: int) -> SupportSet:
    """The 2q+1 point staircase support running diagonally through [-q, q]^d.

    Point m (for m = -q..q) is ``(m, floor(m/s), floor(m/s^2), ...)`` with
    s = (2q + 1)^(1/d). Floors are mathematical (toward -infinity) and
    computed by exact integer comparisons, so boundary cases where the ratio
    lands on an integer are decided correctly rather than guessed from
    floating point.
    """
    q = check_positive_int(q, "q", minimum=0)
    d = check_positive_int(d, "d")
    base = 2 * q + 1
    points = []
    for m in range(-q, q + 1):
        coords = [m]
        for t in range(1, d):
            coords.append(_floor_scaled_root(m, base**t, d))
        points.append(tuple(coords))
    return SupportSet(tuple(points))
