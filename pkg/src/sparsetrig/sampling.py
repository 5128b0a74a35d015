"""Sampling sets, sampling matrices, and polynomial evaluation.

The deterministic sampling set places point j at (j, j^2, ..., j^d)/N mod 1
for a prime N; its coordinates are exact rationals with denominator N and are
kept as integer numerators so matrix phases can be reduced mod N in integer
arithmetic before a single trigonometric call. Random models (continuous
uniform on [0,1)^d and the rational lattice Z_m^d / m) share the same
representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import FrequencyLattice, SupportSet, is_prime
from .validation import check_positive_int, check_rng

DETERMINISTIC = "deterministic"
UNIFORM_CONTINUOUS = "uniform-continuous"
UNIFORM_LATTICE = "uniform-lattice"


@dataclass(frozen=True)
class SamplingSet:
    """N points in [0, 1)^d plus their provenance.

    For rational provenances (deterministic, uniform-lattice) the exact
    numerators and common denominator are retained alongside the float
    coordinates.
    """

    points: np.ndarray
    provenance: str
    numerators: np.ndarray | None = None
    denominator: int | None = None
    seed: int | None = None
    modulus: int | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError(f"points must be (N, d), got shape {pts.shape}")
        if pts.size and (pts.min() < 0.0 or pts.max() >= 1.0):
            raise ValueError("all coordinates must lie in [0, 1)")
        object.__setattr__(self, "points", pts)
        if self.numerators is not None:
            nums = np.asarray(self.numerators, dtype=np.int64)
            if nums.shape != pts.shape:
                raise ValueError("numerators must match the shape of points")
            object.__setattr__(self, "numerators", nums)
        if self.provenance == DETERMINISTIC:
            self._check_deterministic()

    def _check_deterministic(self):
        n = self.count
        if self.denominator != n or not is_prime(n):
            raise ValueError("deterministic provenance requires a prime denominator N = count")
        expected = _power_table(n, self.dimension)
        if self.numerators is None or not np.array_equal(self.numerators, expected):
            raise ValueError("deterministic points must equal (j, j^2, ...)/N mod 1 exactly")

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def to_json(self) -> dict:
        prov: dict = {"model": self.provenance}
        if self.seed is not None:
            prov["seed"] = self.seed
        if self.modulus is not None:
            prov["modulus"] = self.modulus
        data = {"kind": "sampling_set", "dimension": self.dimension, "count": self.count,
                "provenance": prov}
        if self.numerators is not None:
            data["denominator"] = self.denominator
            data["points"] = [[[int(v), int(self.denominator)] for v in row]
                              for row in self.numerators]
        else:
            data["points"] = [[float(v) for v in row] for row in self.points]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "SamplingSet":
        if data.get("kind") != "sampling_set":
            raise ValueError("not a serialized sampling set")
        prov = data["provenance"]
        model = prov["model"]
        if "denominator" in data:
            den = int(data["denominator"])
            nums = np.array([[pair[0] for pair in row] for row in data["points"]],
                            dtype=np.int64)
            return cls(points=nums / den, provenance=model, numerators=nums,
                       denominator=den, seed=prov.get("seed"), modulus=prov.get("modulus"))
        pts = np.array(data["points"], dtype=np.float64)
        return cls(points=pts, provenance=model, seed=prov.get("seed"))


def _power_table(n: int, d: int) -> np.ndarray:
    """(N, d) table of j^t mod N for j = 1..N, t = 1..d (integer arithmetic)."""
    j = np.arange(1, n + 1, dtype=np.int64) % n
    cols = [j]
    for _ in range(1, d):
        cols.append(cols[-1] * j % n)
    return np.stack(cols, axis=1)


def deterministic_points(n: int, d: int) -> SamplingSet:
    """The deterministic sampling set: point j = (j, j^2, ..., j^d)/N mod 1.

    Parameters
    ----------
    n : int
        Number of points; must be prime.
    d : int
        Ambient dimension.

    Notes
    -----
    Coordinates are computed by modular exponentiation, never floating-point
    powers, so point j's coordinate t is exactly (j^t mod N)/N.
    """
    n = check_positive_int(n, "n", minimum=2)
    d = check_positive_int(d, "d")
    if not is_prime(n):
        raise ValueError(f"n must be prime, got {n}")
    nums = _power_table(n, d)
    return SamplingSet(points=nums / n, provenance=DETERMINISTIC,
                       numerators=nums, denominator=n)


def random_points_continuous(n: int, d: int, seed) -> SamplingSet:
    """N i.i.d. points uniform on [0, 1)^d, reproducible from the seed."""
    n = check_positive_int(n, "n")
    d = check_positive_int(d, "d")
    rng = check_rng(seed)
    pts = rng.random((n, d))
    return SamplingSet(points=pts, provenance=UNIFORM_CONTINUOUS,
                       seed=seed if isinstance(seed, int) else None)


def random_points_lattice(n: int, d: int, m: int, seed) -> SamplingSet:
    """N i.i.d. points uniform on the rational lattice {0, 1/m, ..., (m-1)/m}^d."""
    n = check_positive_int(n, "n")
    d = check_positive_int(d, "d")
    m = check_positive_int(m, "m", minimum=2)
    rng = check_rng(seed)
    nums = rng.integers(0, m, size=(n, d), dtype=np.int64)
    return SamplingSet(points=nums / m, provenance=UNIFORM_LATTICE,
                       numerators=nums, denominator=m,
                       seed=seed if isinstance(seed, int) else None, modulus=m)


@dataclass(frozen=True)
class SamplingMatrix:
    """Dense N x D matrix of character values exp(2 pi i k . x_j).

    Rows follow the sampling set, columns the lattice's canonical order.
    Raw columns have norm sqrt(N); the normalized variant divides by sqrt(N)
    so columns are unit vectors.
    """

    entries: np.ndarray
    sampling_set: SamplingSet
    lattice: FrequencyLattice
    normalized: bool = False

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=np.complex128)
        expected = (self.sampling_set.count, self.lattice.size)
        if ent.shape != expected:
            raise ValueError(f"entries shape {ent.shape} does not match {expected}")
        object.__setattr__(self, "entries", ent)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def normalized_copy(self) -> "SamplingMatrix":
        """The same matrix scaled so every column has unit norm."""
        if self.normalized:
            return self
        scale = 1.0 / np.sqrt(self.sampling_set.count)
        return SamplingMatrix(self.entries * scale, self.sampling_set,
                              self.lattice, normalized=True)

    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def to_json(self) -> dict:
        return {
            "kind": "sampling_matrix",
            "normalized": self.normalized,
            "sampling_set": self.sampling_set.to_json(),
            "lattice": self.lattice.to_json(),
            "entries": [[[float(v.real), float(v.imag)] for v in row]
                        for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SamplingMatrix":
        if data.get("kind") != "sampling_matrix":
            raise ValueError("not a serialized sampling matrix")
        entries = np.array([[complex(re, im) for re, im in row]
                            for row in data["entries"]], dtype=np.complex128)
        return cls(entries=entries,
                   sampling_set=SamplingSet.from_json(data["sampling_set"]),
                   lattice=FrequencyLattice.from_json(data["lattice"]),
                   normalized=bool(data["normalized"]))


def build_matrix(sampling_set: SamplingSet, lattice: FrequencyLattice,
                 normalized: bool = False) -> SamplingMatrix:
    """Assemble the dense sampling matrix for a point set and frequency box.

    For rational point sets the phase k . x_j is reduced mod 1 in integer
    arithmetic (k . numerators mod denominator) and mapped through a table of
    roots of unity, avoiding error growth in k . x for large powers.
    """
    if lattice.dimension != sampling_set.dimension:
        raise ValueError(
            f"lattice dimension {lattice.dimension} does not match "
            f"point dimension {sampling_set.dimension}")
    freqs = lattice.indices()
    if sampling_set.numerators is not None:
        den = int(sampling_set.denominator)
        phases = sampling_set.numerators @ freqs.T % den
        roots = np.exp(2j * np.pi * np.arange(den) / den)
        entries = roots[phases]
    else:
        entries = np.exp(2j * np.pi * (sampling_set.points @ freqs.T.astype(np.float64)))
    if normalized:
        entries = entries / np.sqrt(sampling_set.count)
    return SamplingMatrix(entries, sampling_set, lattice, normalized=normalized)


@dataclass(frozen=True)
class SparsePolynomial:
    """A trigonometric polynomial with finitely many nonzero coefficients."""

    lattice: FrequencyLattice
    support: SupportSet
    coefficients: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.complex128))

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=np.complex128).reshape(-1)
        if coeffs.shape[0] != self.support.size:
            raise ValueError("one coefficient per support index required")
        if np.any(coeffs == 0):
            raise ValueError("support coefficients must all be nonzero")
        for k in self.support:
            if k not in self.lattice:
                raise ValueError(f"support index {k} outside the lattice")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def sparsity(self) -> int:
        return self.support.size

    def dense_coefficients(self) -> np.ndarray:
        """Length-D coefficient vector in the lattice's canonical order."""
        c = np.zeros(self.lattice.size, dtype=np.complex128)
        for k, v in zip(self.support, self.coefficients):
            c[self.lattice.index_of(k)] = v
        return c


def evaluate(poly: SparsePolynomial, sampling_set: SamplingSet) -> np.ndarray:
    """Sample values y_j = sum_k c_k exp(2 pi i k . x_j), by direct summation."""
    if poly.lattice.dimension != sampling_set.dimension:
        raise ValueError("polynomial and sampling set dimensions differ")
    if poly.sparsity == 0:
        return np.zeros(sampling_set.count, dtype=np.complex128)
    freqs = np.asarray(poly.support.indices, dtype=np.float64)
    phases = sampling_set.points @ freqs.T
    return np.exp(2j * np.pi * phases) @ poly.coefficients
