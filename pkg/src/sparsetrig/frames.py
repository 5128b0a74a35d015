"""Frame-theoretic analysis of sampling matrices.

Mutual coherence against the Welch lower bound and the exponential-sum upper
bound, restricted-isometry certification by exhaustive support enumeration,
and its statistical relaxation estimated by Monte Carlo.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .lattice import FrequencyIndex, SupportSet, is_prime
from .sampling import SamplingMatrix
from .validation import check_positive_int, check_rng

_Z95 = 1.959963984540054

_COHERENCE_BLOCK = 512
_RIP_CHUNK = 4096
_RIP_SUPPORT_GUARD = 10**6


def welch_bound(n: int, d: int) -> float:
    """Universal coherence lower bound sqrt((D - N)/((N - 1) D)) for N x D unit-norm frames."""
    n = check_positive_int(n, "n", minimum=2)
    d = check_positive_int(d, "d")
    return math.sqrt(max(d - n, 0) / ((n - 1) * d))


@dataclass(frozen=True)
class CoherenceReport:
    """Exact mutual coherence of a unit-norm frame and its reference bounds."""

    mu: float
    pair_columns: tuple[int, int]
    pair_frequencies: tuple[FrequencyIndex, FrequencyIndex]
    welch_bound: float
    weil_bound: float
    n: int
    d: int

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "pair_columns": list(self.pair_columns),
            "pair_frequencies": [list(k) for k in self.pair_frequencies],
            "welch_bound": self.welch_bound,
            "weil_bound": self.weil_bound,
            "N": self.n,
            "D": self.d,
        }


def coherence(matrix: SamplingMatrix) -> CoherenceReport:
    """Exact maximum |<a_i, a_j>| over all distinct column pairs.

    The scan is blockwise over the Gram matrix, so memory stays bounded for
    wide frames; the achieving pair is reported. Requires the normalized
    (unit-column) matrix.
    """
    if not matrix.normalized:
        raise ValueError("coherence requires the normalized matrix (unit-norm columns)")
    a = matrix.entries
    n, d = a.shape
    if d < 2:
        raise ValueError("coherence needs at least two columns")
    best = -1.0
    best_pair = (0, 0)
    for start in range(0, d, _COHERENCE_BLOCK):
        stop = min(start + _COHERENCE_BLOCK, d)
        gram = np.abs(a[:, start:stop].conj().T @ a)
        gram[np.arange(start, stop) - start, np.arange(start, stop)] = -1.0
        flat = int(np.argmax(gram))
        i, j = divmod(flat, d)
        if gram[i, j] > best:
            best = float(gram[i, j])
            best_pair = (start + i, j)
    i, j = sorted(best_pair)
    return CoherenceReport(
        mu=best,
        pair_columns=(i, j),
        pair_frequencies=(matrix.lattice.at(i), matrix.lattice.at(j)),
        welch_bound=welch_bound(n, d),
        weil_bound=(matrix.sampling_set.dimension - 1) / math.sqrt(n),
        n=n,
        d=d,
    )


@dataclass(frozen=True)
class WeilSumCheck:
    magnitude: float
    bound: float
    holds: bool

    def to_json(self) -> dict:
        return {"magnitude": self.magnitude, "bound": self.bound, "holds": self.holds}


def weil_sum_check(p: int, coeffs) -> WeilSumCheck:
    """Evaluate |sum_{x=1}^{p} exp(2 pi i f(x)/p)| for f(x) = m_1 x + ... + m_d x^d.

    The magnitude is computed by direct summation with exact modular phases
    and compared against the square-root cancellation bound (d - 1) sqrt(p).

    Raises
    ------
    ValueError
        If p is not prime or every coefficient is divisible by p (the sum
        would trivially equal p).
    """
    p = check_positive_int(p, "p", minimum=2)
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    coeffs = [int(m) for m in coeffs]
    if not coeffs:
        raise ValueError("coeffs must be nonempty")
    if all(m % p == 0 for m in coeffs):
        raise ValueError("at least one coefficient must not be divisible by p")
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    total = 0j
    for x in range(1, p + 1):
        t = 0
        for m in reversed(coeffs):  # Horner on x*(m_1 + x*(m_2 + ...)) mod p
            t = (t + m) * x % p
        total += roots[t]
    magnitude = float(abs(total))
    bound = (len(coeffs) - 1) * math.sqrt(p)
    return WeilSumCheck(magnitude=magnitude, bound=bound,
                        holds=magnitude <= bound + 1e-8)


def gram_extreme_eigs(matrix: SamplingMatrix, support: SupportSet) -> tuple[float, float]:
    """Extreme eigenvalues of the Hermitian Gram A_T^H A_T on a column subset.

    The conjugate transpose is used: columns are complex, so only the
    Hermitian Gram has real eigenvalues for the isometry inequality to
    constrain.
    """
    if not matrix.normalized:
        raise ValueError("gram_extreme_eigs requires the normalized matrix")
    if support.size == 0:
        raise ValueError("support must be nonempty")
    if support.size > matrix.shape[0]:
        raise ValueError("support larger than the number of samples")
    cols = support.column_indices(matrix.lattice)
    sub = matrix.entries[:, cols]
    eigs = np.linalg.eigvalsh(sub.conj().T @ sub)
    return float(eigs[0]), float(eigs[-1])


@dataclass(frozen=True)
class RipReport:
    """Exhaustively certified restricted-isometry constant up to a given order."""

    order: int
    delta_min: float
    per_size: dict[int, tuple[float, float]]
    supports_tested: int

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "delta_min": self.delta_min,
            "per_size": {str(k): [lmin, lmax] for k, (lmin, lmax) in self.per_size.items()},
            "supports_tested": self.supports_tested,
        }


def _batched_extreme_eigs(a: np.ndarray, supports: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-support (lambda_min, lambda_max) for a batch of same-size supports."""
    sub = a[:, supports]                      # (N, batch, k)
    sub = np.moveaxis(sub, 1, 0)              # (batch, N, k)
    gram = np.einsum("bnj,bnk->bjk", sub.conj(), sub)
    eigs = np.linalg.eigvalsh(gram)
    return eigs[:, 0].real, eigs[:, -1].real


def rip_bruteforce(matrix: SamplingMatrix, k: int) -> RipReport:
    """Smallest delta for which the isometry inequality holds over all |T| <= k.

    Enumerates every support of each size up to k and takes
    ``max(lambda_max - 1, 1 - lambda_min)`` over their Gram spectra. Guarded
    against combinatorial explosion: at most 10^6 supports total.
    """
    if not matrix.normalized:
        raise ValueError("rip_bruteforce requires the normalized matrix")
    k = check_positive_int(k, "k")
    n, d = matrix.shape
    if k > d:
        raise ValueError(f"order {k} exceeds the number of columns {d}")
    total = sum(math.comb(d, j) for j in range(1, k + 1))
    if total > _RIP_SUPPORT_GUARD:
        raise ValueError(
            f"{total} supports to enumerate exceeds the {_RIP_SUPPORT_GUARD} guard; "
            "use strip_estimate for larger orders")
    a = matrix.entries
    delta = 0.0
    per_size: dict[int, tuple[float, float]] = {}
    for j in range(1, k + 1):
        lo, hi = np.inf, -np.inf
        combos = itertools.combinations(range(d), j)
        while True:
            chunk = np.array(list(itertools.islice(combos, _RIP_CHUNK)), dtype=np.intp)
            if chunk.size == 0:
                break
            lmin, lmax = _batched_extreme_eigs(a, chunk)
            lo = min(lo, float(lmin.min()))
            hi = max(hi, float(lmax.max()))
        per_size[j] = (lo, hi)
        delta = max(delta, hi - 1.0, 1.0 - lo)
    return RipReport(order=k, delta_min=delta, per_size=per_size, supports_tested=total)


@dataclass(frozen=True)
class StripEstimate:
    """Monte-Carlo estimate of the statistical isometry probability."""

    order: int
    delta: float
    trials: int
    successes: int
    probability: float
    ci_low: float
    ci_high: float

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "delta": self.delta,
            "trials": self.trials,
            "successes": self.successes,
            "probability": self.probability,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
        }


def _substream_key(seed) -> tuple:
    """Entropy prefix for per-trial RNG substreams: an int seed or a tuple of ints."""
    if isinstance(seed, tuple):
        return seed
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    raise ValueError(f"seed must be an int or tuple of ints, got {seed!r}")


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Two-sided Wilson score interval for a binomial proportion.

    The interval always contains the point estimate; the clamp below keeps
    that true under floating-point rounding at the 0/1 endpoints.
    """
    p = successes / trials
    denom = 1.0 + z**2 / trials
    center = (p + z**2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z**2 / (4 * trials**2)) / denom
    return max(0.0, min(center - half, p)), min(1.0, max(center + half, p))


def strip_estimate(matrix: SamplingMatrix, k: int, delta: float,
                   trials: int, seed) -> StripEstimate:
    """Estimate Pr(| ||A y||^2 - 1 | <= delta) over random unit k-sparse y.

    Each trial draws a uniformly random size-k support and fills it with
    i.i.d. standard complex Gaussian values scaled to unit norm. Trial t uses
    an RNG substream keyed by (seed, t), so the result is reproducible
    regardless of evaluation order.
    """
    if not matrix.normalized:
        raise ValueError("strip_estimate requires the normalized matrix")
    n, d = matrix.shape
    k = check_positive_int(k, "k")
    if k > d:
        raise ValueError(f"order {k} exceeds the number of columns {d}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    trials = check_positive_int(trials, "trials")
    key = _substream_key(seed)
    a = matrix.entries
    successes = 0
    for t in range(trials):
        rng = check_rng(key + (t,))
        cols = rng.permutation(d)[:k]
        v = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        v /= np.linalg.norm(v)
        norm_sq = float(np.linalg.norm(a[:, cols] @ v) ** 2)
        if abs(norm_sq - 1.0) <= delta:
            successes += 1
    lo, hi = wilson_interval(successes, trials)
    return StripEstimate(order=k, delta=delta, trials=trials, successes=successes,
                         probability=successes / trials, ci_low=lo, ci_high=hi)


def strip_order(n: int, d: int, delta: float) -> int:
    """Sparsity order delta^2 N/(8 log D) (log(D/N)/log N)^2, clamped to >= 1."""
    raw = delta**2 * n / (8.0 * math.log(d)) * (math.log(d / n) / math.log(n)) ** 2
    return max(1, math.floor(raw))


@dataclass(frozen=True)
class EigenStatRow:
    """Sample means (and spreads) of extreme Gram eigenvalues at one sparsity."""

    sparsity: int
    samples: int
    mean_lambda_min: float
    mean_lambda_max: float
    std_lambda_min: float
    std_lambda_max: float


def eigen_statistics(matrix: SamplingMatrix, sparsity_range, samples: int,
                     seed) -> list[EigenStatRow]:
    """Average extreme Gram eigenvalues over random supports of each size.

    For every M in sparsity_range, draws `samples` uniform size-M supports
    (substream keyed by (seed, M, sample)) and averages the extreme
    eigenvalues of the corresponding Hermitian Grams.
    """
    if not matrix.normalized:
        raise ValueError("eigen_statistics requires the normalized matrix")
    samples = check_positive_int(samples, "samples")
    n, d = matrix.shape
    key = _substream_key(seed)
    rows = []
    for m in sparsity_range:
        m = check_positive_int(m, "sparsity")
        if m > min(n, d):
            raise ValueError(f"sparsity {m} exceeds min(N, D) = {min(n, d)}")
        supports = np.empty((samples, m), dtype=np.intp)
        for i in range(samples):
            rng = check_rng(key + (m, i))
            supports[i] = rng.permutation(d)[:m]
        lmin, lmax = _batched_extreme_eigs(matrix.entries, supports)
        rows.append(EigenStatRow(
            sparsity=m, samples=samples,
            mean_lambda_min=float(lmin.mean()), mean_lambda_max=float(lmax.mean()),
            std_lambda_min=float(lmin.std(ddof=1)) if samples > 1 else 0.0,
            std_lambda_max=float(lmax.std(ddof=1)) if samples > 1 else 0.0,
        ))
    return rows


def write_eigen_csv(rows: list[EigenStatRow], path) -> None:
    """Persist eigenvalue statistics with columns M, mean_lambda_min, mean_lambda_max, samples."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["M", "mean_lambda_min", "mean_lambda_max", "samples"])
        for row in rows:
            writer.writerow([row.sparsity, f"{row.mean_lambda_min:.12g}",
                             f"{row.mean_lambda_max:.12g}", row.samples])
