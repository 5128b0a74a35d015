"""Deterministic sampling and sparse recovery of multivariate trigonometric polynomials.

Construct the prime-modulus power-curve sampling set, assemble its Fourier
sampling matrices, certify coherence/isometry properties numerically, and
recover sparse coefficient vectors with greedy and l1 decoders.
"""

from .decoders import (BasisPursuit, BpConfig, DecodeResult, OmpConfig,
                       OrthogonalMatchingPursuit, basis_pursuit, omp,
                       recovery_success, restricted_least_squares)
from .exceptions import DegeneracyError
from .experiments import (ExperimentConfig, SuccessCurve, random_sparse_signal,
                          run_eigen_experiment, run_success_experiment)
from .frames import (CoherenceReport, RipReport, StripEstimate, coherence,
                     eigen_statistics, gram_extreme_eigs, rip_bruteforce,
                     strip_estimate, strip_order, weil_sum_check, welch_bound)
from .lattice import (FrequencyIndex, FrequencyLattice, SupportSet, is_prime,
                      mixed_radix_lattice, next_prime_at_least, recovery_sample_count,
                      separation_bound, staircase_curve)
from .sampling import (SamplingMatrix, SamplingSet, SparsePolynomial, build_matrix,
                       deterministic_points, evaluate, random_points_continuous,
                       random_points_lattice)

__version__ = "0.1.0"

__all__ = [
    "BasisPursuit", "BpConfig", "CoherenceReport", "DecodeResult", "DegeneracyError",
    "ExperimentConfig", "FrequencyIndex", "FrequencyLattice", "OmpConfig",
    "OrthogonalMatchingPursuit", "RipReport", "SamplingMatrix", "SamplingSet",
    "SparsePolynomial", "StripEstimate", "SuccessCurve", "SupportSet",
    "basis_pursuit", "build_matrix", "coherence", "deterministic_points",
    "eigen_statistics", "evaluate", "gram_extreme_eigs", "is_prime",
    "mixed_radix_lattice", "next_prime_at_least", "omp", "random_points_continuous",
    "random_points_lattice", "random_sparse_signal", "recovery_sample_count",
    "recovery_success", "restricted_least_squares", "rip_bruteforce",
    "run_eigen_experiment", "run_success_experiment", "separation_bound",
    "staircase_curve", "strip_estimate", "strip_order", "weil_sum_check", "welch_bound",
]
