"""Reproducible recovery and eigenvalue experiments.

Success-rate curves compare deterministic sampling against random sampling
across sparsity levels, for the greedy and l1 decoders; eigenvalue statistics
summarize random Gram spectra per sparsity. Every cell of an experiment draws
from an RNG substream keyed by (master seed, model, sparsity, trial), so the
output is a pure function of the config: identical configs give byte
identical CSVs.
"""
from __future__ import annotations

import csv
import logging
import sys
import time
from dataclasses import dataclass, field, fields

import numpy as np

from . import frames
from .decoders import BpConfig, DegeneracyError, OmpConfig, basis_pursuit, omp, recovery_success
from .lattice import FrequencyLattice, SupportSet, is_prime
from .sampling import (DETERMINISTIC, UNIFORM_CONTINUOUS, UNIFORM_LATTICE, SamplingSet,
                       SparsePolynomial, build_matrix, deterministic_points, evaluate,
                       random_points_continuous, random_points_lattice)
from .validation import check_positive_int, check_rng

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

_MODEL_IDS = {DETERMINISTIC: 0, UNIFORM_CONTINUOUS: 1, UNIFORM_LATTICE: 2}

SUCCESS_CSV_HEADER = ["model", "decoder", "M", "trials", "successes", "rate",
                      "mean_runtime_ms"]
EIGEN_CSV_HEADER = ["model", "M", "samples", "mean_lambda_min", "mean_lambda_max"]


def random_sparse_signal(lattice: FrequencyLattice, sparsity: int, seed) -> SparsePolynomial:
    """Random sparse polynomial: uniform support, complex Gaussian coefficients.

    The support is a uniform size-M subset of the lattice (taken from a
    random permutation of the canonical enumeration); real and imaginary
    coefficient parts are i.i.d. standard Gaussian, redrawn in the measure
    zero event a coefficient is exactly 0.
    """
    sparsity = check_positive_int(sparsity, "sparsity", minimum=0)
    if sparsity > lattice.size:
        raise ValueError(f"sparsity {sparsity} exceeds lattice size {lattice.size}")
    rng = check_rng(seed)
    cols = np.sort(rng.permutation(lattice.size)[:sparsity])
    coeffs = rng.standard_normal(sparsity) + 1j * rng.standard_normal(sparsity)
    while np.any(coeffs == 0):
        redo = coeffs == 0
        coeffs[redo] = rng.standard_normal(redo.sum()) + 1j * rng.standard_normal(redo.sum())
    return SparsePolynomial(lattice=lattice,
                            support=SupportSet.from_columns(lattice, cols),
                            coefficients=coeffs)


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment run.

    Loadable from a flat TOML file; unknown keys are rejected. The seed is
    mandatory: no experiment draws silent entropy.
    """

    q: int
    d: int
    n: int
    seed: int
    m_values: tuple[int, ...] = ()
    trials: int = 100
    decoder: str = "omp"
    models: tuple[str, ...] = (DETERMINISTIC, UNIFORM_CONTINUOUS)
    lattice_modulus: int | None = None
    success_tol: float = 1e-4
    output: str | None = None
    eigen_samples: int = 2000
    measure_runtime: bool = False

    def __post_init__(self):
        check_positive_int(self.q, "q", minimum=0)
        check_positive_int(self.d, "d")
        check_positive_int(self.n, "n")
        check_positive_int(self.trials, "trials")
        check_positive_int(self.eigen_samples, "eigen_samples")
        if self.decoder not in ("omp", "bp", "both"):
            raise ValueError(f"decoder must be omp, bp or both, got {self.decoder!r}")
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        if any(m < 1 for m in self.m_values):
            raise ValueError("m_values must all be >= 1")
        object.__setattr__(self, "models", tuple(self.models))
        for model in self.models:
            if model not in _MODEL_IDS:
                raise ValueError(f"unknown sampling model {model!r}")
        if DETERMINISTIC in self.models and not is_prime(self.n):
            raise ValueError(f"n must be prime for the deterministic model, got {self.n}")
        if UNIFORM_LATTICE in self.models and self.lattice_modulus is None:
            raise ValueError("lattice_modulus required for the uniform-lattice model")
        if self.success_tol <= 0:
            raise ValueError(f"success_tol must be > 0, got {self.success_tol}")

    @property
    def decoders(self) -> tuple[str, ...]:
        return ("omp", "bp") if self.decoder == "both" else (self.decoder,)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "seed" not in data:
            raise ValueError("config key 'seed' is required")
        return cls(**data)

    @classmethod
    def from_toml(cls, path) -> "ExperimentConfig":
        with open(path, "rb") as fh:
            return cls.from_dict(tomllib.load(fh))


@dataclass(frozen=True)
class CellResult:
    """Aggregated outcome of one (model, decoder, sparsity) cell."""

    model: str
    decoder: str
    sparsity: int
    trials: int
    successes: int
    mean_runtime_ms: float | None = None

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    def csv_row(self) -> list:
        runtime = "" if self.mean_runtime_ms is None else f"{self.mean_runtime_ms:.3f}"
        return [self.model, self.decoder, self.sparsity, self.trials,
                self.successes, f"{self.rate:.6f}", runtime]


@dataclass
class SuccessCurve:
    """Success rates per sparsity for each (model, decoder) series."""

    config: ExperimentConfig
    cells: list[CellResult] = field(default_factory=list)

    def rates(self, model: str, decoder: str) -> dict[int, float]:
        return {c.sparsity: c.rate for c in self.cells
                if c.model == model and c.decoder == decoder}

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(SUCCESS_CSV_HEADER)
            for cell in self.cells:
                writer.writerow(cell.csv_row())


def _sampling_set_for(model: str, cfg: ExperimentConfig, substream) -> SamplingSet:
    if model == UNIFORM_CONTINUOUS:
        return random_points_continuous(cfg.n, cfg.d, substream)
    if model == UNIFORM_LATTICE:
        return random_points_lattice(cfg.n, cfg.d, cfg.lattice_modulus, substream)
    raise ValueError(f"unknown sampling model {model!r}")


def run_success_experiment(cfg: ExperimentConfig) -> SuccessCurve:
    """Success-rate curves over sparsity, per sampling model and decoder.

    The deterministic sampling set is built once (it has no randomness);
    random models redraw their points every trial. Decoder degeneracies are
    counted as failures and logged, never fatal. When cfg.output is set the
    CSV is written incrementally, one row per finished cell, in a fixed
    (model, decoder, sparsity) order.
    """
    if not cfg.m_values:
        raise ValueError("m_values must be nonempty for a success experiment")
    lattice = FrequencyLattice.uniform(cfg.q, cfg.d)
    if max(cfg.m_values) > lattice.size:
        raise ValueError(f"m_values exceed the lattice size {lattice.size}")
    det_matrix = None
    if DETERMINISTIC in cfg.models:
        det_matrix = build_matrix(deterministic_points(cfg.n, cfg.d), lattice)
    curve = SuccessCurve(config=cfg)
    sink = None
    writer = None
    if cfg.output is not None:
        sink = open(cfg.output, "w", newline="")
        writer = csv.writer(sink)
        writer.writerow(SUCCESS_CSV_HEADER)
    try:
        for model in cfg.models:
            model_id = _MODEL_IDS[model]
            for m in cfg.m_values:
                counts = {dec: 0 for dec in cfg.decoders}
                runtimes = {dec: 0.0 for dec in cfg.decoders}
                for trial in range(cfg.trials):
                    root = np.random.SeedSequence((cfg.seed, model_id, m, trial))
                    points_stream, signal_stream = root.spawn(2)
                    if model == DETERMINISTIC:
                        matrix = det_matrix
                    else:
                        matrix = build_matrix(
                            _sampling_set_for(model, cfg, points_stream), lattice)
                    signal = random_sparse_signal(lattice, m, signal_stream)
                    y = evaluate(signal, matrix.sampling_set)
                    for dec in cfg.decoders:
                        start = time.perf_counter() if cfg.measure_runtime else 0.0
                        try:
                            if dec == "omp":
                                result = omp(matrix, y, OmpConfig(max_sparsity=m))
                            else:
                                result = basis_pursuit(matrix, y, BpConfig())
                        except DegeneracyError as exc:
                            logger.warning("decoder %s degenerate at model=%s M=%d trial=%d: %s",
                                           dec, model, m, trial, exc)
                            continue
                        if cfg.measure_runtime:
                            runtimes[dec] += (time.perf_counter() - start) * 1000.0
                        if recovery_success(signal, result, cfg.success_tol):
                            counts[dec] += 1
                for dec in cfg.decoders:
                    cell = CellResult(
                        model=model, decoder=dec, sparsity=m, trials=cfg.trials,
                        successes=counts[dec],
                        mean_runtime_ms=(runtimes[dec] / cfg.trials
                                         if cfg.measure_runtime else None))
                    curve.cells.append(cell)
                    if writer is not None:
                        writer.writerow(cell.csv_row())
                        sink.flush()
    finally:
        if sink is not None:
            sink.close()
    return curve


@dataclass(frozen=True)
class EigenCurve:
    """Per-model eigenvalue statistics rows."""

    config: ExperimentConfig
    rows: list[tuple[str, frames.EigenStatRow]]

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(EIGEN_CSV_HEADER)
            for model, row in self.rows:
                writer.writerow([model, row.sparsity, row.samples,
                                 f"{row.mean_lambda_min:.12g}",
                                 f"{row.mean_lambda_max:.12g}"])

    def stats(self, model: str) -> list[frames.EigenStatRow]:
        return [row for mdl, row in self.rows if mdl == model]


def run_eigen_experiment(cfg: ExperimentConfig) -> EigenCurve:
    """Mean extreme Gram eigenvalues per sparsity, per sampling model.

    One matrix per model: the deterministic one, and a single random draw for
    each random model (keyed by the master seed and the model id). Delegates
    the per-sparsity statistics to frames.eigen_statistics.
    """
    if not cfg.m_values:
        raise ValueError("m_values must be nonempty for an eigenvalue experiment")
    lattice = FrequencyLattice.uniform(cfg.q, cfg.d)
    rows: list[tuple[str, frames.EigenStatRow]] = []
    for model in cfg.models:
        model_id = _MODEL_IDS[model]
        if model == DETERMINISTIC:
            points = deterministic_points(cfg.n, cfg.d)
        else:
            points = _sampling_set_for(model, cfg, (cfg.seed, model_id, 0))
        matrix = build_matrix(points, lattice, normalized=True)
        stats = frames.eigen_statistics(matrix, cfg.m_values, cfg.eigen_samples,
                                        seed=(cfg.seed, model_id, 1))
        rows.extend((model, row) for row in stats)
    curve = EigenCurve(config=cfg, rows=rows)
    if cfg.output is not None:
        curve.write_csv(cfg.output)
    return curve
