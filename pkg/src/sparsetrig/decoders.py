"""Sparse recovery decoders.

Two decoders over a sampling matrix A and measurement vector y:

* orthogonal matching pursuit: greedily select the column with the largest
  correlation magnitude against the residual, then re-solve least squares on
  the selected set;
* basis pursuit: minimum-l1 interpolation, solved by alternating-direction
  splitting with an exact projection onto the constraint {c : A c = y} and
  complex magnitude soft-thresholding.

Both are available as plain functions returning a DecodeResult and as
scikit-learn style estimators (fit/predict/get_params) so they compose with
the wider ecosystem.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from sklearn.base import BaseEstimator

from .exceptions import DegeneracyError
from .lattice import SupportSet
from .sampling import SamplingMatrix, SparsePolynomial
from .validation import check_complex_vector, check_positive_int

_COND_LIMIT = 1e12
# Correlations below this (relative to ||r|| * sqrt(N)) mean the residual is
# numerically orthogonal to every column: no further progress is possible.
_STALL_RTOL = 1e-14


@dataclass(frozen=True)
class OmpConfig:
    """Stopping rules for matching pursuit.

    At least one rule must be active: a sparsity budget (iteration cap) or a
    positive absolute residual tolerance. The loop runs while the residual
    exceeds the tolerance AND the budget is not exhausted, i.e. it stops as
    soon as either rule fires.
    """

    max_sparsity: int | None = None
    tol: float = 0.0

    def __post_init__(self):
        if self.max_sparsity is not None:
            check_positive_int(self.max_sparsity, "max_sparsity")
        if self.tol < 0:
            raise ValueError(f"tol must be >= 0, got {self.tol}")
        if self.max_sparsity is None and self.tol == 0.0:
            raise ValueError("at least one stopping rule required: max_sparsity or tol > 0")


@dataclass(frozen=True)
class BpConfig:
    """Splitting-scheme parameters for the l1 decoder."""

    rho: float = 1.0
    abs_tol: float = 1e-8
    rel_tol: float = 1e-8
    max_iter: int = 20000
    relaxation: float = 1.8
    support_rtol: float = 1e-4

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("abs_tol and rel_tol must be > 0")
        check_positive_int(self.max_iter, "max_iter")
        if not 0 < self.relaxation < 2:
            raise ValueError(f"relaxation must be in (0, 2), got {self.relaxation}")


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of a decode: dense coefficients plus the recovered support."""

    coefficients: np.ndarray
    support: SupportSet
    residual_history: tuple[float, ...]
    iterations: int
    converged: bool

    def to_json(self) -> dict:
        return {
            "support": self.support.to_json(),
            "coefficients": [[float(v.real), float(v.imag)] for v in self.coefficients],
            "residual_history": list(self.residual_history),
            "iterations": self.iterations,
            "converged": self.converged,
        }


def _lstsq_columns(a: np.ndarray, cols: list[int], y: np.ndarray) -> np.ndarray:
    """Least squares on a column subset via orthogonal factorization.

    Raises DegeneracyError when the restricted columns are numerically rank
    deficient (condition number above 1e12).
    """
    sub = a[:, cols]
    coef, _, _, sv = np.linalg.lstsq(sub, y, rcond=None)
    if sv[-1] <= 0 or sv[0] / sv[-1] > _COND_LIMIT:
        raise DegeneracyError(
            f"restricted columns {cols} are numerically rank deficient "
            f"(condition number > {_COND_LIMIT:g})")
    return coef


def restricted_least_squares(matrix: SamplingMatrix, support: SupportSet,
                             y) -> np.ndarray:
    """Minimizer of ||y - A z|| over z supported on the given columns.

    Returns the coefficients in the support's order; the residual is
    orthogonal to the span of the selected columns.
    """
    n = matrix.shape[0]
    if support.size > n:
        raise ValueError("support larger than the number of samples")
    y = check_complex_vector(y, n)
    cols = support.column_indices(matrix.lattice)
    return _lstsq_columns(matrix.entries, cols, y)


def _omp_core(a: np.ndarray, y: np.ndarray, cap: int, tol: float):
    n, d = a.shape
    ah = a.conj().T
    residual = y.copy()
    history = [float(np.linalg.norm(residual))]
    cols: list[int] = []
    coef = np.zeros(0, dtype=np.complex128)
    cap = min(cap, n)
    while history[-1] > tol and len(cols) < cap:
        correlations = ah @ residual
        j = int(np.argmax(np.abs(correlations)))  # ties: lowest column index
        if abs(correlations[j]) <= _STALL_RTOL * history[-1] * np.sqrt(n) or j in cols:
            break
        cols.append(j)
        coef = _lstsq_columns(a, cols, y)
        residual = y - a[:, cols] @ coef
        history.append(float(np.linalg.norm(residual)))
    dense = np.zeros(d, dtype=np.complex128)
    if cols:
        dense[cols] = coef
    converged = history[-1] <= max(tol, 1e-10 * history[0])
    return dense, cols, history, converged


def omp(matrix: SamplingMatrix, y, config: OmpConfig) -> DecodeResult:
    """Orthogonal matching pursuit.

    Per iteration: correlate (h = A^H r, conjugate transpose so the match is
    the complex inner product), select argmax |h| (ties to the lowest
    canonical column), append to the active set, re-solve the restricted
    least-squares problem, update the residual. Stops when the residual norm
    drops to the tolerance or the sparsity budget is exhausted.
    """
    n = matrix.shape[0]
    y = check_complex_vector(y, n)
    cap = config.max_sparsity if config.max_sparsity is not None else n
    dense, cols, history, converged = _omp_core(matrix.entries, y, cap, config.tol)
    return DecodeResult(
        coefficients=dense,
        support=SupportSet.from_columns(matrix.lattice, cols),
        residual_history=tuple(history),
        iterations=len(cols),
        converged=converged,
    )


def _bp_core(a: np.ndarray, y: np.ndarray, cfg: BpConfig):
    n, d = a.shape
    ah = a.conj().T
    try:
        factor = cho_factor(a @ ah)
    except np.linalg.LinAlgError as exc:
        raise DegeneracyError("row Gram A A^H is singular; rows are linearly dependent") from exc

    def project(v):
        # Orthogonal projection onto the affine constraint set {c : A c = y}.
        return v - ah @ cho_solve(factor, a @ v - y)

    z = np.zeros(d, dtype=np.complex128)
    u = np.zeros(d, dtype=np.complex128)
    c = z
    kappa = 1.0 / cfg.rho
    alpha = cfg.relaxation
    history = []
    converged = False
    iterations = 0
    sqrt_d = np.sqrt(d)
    for iterations in range(1, cfg.max_iter + 1):
        c = project(z - u)
        c_hat = alpha * c + (1 - alpha) * z
        z_old = z
        v = c_hat + u
        mag = np.abs(v)
        with np.errstate(invalid="ignore", divide="ignore"):
            shrink = np.where(mag > kappa, 1.0 - kappa / mag, 0.0)
        z = shrink * v
        u = u + c_hat - z
        primal = float(np.linalg.norm(c - z))
        dual = float(cfg.rho * np.linalg.norm(z - z_old))
        history.append(primal)
        eps_primal = sqrt_d * cfg.abs_tol + cfg.rel_tol * max(
            np.linalg.norm(c), np.linalg.norm(z))
        eps_dual = sqrt_d * cfg.abs_tol + cfg.rel_tol * cfg.rho * np.linalg.norm(u)
        if primal <= eps_primal and dual <= eps_dual:
            converged = True
            break
    return c, history, iterations, converged


def basis_pursuit(matrix: SamplingMatrix, y, config: BpConfig | None = None) -> DecodeResult:
    """Minimum-l1 interpolation: argmin ||c||_1 subject to A c = y.

    Alternating-direction splitting: the coefficient update projects onto the
    interpolation constraint through a Cholesky factorization of A A^H
    computed once; the auxiliary update shrinks magnitudes while preserving
    phases. The returned iterate is the constraint-feasible one, so
    ||A c - y|| is at solver precision even when converged is False.

    The reported support contains the entries whose magnitude exceeds
    ``support_rtol`` times the largest magnitude.
    """
    config = config or BpConfig()
    n = matrix.shape[0]
    y = check_complex_vector(y, n)
    c, history, iterations, converged = _bp_core(matrix.entries, y, config)
    peak = float(np.abs(c).max(initial=0.0))
    if peak > 0:
        cols = np.flatnonzero(np.abs(c) > config.support_rtol * peak)
    else:
        cols = np.array([], dtype=int)
    return DecodeResult(
        coefficients=c,
        support=SupportSet.from_columns(matrix.lattice, cols),
        residual_history=tuple(history),
        iterations=iterations,
        converged=converged,
    )


def recovery_success(truth: SparsePolynomial, result: DecodeResult,
                     tol: float = 1e-4) -> bool:
    """Whether the decode matched the true coefficients to relative l2 error tol.

    Compared on the full lattice. A zero polynomial counts as recovered when
    the decoded vector's norm is at most tol (absolute).
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    c_true = truth.dense_coefficients()
    scale = float(np.linalg.norm(c_true))
    err = float(np.linalg.norm(result.coefficients - c_true))
    if scale == 0.0:
        return err <= tol
    return err / scale <= tol


def _design_matrix(x) -> np.ndarray:
    if isinstance(x, SamplingMatrix):
        return x.entries
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"design matrix must be 2-d, got shape {arr.shape}")
    return arr


class OrthogonalMatchingPursuit(BaseEstimator):
    """Greedy sparse decoder with the scikit-learn estimator interface.

    Parameters
    ----------
    max_sparsity : int or None
        Iteration cap (defaults to the number of samples).
    tol : float
        Absolute residual norm at which to stop early.

    Attributes (after fit)
    ----------------------
    coef_ : (D,) complex ndarray of decoded coefficients.
    support_ : int ndarray of selected column indices, in selection order.
    residual_history_ : per-iteration residual norms, starting at ||y||.
    n_iter_ : number of greedy selections made.
    converged_ : whether the final residual met the stopping tolerance.
    """

    def __init__(self, max_sparsity: int | None = None, tol: float = 0.0):
        self.max_sparsity = max_sparsity
        self.tol = tol

    def fit(self, X, y):
        a = _design_matrix(X)
        y = check_complex_vector(y, a.shape[0])
        if self.max_sparsity is None and self.tol == 0.0:
            cap = a.shape[0]
        else:
            OmpConfig(max_sparsity=self.max_sparsity, tol=self.tol)
            cap = self.max_sparsity if self.max_sparsity is not None else a.shape[0]
        dense, cols, history, converged = _omp_core(a, y, cap, self.tol)
        self.coef_ = dense
        self.support_ = np.asarray(cols, dtype=int)
        self.residual_history_ = tuple(history)
        self.n_iter_ = len(cols)
        self.converged_ = converged
        return self

    def predict(self, X):
        """Fitted sample values A @ coef_ for a design matrix X."""
        return _design_matrix(X) @ self.coef_


class BasisPursuit(BaseEstimator):
    """Minimum-l1 decoder with the scikit-learn estimator interface.

    Parameters mirror BpConfig; attributes after fit match
    OrthogonalMatchingPursuit, with support_ extracted by the relative
    magnitude threshold.
    """

    def __init__(self, rho: float = 1.0, abs_tol: float = 1e-8, rel_tol: float = 1e-8,
                 max_iter: int = 20000, relaxation: float = 1.8,
                 support_rtol: float = 1e-4):
        self.rho = rho
        self.abs_tol = abs_tol
        self.rel_tol = rel_tol
        self.max_iter = max_iter
        self.relaxation = relaxation
        self.support_rtol = support_rtol

    def _config(self) -> BpConfig:
        return BpConfig(rho=self.rho, abs_tol=self.abs_tol, rel_tol=self.rel_tol,
                        max_iter=self.max_iter, relaxation=self.relaxation,
                        support_rtol=self.support_rtol)

    def fit(self, X, y):
        a = _design_matrix(X)
        y = check_complex_vector(y, a.shape[0])
        cfg = self._config()
        c, history, iterations, converged = _bp_core(a, y, cfg)
        peak = float(np.abs(c).max(initial=0.0))
        self.coef_ = c
        self.support_ = (np.flatnonzero(np.abs(c) > cfg.support_rtol * peak)
                         if peak > 0 else np.array([], dtype=int))
        self.residual_history_ = tuple(history)
        self.n_iter_ = iterations
        self.converged_ = converged
        return self

    def predict(self, X):
        """Fitted sample values A @ coef_ for a design matrix X."""
        return _design_matrix(X) @ self.coef_
