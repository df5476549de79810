"""Stationary single-step iterations built on splittings ``A x = G(x) + H(x)``.

Two families are provided:

* ARMSplit: ``G`` is a point, absolutely regular matrix and the iteration runs
  in R^2n as ``x <- (G~)^-1 sti(b (-) H(sti^-1 x))``.  The *simple* variant takes
  ``G = floor(A)`` so ``G`` and ``A - G`` share signs; the *Markov* variant takes
  ``G = ceil(A)`` and lets ``H`` act on ``dual x_j`` wherever ``g_ij != 0``.
* TrnSplit: ``G``/``H`` are the upper/strictly-lower triangles of (a row
  permutation of) ``A``; each sweep is a forward pass followed by interval back
  substitution with internal division.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import BoundUnavailableError, ShapeError, SingularMatrixError, SplittingError
from .immersion import extended_multiplier, is_absolutely_regular, sti, sti_inv
from .linalg import (
    IntervalMatrix, IntervalVector, Dist, divide_arrays, mag_matrix, mig_array,
    mul_arrays, residual, _row_sums,
)
from .reallinalg import LUFactors, inverse, lu_factor, spectral_radius

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
DIVERGENCE_NORM = 1e12
GROWTH_FACTOR = 10.0
GROWTH_WINDOW = 50


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    DIVERGED = "Diverged"
    SINGULAR_STEP = "SingularStep"
    CRITERION_NOT_MET = "CriterionNotMet"


@dataclass
class SolveReport:
    status: Status
    iterations: int
    residual: float
    method: str = ""
    rho_estimate: Optional[float] = None
    history: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "status": self.status.value,
            "iterations": self.iterations,
            "residual": self.residual,
            "rho_estimate": self.rho_estimate,
            "warnings": list(self.warnings),
        }


class _DivergenceMonitor:
    """Flags runaway iterates or a residual stuck well above its best value."""

    def __init__(self):
        self.best = np.inf
        self.streak = 0

    def __call__(self, norm: float, res: float) -> bool:
        if not np.isfinite(norm) or norm > DIVERGENCE_NORM or not np.isfinite(res):
            return True
        self.best = min(self.best, res)
        if res > GROWTH_FACTOR * self.best:
            self.streak += 1
        else:
            self.streak = 0
        return self.streak >= GROWTH_WINDOW


def _square_system(A: IntervalMatrix, b: IntervalVector):
    n = len(b)
    if A.shape != (n, n):
        raise ShapeError(f"matrix shape {A.shape} does not match rhs length {n}")


# -- point splittings ---------------------------------------------------------

def floor_matrix(A: IntervalMatrix) -> np.ndarray:
    lo, hi = A.lo, A.hi
    return np.where((lo > 0) & (hi > 0), np.minimum(lo, hi),
                    np.where((lo < 0) & (hi < 0), np.maximum(lo, hi), 0.0))


def ceil_matrix(A: IntervalMatrix) -> np.ndarray:
    # boundary-inclusive, unlike floor: ceil([0, 2]) == 2
    lo, hi = A.lo, A.hi
    return np.where((lo >= 0) & (hi >= 0), np.maximum(lo, hi),
                    np.where((lo <= 0) & (hi <= 0), np.minimum(lo, hi), 0.0))


@dataclass(frozen=True, eq=False)
class PointSplitting:
    """``A x = G x + H(x)`` with point ``G`` and interval remainder ``H``.

    ``dual_mask[i, j]`` marks entries where ``H`` multiplies ``dual x_j``.
    """

    G: np.ndarray
    H: IntervalMatrix
    dual_mask: np.ndarray
    Gext_inv: np.ndarray
    variant: str
    attempts: int = 0
    Gext_lu: LUFactors | None = None

    def solve_G(self, rhs: np.ndarray) -> np.ndarray:
        """Apply ``(G~)^-1`` through the LU factors (more accurate than the
        explicit inverse near convergence)."""
        if self.Gext_lu is None:
            return self.Gext_inv @ rhs
        return self.Gext_lu.solve(rhs)


def _regularise(G0: np.ndarray, grow: bool, step: float, max_attempts: int):
    """Yield candidate matrices: ``G0`` itself, then entrywise perturbations.

    A common factor cannot change (absolute) singularity, so every nonzero entry
    gets its own weight in ``[0.5, 1]``; the relative change doubles each attempt.
    """
    yield 0, G0
    for k in range(1, max_attempts + 1):
        w = np.random.default_rng(k).uniform(0.5, 1.0, size=G0.shape)
        delta = step * 2.0 ** (k - 1) * w
        yield k, G0 * (1.0 + delta if grow else 1.0 - delta)


def _point_split(A, G0, grow, variant, step, max_attempts):
    if not np.any(G0):
        raise SplittingError(f"{variant} splitting: the point part of A is zero")
    for k, G in _regularise(G0, grow, step, max_attempts):
        if is_absolutely_regular(G):
            break
    else:
        raise SplittingError(
            f"{variant} splitting: no absolutely regular point part after {max_attempts} attempts")
    if k:
        log.info("%s splitting: point part perturbed (attempt %d)", variant, k)
    H = IntervalMatrix(A.lo - G, A.hi - G)
    mask = (G != 0) if variant == "markov" else np.zeros(G.shape, dtype=bool)
    Gext = extended_multiplier(G)
    return PointSplitting(G, H, mask, inverse(Gext), variant, k, lu_factor(Gext))


def arm_split_simple(A: IntervalMatrix, step: float = 1e-3,
                     max_attempts: int = 10) -> PointSplitting:
    """``G = floor(A)`` (shrunk if needed), ``H = A - G``, no dualisation."""
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    return _point_split(A, floor_matrix(A), False, "simple", step, max_attempts)


def arm_split_markov(A: IntervalMatrix, step: float = 1e-3,
                     max_attempts: int = 10) -> PointSplitting:
    """``G = ceil(A)`` (enlarged if needed), ``H = A - G`` acting on ``dual x``
    wherever ``g_ij != 0``."""
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    return _point_split(A, ceil_matrix(A), True, "markov", step, max_attempts)


def apply_H(split: PointSplitting, x: IntervalVector) -> IntervalVector:
    H = split.H
    if H.shape[1] != len(x):
        raise ShapeError(f"cannot apply {H.shape} remainder to length-{len(x)} vector")
    m = split.dual_mask
    xlo = np.where(m, x.hi[None, :], x.lo[None, :])
    xhi = np.where(m, x.lo[None, :], x.hi[None, :])
    plo, phi = mul_arrays(H.lo, H.hi, xlo, xhi)
    return IntervalVector(*_row_sums(plo, phi))


def apply_G(split: PointSplitting, x: IntervalVector) -> IntervalVector:
    return sti_inv(extended_multiplier(split.G) @ sti(x))


def arm_step(split: PointSplitting, b: IntervalVector, y: np.ndarray) -> np.ndarray:
    """One ARMSplit transition in immersed coordinates."""
    hx = apply_H(split, sti_inv(y))
    return split.solve_G(sti(b) - sti(hx))


class ArmCriterion(NamedTuple):
    rho: float
    satisfied: bool
    converged: bool
    matrix: np.ndarray


def arm_lipschitz_matrix(split: PointSplitting) -> np.ndarray:
    """``|V| |H|~`` with ``V = (G~)^-1``."""
    return np.abs(split.Gext_inv) @ extended_multiplier(mag_matrix(split.H))


def arm_convergence_criterion(split: PointSplitting) -> ArmCriterion:
    M = arm_lipschitz_matrix(split)
    sr = spectral_radius(M)
    if not sr.converged:
        log.warning("spectral radius estimate did not converge; criterion not established")
    return ArmCriterion(sr.rho, bool(sr.converged and sr.rho < 1.0), sr.converged, M)


def arm_iterate(A: IntervalMatrix, b: IntervalVector, split: PointSplitting | None = None,
                x0: IntervalVector | None = None, tol: float = DEFAULT_TOL,
                max_iter: int = DEFAULT_MAX_ITER, variant: str = "markov",
                require_criterion: bool = False):
    """Run ARMSplit; returns ``(x, SolveReport)``.

    Stops with ``Converged`` once both the step ``max zeta(x_new, x)`` and the
    residual are at most ``tol``.
    """
    _square_system(A, b)
    if split is None:
        split = arm_split_markov(A) if variant == "markov" else arm_split_simple(A)
    method = "armsplit" if split.variant == "markov" else "armsplit-simple"
    crit = arm_convergence_criterion(split)
    warnings = []
    if not crit.satisfied:
        warnings.append(f"convergence criterion not met (rho = {crit.rho:.6g})")
    if split.Gext_inv is None or not np.all(np.isfinite(split.Gext_inv)):
        return x0, SolveReport(Status.SINGULAR_STEP, 0, np.inf, method, crit.rho,
                               warnings=warnings)

    if x0 is None:
        y = split.solve_G(sti(b))
    else:
        y = sti(x0)
    if require_criterion and not crit.satisfied:
        x = sti_inv(y)
        return x, SolveReport(Status.CRITERION_NOT_MET, 0, residual(A, x, b), method,
                              crit.rho, warnings=warnings)

    monitor = _DivergenceMonitor()
    history = []
    status = Status.MAX_ITERATIONS
    k = 0
    res = residual(A, sti_inv(y), b)
    for k in range(1, max_iter + 1):
        y_new = arm_step(split, b, y)
        step = float(np.max(np.abs(y_new - y))) if np.all(np.isfinite(y_new)) else np.inf
        y = y_new
        norm = float(np.max(np.abs(y)))
        res = residual(A, sti_inv(y), b) if np.isfinite(norm) else np.inf
        history.append(res)
        if step <= tol and res <= tol:
            status = Status.CONVERGED
            break
        if monitor(norm, res):
            status = Status.DIVERGED
            break
    x = sti_inv(y) if np.all(np.isfinite(y)) and np.max(np.abs(y)) < np.finfo(float).max else None
    return x, SolveReport(status, k, res, method, crit.rho, history, warnings)


# -- triangular splitting -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class TriangularSplitting:
    """Row permutation ``perm`` (new row i is old row ``perm[i]``), the upper
    triangle ``G`` including the diagonal and the strict lower triangle ``H``."""

    perm: np.ndarray
    G: IntervalMatrix
    H: IntervalMatrix

    @property
    def A(self) -> IntervalMatrix:
        return IntervalMatrix(self.G.lo + self.H.lo, self.G.hi + self.H.hi)


def _strictly_dominant(A: IntervalMatrix) -> bool:
    d = np.arange(A.shape[0])
    M = mag_matrix(A)
    off = M.sum(axis=1) - M[d, d]
    return bool(np.all(mig_array(A.lo[d, d], A.hi[d, d]) > off))


def trn_split(A: IntervalMatrix) -> TriangularSplitting:
    """Row ordering for the triangular splitting.

    A strictly diagonally dominant matrix keeps its natural order.  Otherwise,
    column by column, take the unused row whose entry has the largest
    mignitude (lowest index on ties).
    """
    n, m = A.shape
    if n != m:
        raise ShapeError(f"expected a square matrix, got {A.shape}")
    mig = mig_array(A.lo, A.hi)
    if _strictly_dominant(A):
        # greedy picks could trade a dominant diagonal for a larger off-diagonal entry
        perm = np.arange(n)
    else:
        unused = list(range(n))
        perm = []
        for j in range(n):
            best = max(unused, key=lambda r: (mig[r, j], -r))
            if mig[best, j] == 0.0:
                raise SplittingError(f"no row has an invertible entry in column {j}")
            perm.append(best)
            unused.remove(best)
        perm = np.array(perm)
    P = A.permute_rows(perm)
    upper = np.triu(np.ones((n, n), dtype=bool))
    G = IntervalMatrix(np.where(upper, P.lo, 0.0), np.where(upper, P.hi, 0.0))
    H = IntervalMatrix(np.where(upper, 0.0, P.lo), np.where(upper, 0.0, P.hi))
    return TriangularSplitting(perm, G, H)


def _mul(al, ah, bl, bh):
    """Scalar Lakeyev product on plain floats (hot loop of the back substitution)."""
    alp, aln = (al, 0.0) if al > 0 else (0.0, -al)
    ahp, ahn = (ah, 0.0) if ah > 0 else (0.0, -ah)
    blp, bln = (bl, 0.0) if bl > 0 else (0.0, -bl)
    bhp, bhn = (bh, 0.0) if bh > 0 else (0.0, -bh)
    return (max(alp * blp, ahn * bhn) - max(ahp * bln, aln * bhp),
            max(ahp * bhp, aln * bln) - max(alp * bhn, ahn * blp))


def trn_sweep(split: TriangularSplitting, b: IntervalVector, x: IntervalVector) -> IntervalVector:
    """One TrnSplit sweep; ``b`` is in the permuted row order."""
    G, H = split.G, split.H
    n = len(b)
    # forward pass only reads the previous iterate, so it is one product
    hlo, hhi = mul_arrays(H.lo, H.hi, x.lo[None, :], x.hi[None, :])
    slo, shi = _row_sums(hlo, hhi)
    plo = (b.lo - slo).tolist()
    phi = (b.hi - shi).tolist()
    glo, ghi = G.lo.tolist(), G.hi.tolist()
    xlo = [0.0] * n
    xhi = [0.0] * n
    for i in range(n - 1, -1, -1):
        rlo, rhi = glo[i], ghi[i]
        slo = shi = 0.0
        for j in range(i + 1, n):
            if rlo[j] != 0.0 or rhi[j] != 0.0:
                clo, chi = _mul(rlo[j], rhi[j], xlo[j], xhi[j])
                slo += clo
                shi += chi
        # 0 is outside pro(g_ii) by construction of the split
        xlo[i], xhi[i] = _mul(plo[i] - slo, phi[i] - shi, 1.0 / rlo[i], 1.0 / rhi[i])
    return IntervalVector(xlo, xhi)


def trn_start(split: TriangularSplitting, b: IntervalVector) -> IntervalVector:
    """Default start ``x_i = b_i (/) g_ii`` (``b`` in permuted order)."""
    d = np.arange(len(b))
    return IntervalVector(*divide_arrays(b.lo, b.hi, split.G.lo[d, d], split.G.hi[d, d]))


def trn_iterate(A: IntervalMatrix, b: IntervalVector, split: TriangularSplitting | None = None,
                x0: IntervalVector | None = None, tol: float = DEFAULT_TOL,
                max_iter: int = DEFAULT_MAX_ITER):
    """Run TrnSplit; returns ``(x, SolveReport)``.

    Terminates when the sweep-to-sweep distance ``q`` drops below ``tol`` and the
    residual is at most ``tol``.
    """
    _square_system(A, b)
    if split is None:
        split = trn_split(A)
    bp = IntervalVector(b.lo[split.perm], b.hi[split.perm])
    crit = trn_convergence_criterion(split.A)
    warnings = []
    if not crit.satisfied:
        warnings.append(f"convergence criterion not met (rho(Q) = {crit.rho_Q:.6g})")
    x = trn_start(split, bp) if x0 is None else x0
    monitor = _DivergenceMonitor()
    history = []
    status = Status.MAX_ITERATIONS
    res = residual(A, x, b)
    k = 0
    for k in range(1, max_iter + 1):
        x_new = trn_sweep(split, bp, x)
        q = float(np.max(Dist(x, x_new)))
        x = x_new
        res = residual(A, x, b)
        history.append(res)
        if q < tol and res <= tol:
            status = Status.CONVERGED
            break
        if monitor(float(np.max(np.abs(np.concatenate([x.lo, x.hi])))), res):
            status = Status.DIVERGED
            break
    return x, SolveReport(status, k, res, "trnsplit", crit.rho_Q, history, warnings)


class TrnCriterion(NamedTuple):
    rho_Q: float
    s: np.ndarray
    diag_dominant: bool
    satisfied: bool
    Q: np.ndarray
    converged: bool
    Q_sweep: np.ndarray


def trn_convergence_criterion(A: IntervalMatrix) -> TrnCriterion:
    """Sufficient conditions for TrnSplit on an already row-permuted matrix.

    ``Q = (I - DL)^-1 DR`` with ``D = diag(1 / mig(a_ii))`` and ``L``, ``R`` the
    strict lower and upper parts of ``|A|``; ``rho_Q < 1`` is the test.

    The sweep itself reads old values below the diagonal and fresh ones above
    it, so its componentwise contraction is ``Q_sweep = (I - DR)^-1 DL``; that
    is the matrix to feed to :func:`trn_error_bound`.  Both are Gauss-Seidel
    matrices of the same nonnegative Jacobi matrix ``D(L + R)``, hence their
    spectral radii are below one together.
    """
    n = A.shape[0]
    d = np.arange(n)
    diag_mig = mig_array(A.lo[d, d], A.hi[d, d])
    if np.any(diag_mig == 0):
        raise SingularMatrixError("a diagonal entry has zero in its proper projection")
    M = mag_matrix(A)
    D = np.diag(1.0 / diag_mig)
    DL = D @ np.tril(M, -1)
    DR = D @ np.triu(M, 1)
    # both factors are unit triangular, so they cannot be singular
    f = lu_factor(np.eye(n) - DL)
    Q = np.column_stack([f.solve(DR[:, j]) for j in range(n)])
    f = lu_factor(np.eye(n) - DR)
    Q_sweep = np.column_stack([f.solve(DL[:, j]) for j in range(n)])
    sr = spectral_radius(np.maximum(Q, 0.0))
    s = np.zeros(n)
    for i in range(n):
        s[i] = (M[i, :i] @ s[:i] + M[i, i + 1:].sum()) / diag_mig[i]
    dominant = _strictly_dominant(A)
    return TrnCriterion(sr.rho, s, dominant, bool(sr.converged and sr.rho < 1.0), Q,
                        sr.converged, np.maximum(Q_sweep, 0.0))


def trn_error_bound(Q, d01, k: int) -> np.ndarray:
    """``((I - Q)^-1 - sum_{j<k} Q^j) d01``, evaluated as the tail ``Q^k (I - Q)^-1 d01``."""
    Q = np.asarray(Q, dtype=float)
    sr = spectral_radius(np.abs(Q))
    if not (sr.converged and sr.rho < 1.0):
        raise BoundUnavailableError(f"rho(Q) = {sr.rho:.6g} is not below one")
    v = lu_factor(np.eye(Q.shape[0]) - Q).solve(np.asarray(d01, dtype=float))
    for _ in range(k):
        v = Q @ v
    return v
