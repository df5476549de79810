"""Dense real linear algebra: LU with partial pivoting and Perron roots."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ArithmeticOverflowError, ShapeError, SingularMatrixError

PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class LUFactors:
    """Packed ``P A = L U`` factors; ``L`` has a unit diagonal not stored."""

    lu: np.ndarray
    perm: np.ndarray
    singular: bool
    min_pivot_ratio: float

    def solve(self, b) -> np.ndarray:
        if self.singular:
            raise SingularMatrixError(
                f"matrix is numerically singular (pivot ratio {self.min_pivot_ratio:.3g})")
        lu = self.lu
        n = lu.shape[0]
        y = np.array(b, dtype=float)[self.perm]
        for i in range(1, n):
            y[i:] -= lu[i:, i - 1] * y[i - 1]
        for i in range(n - 1, -1, -1):
            y[i] = (y[i] - lu[i, i + 1:] @ y[i + 1:]) / lu[i, i]
        return y


def _square(A) -> np.ndarray:
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def lu_factor(A, tol: float = PIVOT_TOL) -> LUFactors:
    """Factorise ``A`` with partial pivoting.

    A pivot is rejected as zero when its magnitude falls below ``tol`` times the
    largest magnitude in the original row it came from.
    """
    lu = _square(A)
    n = lu.shape[0]
    row_scale = np.max(np.abs(lu), axis=1) if n else np.zeros(0)
    perm = np.arange(n)
    singular = False
    min_ratio = np.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        scale = row_scale[perm[k]]
        ratio = abs(lu[k, k]) / scale if scale > 0 else 0.0
        min_ratio = min(min_ratio, ratio)
        if ratio < tol:
            singular = True
            continue
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LUFactors(lu, perm, singular, float(min_ratio))


def is_singular(A, tol: float = PIVOT_TOL) -> bool:
    return lu_factor(A, tol).singular


def lu_solve(A, b, tol: float = PIVOT_TOL) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    A = _square(A)
    if b.shape[0] != A.shape[0]:
        raise ShapeError(f"rhs length {b.shape[0]} does not match matrix order {A.shape[0]}")
    return lu_factor(A, tol).solve(b)


def inverse(A, tol: float = PIVOT_TOL) -> np.ndarray:
    A = _square(A)
    f = lu_factor(A, tol)
    n = A.shape[0]
    return np.column_stack([f.solve(e) for e in np.eye(n)]) if n else np.zeros((0, 0))


class SpectralRadius(NamedTuple):
    rho: float
    converged: bool
    iterations: int


def _power(M, tol, max_iter):
    n = M.shape[0]
    x = np.ones(n)
    prev = np.inf
    best = 0.0
    for k in range(1, max_iter + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            y = M @ x
        ratio = float(np.max(np.abs(y)))
        if not np.isfinite(ratio):
            raise ArithmeticOverflowError("spectral_radius: non-finite growth")
        if ratio == 0.0:
            # nilpotent on the start vector
            return 0.0, True, k
        best = max(best, ratio)
        if abs(ratio - prev) < tol * max(1.0, ratio):
            return ratio, True, k
        prev = ratio
        x = y / ratio
    return best, False, max_iter


def spectral_radius(M, tol: float = 1e-12, max_iter: int = 20000) -> SpectralRadius:
    """Perron root of an entrywise nonnegative matrix by power iteration.

    Starts from the all-ones vector and stops when successive infinity-norm
    growth ratios agree to ``tol``.  If the ratios keep oscillating (periodic
    matrices) the shifted matrix ``I + M``, which has Perron root ``1 + rho``
    and is aperiodic, is tried once; failing that the running maximum ratio is
    returned with ``converged=False``.
    """
    M = _square(M)
    if M.size == 0:
        return SpectralRadius(0.0, True, 0)
    if np.any(M < 0):
        raise ValueError("spectral_radius expects an entrywise nonnegative matrix")
    rho, ok, k = _power(M, tol, max_iter)
    if ok:
        return SpectralRadius(rho, True, k)
    shifted, ok2, k2 = _power(M + np.eye(M.shape[0]), tol, max_iter)
    if ok2:
        return SpectralRadius(max(shifted - 1.0, 0.0), True, k + k2)
    return SpectralRadius(rho, False, k + k2)
