"""Standard immersion of KR^n into R^2n and point-matrix formal solves.

``sti`` sends ``x`` to ``(-lo_1, ..., -lo_n, hi_1, ..., hi_n)``.  Under this
map inclusion becomes the componentwise order and multiplication by a point
matrix ``Q`` becomes multiplication by the nonnegative extended multiplier
``Q~ = [[Q+, Q-], [Q-, Q+]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, SingularMatrixError
from .linalg import IntervalVector, mid_vec, rad_vec
from .reallinalg import PIVOT_TOL, lu_factor, lu_solve


def sti(x: IntervalVector) -> np.ndarray:
    return np.concatenate([-x.lo, x.hi]) + 0.0


def sti_inv(y) -> IntervalVector:
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or y.size % 2:
        raise ShapeError(f"sti_inv needs an even-length vector, got shape {y.shape}")
    n = y.size // 2
    return IntervalVector(-y[:n], y[n:])


def extended_multiplier(Q) -> np.ndarray:
    """The 2n x 2n matrix ``[[Q+, Q-], [Q-, Q+]]`` with ``sti(Q x) = Q~ sti(x)``."""
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {Q.shape}")
    pos = np.maximum(Q, 0.0)
    neg = np.maximum(-Q, 0.0)
    return np.block([[pos, neg], [neg, pos]])


@dataclass(frozen=True)
class Regularity:
    """Outcome of the absolute-regularity test (both ``Q`` and ``|Q|`` nonsingular)."""

    regular: bool
    q_singular: bool
    abs_q_singular: bool
    q_pivot_ratio: float
    abs_q_pivot_ratio: float

    def __bool__(self):
        return self.regular

    @property
    def failed(self) -> str | None:
        if self.q_singular:
            return "Q is singular"
        if self.abs_q_singular:
            return "|Q| is singular"
        return None


def is_absolutely_regular(Q, tol: float = PIVOT_TOL) -> Regularity:
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {Q.shape}")
    fq = lu_factor(Q, tol)
    fa = lu_factor(np.abs(Q), tol)
    return Regularity(not (fq.singular or fa.singular), fq.singular, fa.singular,
                      fq.min_pivot_ratio, fa.min_pivot_ratio)


def solve_point_system(A, b: IntervalVector, tol: float = PIVOT_TOL) -> IntervalVector:
    """Formal solution of ``A x = b`` for a point matrix ``A`` via ``(A~)^-1``."""
    A = np.asarray(A, dtype=float)
    if A.shape != (len(b), len(b)):
        raise ShapeError(f"matrix shape {A.shape} does not match rhs length {len(b)}")
    reg = is_absolutely_regular(A, tol)
    if not reg:
        raise SingularMatrixError(f"matrix is not absolutely regular: {reg.failed}")
    return sti_inv(lu_solve(extended_multiplier(A), sti(b), tol))


def markov_solve(A, b: IntervalVector, tol: float = PIVOT_TOL) -> IntervalVector:
    """Same formal solution through midpoint and radius systems.

    Solves ``A m = mid(b)`` and ``|A| r = rad(b)``; the answer is ``[m - r, m + r]``.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (len(b), len(b)):
        raise ShapeError(f"matrix shape {A.shape} does not match rhs length {len(b)}")
    m = lu_solve(A, mid_vec(b), tol)
    r = lu_solve(np.abs(A), rad_vec(b), tol)
    return IntervalVector(m - r, m + r)


def zeta(x, y) -> np.ndarray:
    """Multimetric on R^2n: entries ``i`` and ``i+n`` both hold
    ``max(|x_i - y_i|, |x_{i+n} - y_{i+n}|)``."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size % 2:
        raise ShapeError("zeta needs two vectors of the same even length")
    n = x.size // 2
    d = np.abs(x - y)
    half = np.maximum(d[:n], d[n:])
    return np.concatenate([half, half])
