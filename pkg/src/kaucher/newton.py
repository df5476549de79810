"""Subdifferential Newton method for formal solutions of ``A x = b``.

The system is immersed into R^2n as ``Phi(y) = sti(A sti^-1(y) (-) b)``, a
piecewise affine map whose zeros are the images of formal solutions.  Each
step solves with the Jacobian of the affine piece that is active at the
current iterate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, StartFailureError
from .immersion import extended_multiplier, sti, sti_inv
from .linalg import IntervalMatrix, IntervalVector, mat_vec, mid_matrix, vec_ominus
from .reallinalg import lu_factor
from .splitting import SolveReport, Status

__all__ = ["NewtonOptions", "induced_phi", "subgradient", "newton_solve"]


@dataclass(frozen=True)
class NewtonOptions:
    tau: float = 1.0
    tol: float = 1e-12
    max_iter: int = 100

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise ValueError(f"damping factor must lie in (0, 1], got {self.tau}")
        if self.tol < 0:
            raise ValueError("tol must be nonnegative")
        if self.max_iter < 0:
            raise ValueError("max_iter must be nonnegative")


def _check(A: IntervalMatrix, y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or y.shape != (2 * n,):
        raise ShapeError(f"need a square matrix and a length-2n vector, got {A.shape} and {y.shape}")
    return y


def induced_phi(A: IntervalMatrix, b: IntervalVector, y) -> np.ndarray:
    y = _check(A, y)
    if len(b) != A.shape[0]:
        raise ShapeError(f"rhs length {len(b)} does not match matrix order {A.shape[0]}")
    return sti(vec_ominus(mat_vec(A, sti_inv(y)), b))


def _pick(v1, d1, v2, d2):
    # True where the second max operand is active: larger value, or equal value
    # and larger directional derivative; full ties go to the first operand
    return (v2 > v1) | ((v2 == v1) & (d2 > d1))


def subgradient(A: IntervalMatrix, y) -> np.ndarray:
    """Jacobian of the affine piece of ``Phi`` active at ``y``.

    Every endpoint of ``a_ij * x_j`` is ``max(.,.) - max(.,.)`` over products of
    positive and negative parts.  Branches and kinks are resolved by looking a
    little way along the fixed direction ``y + t (1, ..., 1)`` (which widens
    every ``x_j``): this picks the piece on that side, so the result is always
    the exact Jacobian of a neighbouring affine piece.  In particular a point
    matrix ``A`` gives ``A~`` at every ``y``.
    """
    y = _check(A, y)
    n = A.shape[0]
    xl = -y[:n][None, :]
    xh = y[n:][None, :]
    al, ah = A.lo, A.hi
    alp, aln = np.maximum(al, 0.0), np.maximum(-al, 0.0)
    ahp, ahn = np.maximum(ah, 0.0), np.maximum(-ah, 0.0)
    xlp, xln = np.maximum(xl, 0.0), np.maximum(-xl, 0.0)
    xhp, xhn = np.maximum(xh, 0.0), np.maximum(-xh, 0.0)
    # slopes of the parts; xl decreases and xh increases along the direction
    dxlp = (xl > 0).astype(float)
    dxln = -(xl <= 0).astype(float)
    dxhp = (xh >= 0).astype(float)
    dxhn = -(xh < 0).astype(float)
    zero = np.zeros((n, n))

    def term(c, slope, on_lo):
        # (value is computed by the caller) -> (d/dxl, d/dxh, directional)
        d = c * slope
        if on_lo:
            return d + zero, zero, -d + zero
        return zero, d + zero, d + zero

    def branch(v1, t1, v2, t2):
        sel = _pick(v1, t1[2], v2, t2[2])
        return np.where(sel, t2[0], t1[0]), np.where(sel, t2[1], t1[1])

    # lower endpoint: max(al+ xl+, ah- xh-) - max(ah+ xl-, al- xh+)
    p_l, p_h = branch(alp * xlp, term(alp, dxlp, True), ahn * xhn, term(ahn, dxhn, False))
    n_l, n_h = branch(ahp * xln, term(ahp, dxln, True), aln * xhp, term(aln, dxhp, False))
    lo_l, lo_h = p_l - n_l, p_h - n_h
    # upper endpoint: max(ah+ xh+, al- xl-) - max(al+ xh-, ah- xl+)
    p_l, p_h = branch(ahp * xhp, term(ahp, dxhp, False), aln * xln, term(aln, dxln, True))
    n_l, n_h = branch(alp * xhn, term(alp, dxhn, False), ahn * xlp, term(ahn, dxlp, True))
    hi_l, hi_h = p_l - n_l, p_h - n_h

    # y_j = -xl_j and y_{n+j} = xh_j; row i of Phi is -(lo_i - bl_i)
    D = np.empty((2 * n, 2 * n))
    D[:n, :n] = lo_l
    D[:n, n:] = -lo_h
    D[n:, :n] = -hi_l
    D[n:, n:] = hi_h
    return D + 0.0


def _rounding_floor(A: IntervalMatrix, x: IntervalVector, b: IntervalVector) -> float:
    scale = np.abs(np.concatenate([A.lo, A.hi], axis=1)).max(axis=1) * \
        np.abs(np.concatenate([x.lo, x.hi])).max() * A.shape[1]
    scale = scale + np.maximum(np.abs(b.lo), np.abs(b.hi))
    return float(8 * np.finfo(float).eps * scale.max())


def newton_solve(A: IntervalMatrix, b: IntervalVector, opts: NewtonOptions | None = None,
                 x0: IntervalVector | None = None):
    """Damped subdifferential Newton iteration; returns ``(x, SolveReport)``.

    The default start solves the midpoint system ``(mid A)~ y = sti(b)``.
    """
    opts = opts or NewtonOptions()
    n = len(b)
    if A.shape != (n, n):
        raise ShapeError(f"matrix shape {A.shape} does not match rhs length {n}")
    if x0 is None:
        f = lu_factor(extended_multiplier(mid_matrix(A)))
        if f.singular:
            raise StartFailureError("the midpoint system (mid A)~ y = sti(b) is singular")
        y = f.solve(sti(b))
    else:
        y = sti(x0)

    history = []
    status = Status.MAX_ITERATIONS
    F = induced_phi(A, b, y)
    res = float(np.max(np.abs(F)))
    k = 0
    while True:
        if res <= opts.tol:
            status = Status.CONVERGED
            break
        if k >= opts.max_iter:
            break
        f = lu_factor(subgradient(A, y))
        if f.singular:
            status = Status.SINGULAR_STEP
            break
        y = y - opts.tau * f.solve(F)
        k += 1
        try:
            F = induced_phi(A, b, y)
        except ArithmeticError:
            status = Status.DIVERGED
            res = np.inf
            break
        res = float(np.max(np.abs(F)))
        history.append(res)
    warnings = [] if status is Status.CONVERGED else [f"stopped with status {status.value}"]
    x = sti_inv(y) if np.all(np.isfinite(y)) else None
    if status is Status.MAX_ITERATIONS and x is not None:
        floor = _rounding_floor(A, x, b)
        if res <= floor:
            warnings.append(f"residual {res:.3g} is at rounding level (about {floor:.3g}); "
                            "a larger tol would be met")
    return x, SolveReport(status, k, res, "newton", None, history, warnings)
