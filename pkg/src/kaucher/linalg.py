"""Dense interval vectors and matrices over KR.

Both containers store their endpoints as two read-only float arrays ``lo`` and
``hi`` of equal shape.  Products are evaluated elementwise with the Lakeyev
formulas (which match the sign-class table bit for bit) and row sums are
accumulated strictly left to right so that results are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ArithmeticOverflowError, ShapeError, ZeroInProjectionError
from .interval import KInterval, format_interval

__all__ = [
    "IntervalVector", "IntervalMatrix", "mul_arrays", "mul_arrays_table",
    "mat_vec", "vec_ominus", "vec_dual", "mat_dual", "mag_matrix",
    "mid_matrix", "mid_vec", "rad_vec", "Dist", "residual",
]


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


def _check_finite(*arrays, op="operation"):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise ArithmeticOverflowError(f"{op}: non-finite endpoint")


class _Endpoints:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = _frozen(lo), _frozen(hi)
        if lo.shape != hi.shape:
            raise ShapeError(f"endpoint shapes differ: {lo.shape} vs {hi.shape}")
        _check_finite(lo, hi, op=type(self).__name__)
        # normalise -0.0
        self.lo = _frozen(lo + 0.0)
        self.hi = _frozen(hi + 0.0)

    @property
    def shape(self):
        return self.lo.shape

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.lo, other.lo)
                and np.array_equal(self.hi, other.hi))

    def __hash__(self):
        return hash((type(self), self.lo.tobytes(), self.hi.tobytes(), self.shape))

    def is_point(self) -> bool:
        return bool(np.array_equal(self.lo, self.hi))


class IntervalVector(_Endpoints):
    """Interval n-vector."""

    __slots__ = ()

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        super().__init__(lo, hi)
        if self.lo.ndim != 1 or self.lo.size < 1:
            raise ShapeError("an interval vector needs a 1-D, non-empty shape")

    @classmethod
    def from_intervals(cls, items: Iterable[KInterval]) -> "IntervalVector":
        items = list(items)
        return cls([x.lo for x in items], [x.hi for x in items])

    @classmethod
    def zeros(cls, n: int) -> "IntervalVector":
        return cls(np.zeros(n))

    def __len__(self):
        return self.lo.size

    def __getitem__(self, i) -> KInterval:
        return KInterval(self.lo[i], self.hi[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __add__(self, other: "IntervalVector") -> "IntervalVector":
        _same_length(self, other)
        return IntervalVector(self.lo + other.lo, self.hi + other.hi)

    def __repr__(self):
        return "IntervalVector([" + ", ".join(format_interval(x) for x in self) + "])"


class IntervalMatrix(_Endpoints):
    """Rectangular m x n interval matrix, row-major."""

    __slots__ = ()

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        super().__init__(lo, hi)
        if self.lo.ndim != 2:
            raise ShapeError("an interval matrix needs a 2-D shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[KInterval]]) -> "IntervalMatrix":
        if len({len(r) for r in rows}) > 1:
            raise ShapeError("rows have different lengths")
        return cls([[x.lo for x in r] for r in rows], [[x.hi for x in r] for r in rows])

    @classmethod
    def from_point(cls, Q) -> "IntervalMatrix":
        return cls(Q)

    def __getitem__(self, ij) -> KInterval:
        i, j = ij
        return KInterval(self.lo[i, j], self.hi[i, j])

    def rows(self):
        m, n = self.shape
        return [[self[i, j] for j in range(n)] for i in range(m)]

    def permute_rows(self, perm) -> "IntervalMatrix":
        perm = np.asarray(perm)
        return IntervalMatrix(self.lo[perm], self.hi[perm])

    def __repr__(self):
        body = "; ".join(" ".join(format_interval(x) for x in r) for r in self.rows())
        return f"IntervalMatrix({body})"


def _same_length(u, v):
    if u.shape != v.shape:
        raise ShapeError(f"length mismatch: {u.shape} vs {v.shape}")


def _parts(x):
    return np.maximum(x, 0.0), np.maximum(-x, 0.0)


def mul_arrays(alo, ahi, blo, bhi):
    """Elementwise Kaucher product of endpoint arrays (Lakeyev formulas)."""
    alp, aln = _parts(alo)
    ahp, ahn = _parts(ahi)
    blp, bln = _parts(blo)
    bhp, bhn = _parts(bhi)
    lo = np.maximum(alp * blp, ahn * bhn) - np.maximum(ahp * bln, aln * bhp)
    hi = np.maximum(ahp * bhp, aln * bln) - np.maximum(alp * bhn, ahn * blp)
    return lo + 0.0, hi + 0.0


def _classes(lo, hi):
    # 0: P, 1: Z, 2: -P, 3: dual Z; same precedence as interval.classify
    cls = np.full(np.shape(lo), 3, dtype=np.int8)
    cls[(lo <= 0) & (0 <= hi)] = 1
    cls[(lo <= 0) & (hi <= 0)] = 2
    cls[(lo >= 0) & (hi >= 0)] = 0
    return cls


def mul_arrays_table(alo, ahi, blo, bhi):
    """Elementwise Kaucher product by the sign-class table."""
    alo, ahi, blo, bhi = np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                               for v in (alo, ahi, blo, bhi)))
    ca, cb = _classes(alo, ahi), _classes(blo, bhi)
    ll, lh, hl, hh = alo * blo, alo * bhi, ahi * blo, ahi * bhi
    zero = np.zeros_like(ll)
    # cell (row class of a, column class of b) -> (lo, hi)
    cells = {
        (0, 0): (ll, hh), (0, 1): (hl, hh), (0, 2): (hl, lh), (0, 3): (ll, lh),
        (1, 0): (lh, hh), (1, 1): (np.minimum(lh, hl), np.maximum(ll, hh)),
        (1, 2): (hl, ll), (1, 3): (zero, zero),
        (2, 0): (lh, hl), (2, 1): (lh, ll), (2, 2): (hh, ll), (2, 3): (hh, hl),
        (3, 0): (ll, hl), (3, 1): (zero, zero), (3, 2): (hh, lh),
        (3, 3): (np.maximum(ll, hh), np.minimum(lh, hl)),
    }
    lo = np.empty_like(ll)
    hi = np.empty_like(ll)
    for (i, j), (clo, chi) in cells.items():
        sel = (ca == i) & (cb == j)
        lo[sel] = clo[sel]
        hi[sel] = chi[sel]
    return lo + 0.0, hi + 0.0


def _row_sums(plo, phi):
    # cumsum accumulates sequentially, unlike the pairwise np.sum
    return np.cumsum(plo, axis=1)[:, -1], np.cumsum(phi, axis=1)[:, -1]


def mat_vec(A: IntervalMatrix, x: IntervalVector) -> IntervalVector:
    """Kaucher matrix-vector product, summed left to right along each row."""
    if A.shape[1] != len(x):
        raise ShapeError(f"cannot multiply {A.shape} matrix by length-{len(x)} vector")
    plo, phi = mul_arrays(A.lo, A.hi, x.lo[None, :], x.hi[None, :])
    lo, hi = _row_sums(plo, phi)
    _check_finite(lo, hi, op="mat_vec")
    return IntervalVector(lo, hi)


def vec_ominus(u: IntervalVector, v: IntervalVector) -> IntervalVector:
    _same_length(u, v)
    return IntervalVector(u.lo - v.lo, u.hi - v.hi)


def vec_dual(u: IntervalVector) -> IntervalVector:
    return IntervalVector(u.hi, u.lo)


def mat_dual(A: IntervalMatrix) -> IntervalMatrix:
    return IntervalMatrix(A.hi, A.lo)


def mag_matrix(A: IntervalMatrix) -> np.ndarray:
    return np.maximum(np.abs(A.lo), np.abs(A.hi))


def mid_matrix(A: IntervalMatrix) -> np.ndarray:
    return 0.5 * (A.lo + A.hi)


def mid_vec(b: IntervalVector) -> np.ndarray:
    return 0.5 * (b.lo + b.hi)


def rad_vec(b: IntervalVector) -> np.ndarray:
    return 0.5 * (b.hi - b.lo)


def mig_array(lo, hi) -> np.ndarray:
    """Elementwise mignitude of the proper projection."""
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    has_zero = (np.minimum(lo, hi) <= 0) & (np.maximum(lo, hi) >= 0)
    return np.where(has_zero, 0.0, np.minimum(np.abs(lo), np.abs(hi)))


def Dist(u: IntervalVector, v: IntervalVector) -> np.ndarray:
    """Componentwise distance vector (the interval multimetric)."""
    _same_length(u, v)
    return np.maximum(np.abs(u.lo - v.lo), np.abs(u.hi - v.hi))


def residual(A: IntervalMatrix, x: IntervalVector, b: IntervalVector) -> float:
    """``max_i dist((Ax)_i, b_i)``; zero exactly at formal solutions."""
    if A.shape[0] != len(b):
        raise ShapeError(f"matrix has {A.shape[0]} rows, rhs has length {len(b)}")
    return float(np.max(Dist(mat_vec(A, x), b)))


def divide_arrays(alo, ahi, blo, bhi):
    """Elementwise internal division ``a * inv(b)``."""
    if np.any((np.minimum(blo, bhi) <= 0) & (np.maximum(blo, bhi) >= 0)):
        raise ZeroInProjectionError("oslash: zero in the proper projection of a divisor")
    return mul_arrays(alo, ahi, 1.0 / np.asarray(blo), 1.0 / np.asarray(bhi))
