"""Random problem generators shared by the test modules."""

import numpy as np

from kaucher.linalg import IntervalMatrix, IntervalVector
from kaucher.newton import induced_phi


def random_interval_matrix(rng, n, scale=5.0):
    return IntervalMatrix(rng.uniform(-scale, scale, (n, n)), rng.uniform(-scale, scale, (n, n)))


def random_interval_vector(rng, n, scale=5.0):
    return IntervalVector(rng.uniform(-scale, scale, n), rng.uniform(-scale, scale, n))


def diagonally_dominant(rng, n, margin=1.5):
    """Mixed proper/improper matrix with mig(a_ii) > margin * sum_j mag(a_ij)."""
    lo = rng.uniform(-1.0, 1.0, (n, n))
    hi = rng.uniform(-1.0, 1.0, (n, n))
    off = np.maximum(np.abs(lo), np.abs(hi))
    np.fill_diagonal(off, 0.0)
    row = off.sum(axis=1)
    for i in range(n):
        m = margin * row[i] + rng.uniform(0.1, 1.0)
        w = rng.uniform(0.0, 1.0)
        ends = np.array([m, m + w])
        rng.shuffle(ends)  # proper or improper diagonal
        sign = rng.choice([-1.0, 1.0])
        lo[i, i], hi[i, i] = sign * ends
    return IntervalMatrix(lo, hi)


def branch_margin(A, y):
    """Smallest distance to a kink or a max-branch switch of ``Phi`` at ``y``."""
    n = A.shape[0]
    xl, xh = -y[:n][None, :], y[n:][None, :]
    pos, neg = (lambda t: np.maximum(t, 0.0)), (lambda t: np.maximum(-t, 0.0))
    al, ah = A.lo, A.hi
    pairs = [
        (pos(al) * pos(xl), neg(ah) * neg(xh)),
        (pos(ah) * neg(xl), neg(al) * pos(xh)),
        (pos(ah) * pos(xh), neg(al) * neg(xl)),
        (pos(al) * neg(xh), neg(ah) * pos(xl)),
    ]
    gaps = [np.where((v1 == 0) & (v2 == 0), np.inf, np.abs(v1 - v2)) for v1, v2 in pairs]
    return min(float(np.min(np.abs(y))), *(float(np.min(g)) for g in gaps))


def differentiable_point(rng, n, margin=1e-5):
    while True:
        A = IntervalMatrix(rng.uniform(-2, 2, (n, n)), rng.uniform(-2, 2, (n, n)))
        y = rng.uniform(-2, 2, 2 * n)
        if branch_margin(A, y) > margin:
            return A, y


def central_differences(A, b, y, h=1e-7):
    cols = []
    for k in range(len(y)):
        e = np.zeros(len(y))
        e[k] = h
        cols.append((induced_phi(A, b, y + e) - induced_phi(A, b, y - e)) / (2 * h))
    return np.column_stack(cols)
