import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from kaucher.errors import ArithmeticOverflowError, ShapeError, SingularMatrixError
from kaucher.reallinalg import inverse, is_singular, lu_factor, lu_solve, spectral_radius


def conditioned(rng, n, cond=1e3):
    # U diag(s) V^T with singular values spread over [1/cond, 1]
    U, _ = np.linalg.qr(rng.standard_normal((n, n)))
    V, _ = np.linalg.qr(rng.standard_normal((n, n)))
    s = np.geomspace(1.0, 1.0 / cond, n)
    return U @ np.diag(s) @ V.T


class TestLU:
    def test_identity_and_diagonal(self):
        assert_array_equal(lu_solve(np.eye(3), [1.0, 2.0, 3.0]), [1, 2, 3])
        assert_array_equal(lu_solve([[2.0, 0.0], [0.0, 4.0]], [2.0, 8.0]), [1, 2])

    def test_reconstruction(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((6, 6))
        f = lu_factor(A)
        L = np.tril(f.lu, -1) + np.eye(6)
        U = np.triu(f.lu)
        assert np.max(np.abs(A[f.perm] - L @ U)) <= 1e-10 * np.max(np.abs(A))

    @given(st.integers(0, 2**32 - 1), st.integers(1, 12))
    def test_solve_residual(self, seed, n):
        rng = np.random.default_rng(seed)
        A = conditioned(rng, n, 1e6)
        b = rng.standard_normal(n)
        x = lu_solve(A, b)
        assert np.max(np.abs(A @ x - b)) <= 1e-10 * max(np.max(np.abs(b)), 1.0)

    def test_inverse(self):
        assert_array_equal(inverse(np.eye(3)), np.eye(3))
        assert_array_equal(inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))
        rng = np.random.default_rng(5)
        A = conditioned(rng, 8)
        assert_allclose(A @ inverse(A), np.eye(8), atol=1e-9)

    def test_singular(self):
        S = np.array([[1.0, 2.0], [2.0, 4.0]])
        assert is_singular(S)
        assert lu_factor(S).singular
        with pytest.raises(SingularMatrixError):
            lu_solve(S, [1.0, 1.0])
        with pytest.raises(SingularMatrixError):
            inverse(np.zeros((2, 2)))

    def test_pivot_ratio_is_row_relative(self):
        # a badly scaled but regular matrix must not be flagged
        A = np.diag([1e-8, 1e8])
        assert not is_singular(A)
        assert not is_singular(np.array([[1.0, 1.0], [1.0, 1.0 + 1e-10]]))
        assert is_singular(np.array([[1.0, 1.0], [1.0, 1.0 + 1e-14]]))

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            lu_factor(np.ones((2, 3)))
        with pytest.raises(ShapeError):
            lu_solve(np.eye(2), [1.0, 2.0, 3.0])


class TestSpectralRadius:
    def test_examples(self):
        r = spectral_radius(np.diag([0.5, 0.25]))
        assert r.converged and r.rho == pytest.approx(0.5, abs=1e-12)
        r = spectral_radius(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert r.converged and r.rho == 0.0
        assert spectral_radius(np.zeros((3, 3))).rho == 0.0

    def test_periodic_matrix(self):
        # period-two matrix: power ratios oscillate, the shifted matrix settles
        P = np.array([[0.0, 2.0], [0.5, 0.0]])
        r = spectral_radius(P)
        assert r.rho == pytest.approx(1.0, abs=1e-9)

    def test_defective_matrix_is_flagged(self):
        # Jordan block: ratios creep towards 0.5 too slowly to certify
        r = spectral_radius(np.array([[0.5, 0.0], [0.25, 0.5]]), max_iter=2000)
        assert not r.converged
        assert r.rho >= 0.5

    @given(st.integers(0, 2**32 - 1), st.integers(1, 4))
    def test_matches_eigenvalues(self, seed, n):
        rng = np.random.default_rng(seed)
        M = rng.uniform(0.0, 1.0, (n, n))
        expected = np.max(np.abs(np.linalg.eigvals(M)))
        r = spectral_radius(M)
        assert r.converged
        assert abs(r.rho - expected) <= 1e-8 * max(1.0, expected)

    @given(st.integers(0, 2**32 - 1))
    def test_monotone(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.uniform(0.0, 1.0, (4, 4))
        N = M + rng.uniform(0.0, 0.5, (4, 4))
        assert spectral_radius(M).rho <= spectral_radius(N).rho + 1e-9

    def test_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            spectral_radius(np.array([[1.0, -1.0], [0.0, 1.0]]))

    def test_overflow(self):
        with pytest.raises(ArithmeticOverflowError):
            spectral_radius(np.full((2, 2), 1e308))
