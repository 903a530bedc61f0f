# tests/test_jacobi.py

import numpy as np
import pytest

from services.spectral.jacobiEigen import (
    CHUNK,
    EigenSolverError,
    _offNorm,
    conditionNumber,
    eigenSymmetric,
)


def _randomSymmetric(rng, *shape):
    A = rng.standard_normal(shape)
    return 0.5 * (A + np.swapaxes(A, -1, -2))


class TestEigenSymmetric:
    """순환 Jacobi 고유값"""

    def test_small_matrices(self):
        np.testing.assert_allclose(eigenSymmetric([[2.0, 1.0], [1.0, 2.0]]), [3.0, 1.0], rtol=1e-14)
        J = np.ones((5, 5)) - np.eye(5)
        np.testing.assert_allclose(eigenSymmetric(J), [4.0, -1.0, -1.0, -1.0, -1.0], atol=1e-13)
        np.testing.assert_array_equal(eigenSymmetric(np.diag([1.0, 5.0, 3.0])), [5.0, 3.0, 1.0])

    @pytest.mark.parametrize("n", [2, 7, 16, 33])
    def test_matches_lapack(self, n):
        rng = np.random.default_rng(n)
        A = _randomSymmetric(rng, n, n)
        expected = np.sort(np.linalg.eigvalsh(A))[::-1]
        np.testing.assert_allclose(eigenSymmetric(A), expected, atol=1e-11 * np.linalg.norm(A))

    def test_batch(self):
        rng = np.random.default_rng(1)
        A = _randomSymmetric(rng, 5, 6, 6)
        eig = eigenSymmetric(A)
        assert eig.shape == (5, 6)
        for i in range(5):
            np.testing.assert_allclose(eig[i], eigenSymmetric(A[i]), atol=1e-12)
        assert np.all(np.diff(eig, axis=-1) <= 0)

    def test_workers_do_not_change_bits(self):
        rng = np.random.default_rng(2)
        A = _randomSymmetric(rng, CHUNK + 40, 4, 4)
        np.testing.assert_array_equal(eigenSymmetric(A, workers=1), eigenSymmetric(A, workers=3))

    def test_one_by_one(self):
        np.testing.assert_array_equal(eigenSymmetric([[4.5]]), [4.5])

    def test_input_not_modified(self):
        A = np.array([[1.0, 2.0], [2.0, 1.0]])
        before = A.copy()
        eigenSymmetric(A)
        np.testing.assert_array_equal(A, before)

    @pytest.mark.parametrize(
        "M",
        [
            [[1.0, 2.0], [0.0, 1.0]],
            [[1.0, 2.0, 3.0], [2.0, 1.0, 0.0]],
            [[1.0, np.nan], [np.nan, 1.0]],
        ],
    )
    def test_rejects_bad_input(self, M):
        with pytest.raises(EigenSolverError):
            eigenSymmetric(M)


class TestConditionNumber:
    def test_single_and_batch(self):
        assert conditionNumber([4.0, 2.0, 0.5]) == 8.0
        np.testing.assert_array_equal(conditionNumber([[4.0, 1.0], [9.0, 3.0]]), [4.0, 3.0])

    def test_rejects_nonpositive_smallest(self):
        with pytest.raises(EigenSolverError):
            conditionNumber([3.0, 1.0, 0.0])
        with pytest.raises(EigenSolverError):
            conditionNumber([2.0, -0.5])
        with pytest.raises(EigenSolverError):
            conditionNumber([[4.0, 1.0], [2.0, -1e-9]])


class TestNearDiagonal:
    """대각에 가까운 행렬 (스케일별)"""

    @pytest.mark.parametrize("scale", [1e-6, 1.0, 1e6])
    @pytest.mark.parametrize("offScale", [1e-15, 1e-9])
    def test_converges_at_every_scale(self, scale, offScale):
        n = 32
        rng = np.random.default_rng(8)
        E = _randomSymmetric(rng, n, n)
        np.fill_diagonal(E, 0.0)
        A = np.diag(np.linspace(0.01, 0.6, n)) * scale + offScale * scale * E
        expected = np.sort(np.linalg.eigvalsh(A))[::-1]
        np.testing.assert_allclose(eigenSymmetric(A), expected, rtol=0, atol=1e-12 * scale)

    def test_batch_of_near_diagonal(self):
        n = 32
        rng = np.random.default_rng(9)
        base = np.diag(np.linspace(0.01, 0.6, n))
        A = np.stack([base * s + 1e-15 * s * _randomSymmetric(rng, n, n) for s in (1e-6, 1.0, 1e6)])
        eig = eigenSymmetric(A)
        for i, s in enumerate((1e-6, 1.0, 1e6)):
            np.testing.assert_allclose(eig[i], np.linspace(0.6, 0.01, n) * s, rtol=1e-12)

    def test_off_norm_keeps_small_entries(self):
        n = 16
        A = np.diag(np.linspace(1.0, 2.0, n)) * 1e8
        A[~np.eye(n, dtype=bool)] = 1e-6
        np.testing.assert_allclose(_offNorm(A[None]), [1e-6 * np.sqrt(n * (n - 1))], rtol=1e-12)

    @pytest.mark.parametrize("tiny", [1e-200, 1e-310])
    def test_tiny_off_diagonal_is_finite(self, tiny):
        A = np.array(
            [
                [1.0, 0.5, tiny, 0.0],
                [0.5, 2.0, 0.0, tiny],
                [tiny, 0.0, 3.0, 0.25],
                [0.0, tiny, 0.25, 4.0],
            ]
        )
        with np.errstate(over="raise", divide="raise", invalid="raise"):
            eig = eigenSymmetric(A)
        assert np.all(np.isfinite(eig))
        np.testing.assert_allclose(eig, np.sort(np.linalg.eigvalsh(A))[::-1], atol=1e-13)


class TestInvariance:
    @pytest.mark.parametrize("n", [5, 12, 32])
    def test_trace_and_frobenius(self, n):
        A = _randomSymmetric(np.random.default_rng(20 + n), n, n)
        eig = eigenSymmetric(A)
        assert np.sum(eig) == pytest.approx(np.trace(A), abs=1e-11 * n)
        assert np.sum(eig**2) == pytest.approx(np.sum(A * A), rel=1e-11)

    def test_orthogonal_similarity(self):
        rng = np.random.default_rng(31)
        A = _randomSymmetric(rng, 12, 12)
        Q, _ = np.linalg.qr(rng.standard_normal((12, 12)))
        np.testing.assert_allclose(
            eigenSymmetric(Q @ A @ Q.T), eigenSymmetric(A), atol=1e-11 * np.linalg.norm(A)
        )
