import numpy as np
import pytest
import scipy.sparse as sp

from eigenprior.errors import ContractViolation
from eigenprior.linalg import (
    dense_svd, fix_signs, smallest_svd, spmv, spmv_transpose, truncated_svd,
)


class TestDenseSvd:
    def test_diagonal(self):
        f = dense_svd(np.diag([3.0, 2.0, 1.0]))
        assert np.allclose(f.S, [3, 2, 1])
        assert np.allclose(np.abs(f.U), np.eye(3))
        assert np.allclose(np.abs(f.V), np.eye(3))

    def test_zero_matrix(self):
        f = dense_svd(np.zeros((3, 4)))
        assert np.allclose(f.S, 0)

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((20, 30))
        f = dense_svd(A)
        assert np.max(np.abs(f.U @ np.diag(f.S) @ f.V.T - A)) <= 1e-10 * np.max(np.abs(A))
        assert np.allclose(f.U.T @ f.U, np.eye(f.rank), atol=1e-8)
        assert np.allclose(f.V.T @ f.V, np.eye(f.rank), atol=1e-8)
        assert np.all(np.diff(f.S) <= 0)

    def test_transpose_same_spectrum(self):
        rng = np.random.default_rng(1)
        A = rng.standard_normal((7, 11))
        assert np.allclose(dense_svd(A).S, dense_svd(A.T).S, atol=1e-10)

    def test_nonfinite_rejected(self):
        with pytest.raises(ContractViolation):
            dense_svd(np.array([[1.0, np.nan]]))

    def test_sign_convention(self):
        rng = np.random.default_rng(2)
        A = rng.standard_normal((6, 6))
        f = dense_svd(A)
        for j in range(f.rank):
            col = f.U[:, j]
            assert col[np.argmax(np.abs(col))] > 0


class TestSmallestSvd:
    def test_diagonal(self):
        f = smallest_svd(np.diag([3.0, 2.0, 1.0]), 2)
        assert np.allclose(f.S, [1, 2])
        assert f.ascending

    def test_full_rank_same_triplets(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((5, 5))
        assert np.allclose(sorted(smallest_svd(A, 5).S), sorted(dense_svd(A).S))

    def test_matches_tail_of_dense(self):
        rng = np.random.default_rng(4)
        A = rng.standard_normal((10, 8))
        small = smallest_svd(A, 3)
        full = dense_svd(A)
        assert np.allclose(small.S, full.S[-3:][::-1])
        recon_err = np.abs(A @ small.V - small.U * small.S).max()
        assert recon_err < 1e-10


class TestSpmv:
    def test_identity(self):
        A = sp.eye(4, format="csr")
        x = np.arange(4.0)
        assert np.array_equal(spmv(A, x), x)

    def test_zero_row(self):
        A = sp.csr_matrix(np.array([[1.0, 2.0], [0.0, 0.0]]))
        assert spmv(A, np.ones(2))[1] == 0.0

    def test_against_dense(self):
        rng = np.random.default_rng(5)
        D = rng.standard_normal((5, 4))
        A = sp.csr_matrix(D)
        x = rng.standard_normal(4)
        y = rng.standard_normal(5)
        assert np.allclose(spmv(A, x), D @ x)
        assert np.allclose(spmv_transpose(A, y), D.T @ y)

    def test_mismatch(self):
        with pytest.raises(ContractViolation):
            spmv(sp.eye(3, format="csr"), np.ones(4))


class TestTruncatedSvd:
    def test_sparse_diagonal(self):
        A = sp.diags([5.0, 4.0, 3.0, 2.0, 1.0]).tocsr()
        f = truncated_svd(A, 2, seed=0)
        assert np.allclose(f.S, [5, 4], atol=1e-9)

    def test_matches_dense_oracle(self):
        A = sp.random(200, 300, density=0.05, format="csr",
                      random_state=np.random.RandomState(0))
        f = truncated_svd(A, 10, oversample=10, power_iters=3, seed=42)
        exact = dense_svd(A.toarray()).S[:10]
        assert np.max(np.abs(f.S - exact) / exact) <= 1e-6

    def test_deterministic(self):
        A = sp.random(50, 60, density=0.1, format="csr",
                      random_state=np.random.RandomState(1))
        f1 = truncated_svd(A, 5, seed=7)
        f2 = truncated_svd(A, 5, seed=7)
        assert np.max(np.abs(f1.S - f2.S)) <= 1e-12
        assert np.array_equal(f1.U, f2.U)

    def test_full_rank_reproduces_dense(self):
        A = sp.random(20, 30, density=0.3, format="csr",
                      random_state=np.random.RandomState(2))
        f = truncated_svd(A, 20, oversample=0, seed=0)
        exact = dense_svd(A.toarray()).S
        nonzero = exact > 1e-12
        assert np.allclose(f.S[nonzero], exact[nonzero], rtol=1e-6)

    def test_m_too_large(self):
        with pytest.raises(ContractViolation):
            truncated_svd(sp.eye(3, format="csr"), 4)


class TestSvdTraceDominance:
    """The rank-m factors maximize sum_i u_i^T A v_i over orthonormal sets."""

    def test_top_factors_dominate(self):
        rng = np.random.default_rng(6)
        A = rng.standard_normal((9, 12))
        m = 3
        f = dense_svd(A)
        top = sum(f.U[:, j] @ A @ f.V[:, j] for j in range(m))
        assert abs(top - f.S[:m].sum()) <= 1e-9
        for _ in range(1000):
            U, _ = np.linalg.qr(rng.standard_normal((9, m)))
            V, _ = np.linalg.qr(rng.standard_normal((12, m)))
            obj = np.trace(U.T @ A @ V)
            assert obj <= f.S[:m].sum() + 1e-9


def test_fix_signs_consistent():
    rng = np.random.default_rng(8)
    U = rng.standard_normal((5, 3))
    V = rng.standard_normal((4, 3))
    U2, V2 = fix_signs(-U, -V)
    U1, V1 = fix_signs(U, V)
    assert np.array_equal(U1, U2)
    assert np.array_equal(V1, V2)
