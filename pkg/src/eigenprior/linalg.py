"""Singular value decomposition kernels.

Two routes are provided: an exact dense factorization used as the test
oracle and for small theory-verification problems, and a seeded
randomized block-Krylov factorization for sparse production-scale
matrices.  The randomized route treats ``power_iters`` as a minimum
Krylov depth and keeps expanding the subspace until the top singular
values stop moving, so accuracy does not depend on a spectral gap.

All randomness flows from one explicit integer seed; no global RNG
state is touched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ContractViolation

DENSE_GUARD = 4_000_000  # max d*d' for the dense solver


@dataclass
class SvdFactors:
    """Truncated factorization A ~ U @ diag(S) @ V.T.

    ``S`` is non-negative and non-increasing, except when ``ascending``
    is set (smallest-triplet variant), where it is non-decreasing.
    """

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray
    ascending: bool = False

    @property
    def rank(self) -> int:
        return len(self.S)


def fix_signs(U: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Flip column pairs so each U column's largest-|.| entry is positive."""
    U = U.copy()
    V = V.copy()
    for j in range(U.shape[1]):
        col = U[:, j]
        if col[np.argmax(np.abs(col))] < 0:
            U[:, j] = -col
            V[:, j] = -V[:, j]
    return U, V


def _check_dense(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ContractViolation("expected a 2-D matrix")
    if A.size > DENSE_GUARD:
        raise ContractViolation(f"dense solver limited to {DENSE_GUARD} entries")
    if not np.all(np.isfinite(A)):
        raise ContractViolation("non-finite entries in input matrix")
    return A


def dense_svd(A: np.ndarray) -> SvdFactors:
    """Exact full thin SVD of a small dense matrix."""
    A = _check_dense(A)
    U, S, Vt = np.linalg.svd(A, full_matrices=False)
    U, V = fix_signs(U, Vt.T)
    return SvdFactors(U, S, V)


def smallest_svd(A: np.ndarray, m: int) -> SvdFactors:
    """The m triplets with smallest singular values, S non-decreasing."""
    full = dense_svd(A)
    if m > full.rank:
        raise ContractViolation(f"m={m} exceeds rank bound {full.rank}")
    idx = slice(full.rank - m, full.rank)
    return SvdFactors(full.U[:, idx][:, ::-1], full.S[idx][::-1],
                      full.V[:, idx][:, ::-1], ascending=True)


def spmv(A, x: np.ndarray) -> np.ndarray:
    """Sparse matrix-vector product A @ x."""
    if A.shape[1] != x.shape[0]:
        raise ContractViolation(f"shape mismatch: {A.shape} @ {x.shape}")
    return A @ x


def spmv_transpose(A, x: np.ndarray) -> np.ndarray:
    """Sparse matrix-vector product A.T @ x."""
    if A.shape[0] != x.shape[0]:
        raise ContractViolation(f"shape mismatch: {A.shape}.T @ {x.shape}")
    return A.T @ x


def truncated_svd(A, m: int, oversample: int = 10, power_iters: int = 3,
                  seed: int = 0, tol: float = 1e-10,
                  max_blocks: int = 200) -> SvdFactors:
    """Seeded randomized block-Krylov truncated SVD of a sparse matrix.

    A Gaussian test block of ``m + oversample`` columns seeds the Krylov
    subspace [A G, (A A^T) A G, ...]; each block is orthonormalized
    before the next multiply.  At least ``power_iters`` expansion steps
    are taken, after which expansion stops once the top-m singular
    values change by less than ``tol`` relative, or the subspace spans
    the smaller dimension (then the result is exact).
    """
    d, dp = A.shape
    if m > min(d, dp):
        raise ContractViolation(f"m={m} exceeds min dimension {min(d, dp)}")
    if oversample < 0:
        raise ContractViolation("oversample must be >= 0")
    rng = np.random.default_rng(seed)
    block = min(m + max(oversample, 1), min(d, dp))
    G = rng.standard_normal((dp, block))
    Y, _ = np.linalg.qr(A @ G)
    blocks = [Y]
    prev = None
    iters = 0
    while True:
        Q, _ = np.linalg.qr(np.hstack(blocks))
        B = Q.T @ A
        B = np.asarray(B)
        S = np.linalg.svd(B, compute_uv=False)[:m]
        full_span = Q.shape[1] >= min(d, dp)
        converged = (iters >= power_iters and prev is not None
                     and np.max(np.abs(S - prev)) <= tol * max(S[0], 1e-300))
        if full_span or converged or len(blocks) >= max_blocks:
            Ub, S, Vt = np.linalg.svd(B, full_matrices=False)
            U, V = fix_signs(Q @ Ub[:, :m], Vt[:m].T)
            return SvdFactors(U, S[:m], V)
        prev = S
        Y, _ = np.linalg.qr(A @ (A.T @ blocks[-1]))
        blocks.append(Y)
        iters += 1


def stats_matrix_to_csr(rows: int, cols: int, entries) -> sp.csr_matrix:
    """Build a CSR matrix from an iterable of (r, c, value) triples."""
    r_idx, c_idx, vals = [], [], []
    for r, c, v in entries:
        r_idx.append(r)
        c_idx.append(c)
        vals.append(v)
    mat = sp.csr_matrix((vals, (r_idx, c_idx)), shape=(rows, cols), dtype=float)
    mat.sort_indices()
    return mat
