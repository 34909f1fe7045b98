"""From co-occurrence statistics to embeddings, plus theory checkers.

The production path scales the counts as g(unit + alpha*prior) /
(sqrt(g(d1)) * sqrt(g(d2))) with g either the identity or an
element-wise square root (variance stabilization), factors the result
with the truncated SVD, and projects the left factor by D1^{-1/2}.
The data is never centered on this path.

The dense reference route and the numerical identity checkers exist to
machine-verify the Laplacian-CCA theory on desk-scale instances; those
center the data where the proofs require it.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .accumulate import CooccurrenceStats
from .errors import ContractViolation, DataError
from .linalg import SvdFactors, dense_svd, smallest_svd, stats_matrix_to_csr, truncated_svd

log = logging.getLogger(__name__)


@dataclass
class EmbeddingSet:
    """Per-word real vectors plus the settings that produced them."""

    words: list[str]
    vectors: np.ndarray  # len(words) x m
    meta: dict = field(default_factory=dict)
    id_of: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.id_of = {w: i for i, w in enumerate(self.words)}

    def __len__(self) -> int:
        return len(self.words)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __contains__(self, word: str) -> bool:
        return word in self.id_of

    def vector(self, word: str) -> np.ndarray:
        return self.vectors[self.id_of[word]]


def _transform(values: np.ndarray, sqrt_transform: bool) -> np.ndarray:
    return np.sqrt(values) if sqrt_transform else values.astype(float)


def scale(stats: CooccurrenceStats, alpha: float, sqrt_transform: bool = True):
    """Build the whitened sparse matrix to be factored.

    Entry (r, s) is g(unit + alpha*prior) / (sqrt(g(d1[r])) *
    sqrt(g(d2[s]))) with g the optional element-wise square root.
    Cells whose d1 or d2 count is zero are dropped.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ContractViolation("alpha must lie in [0, 1]")
    d1 = _transform(stats.d1.astype(float), sqrt_transform)
    d2 = _transform(stats.d2.astype(float), sqrt_transform)
    with np.errstate(divide="ignore"):
        inv_sqrt_d1 = np.where(d1 > 0, 1.0 / np.sqrt(d1), 0.0)
        inv_sqrt_d2 = np.where(d2 > 0, 1.0 / np.sqrt(d2), 0.0)

    def cells():
        for (r, s), (unit, prior) in stats.entries.items():
            weight = inv_sqrt_d1[r] * inv_sqrt_d2[s]
            if weight == 0.0:
                continue
            count = unit + alpha * prior
            if sqrt_transform:
                count = np.sqrt(count)
            yield r, s, count * weight

    return stats_matrix_to_csr(stats.n_vocab, 2 * stats.k * stats.n_vocab, cells())


def embed(stats: CooccurrenceStats, alpha: float, m: int, *,
          sqrt_transform: bool = True, oversample: int = 10,
          power_iters: int = 3, seed: int = 0, d1_projection: bool = True,
          words: list[str] | None = None, extra_meta: dict | None = None,
          return_context: bool = False):
    """Embeddings from statistics: scale, factor, project.

    Word vectors are the rows of D1^{-1/2} U (or raw U when
    ``d1_projection`` is off); context vectors, when requested, are
    D2^{-1/2} V.  Words with zero d1 count get zero vectors.
    """
    if m > stats.n_vocab:
        raise ContractViolation(f"m={m} exceeds vocabulary size {stats.n_vocab}")
    A = scale(stats, alpha, sqrt_transform)
    factors = truncated_svd(A, m, oversample=oversample,
                            power_iters=power_iters, seed=seed)
    d1 = _transform(stats.d1.astype(float), sqrt_transform)
    if np.any(stats.d1 == 0):
        log.warning("%d words have zero counts; their vectors are zero",
                    int(np.sum(stats.d1 == 0)))
    if d1_projection:
        proj = np.where(d1 > 0, 1.0 / np.sqrt(np.where(d1 > 0, d1, 1.0)), 0.0)
        vectors = factors.U * proj[:, None]
    else:
        vectors = factors.U
    if words is None:
        words = [str(i) for i in range(stats.n_vocab)]
    meta = {
        "m": m, "alpha": alpha, "k": stats.k, "sqrt_transform": sqrt_transform,
        "seed": seed, "oversample": oversample, "power_iters": power_iters,
        "d1_projection": d1_projection, "n_examples": stats.n_examples,
    }
    if extra_meta:
        meta.update(extra_meta)
    emb = EmbeddingSet(words, vectors, meta)
    if not return_context:
        return emb
    d2 = _transform(stats.d2.astype(float), sqrt_transform)
    proj2 = np.where(d2 > 0, 1.0 / np.sqrt(np.where(d2 > 0, d2, 1.0)), 0.0)
    ctx_words = [f"{w}@{p}" for p in range(2 * stats.k) for w in words]
    ctx = EmbeddingSet(ctx_words, factors.V * proj2[:, None], dict(meta))
    return emb, ctx


# ---------------------------------------------------------------------------
# Dense reference route and identity checkers


def uniform_laplacian(n: int) -> np.ndarray:
    """The complete-graph Laplacian: n-1 on the diagonal, -1 elsewhere."""
    return n * np.eye(n) - np.ones((n, n))


def is_strict_laplacian(L: np.ndarray, tol: float = 1e-9) -> bool:
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        return False
    if not np.allclose(L, L.T, atol=1e-12 * max(1.0, np.abs(L).max())):
        return False
    if np.max(np.abs(L.sum(axis=1))) > tol * max(1.0, np.abs(L).max()):
        return False
    off = L - np.diag(np.diag(L))
    return bool(np.all(off <= tol))


def laplacian_cca_reference(X: np.ndarray, Y: np.ndarray, L: np.ndarray,
                            m: int, mode: str = "maximize") -> SvdFactors:
    """Dense factorization of X.T @ L @ Y for theory verification."""
    X, Y, L = (np.asarray(a, dtype=float) for a in (X, Y, L))
    if X.shape[0] != Y.shape[0] or L.shape != (X.shape[0], X.shape[0]):
        raise ContractViolation("dimension mismatch between views and L")
    core = X.T @ L @ Y
    if mode == "maximize":
        full = dense_svd(core)
        return SvdFactors(full.U[:, :m], full.S[:m], full.V[:, :m])
    if mode == "minimize":
        return smallest_svd(core, m)
    raise ContractViolation(f"unknown mode {mode!r}")


def center_columns(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    return A - A.mean(axis=0, keepdims=True)


def check_complete_graph_identity(X: np.ndarray, Y: np.ndarray) -> float:
    """Max deviation of X.T @ L_complete @ Y from n * X.T @ Y.

    Both views are column-centered first; both sides are computed
    directly from their definitions.
    """
    X = center_columns(X)
    Y = center_columns(Y)
    n = X.shape[0]
    L = uniform_laplacian(n)
    return float(np.max(np.abs(X.T @ L @ Y - n * (X.T @ Y)))) if X.size and Y.size else 0.0


def _pairwise_sq_dist(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Squared projection distances: (d_ij)^2 = 0.5 * ||P_i - Q_j||^2."""
    p2 = np.sum(P * P, axis=1)
    q2 = np.sum(Q * Q, axis=1)
    return 0.5 * (p2[:, None] + q2[None, :] - 2.0 * (P @ Q.T))


def check_distance_sum_identity(X: np.ndarray, Y: np.ndarray, L: np.ndarray,
                 U: np.ndarray, V: np.ndarray) -> tuple[float, float]:
    """Both sides of the Laplacian distance-sum identity.

    lhs = sum_k (X u_k)^T L (Y v_k); rhs = sum_ij -L_ij * (d_ij)^2
    where d_ij is the projection distance between view one of example i
    and view two of example j.  Requires a strict Laplacian.
    """
    if not is_strict_laplacian(L):
        raise ContractViolation("L is not a strict Laplacian (row sums must be 0)")
    P = X @ U
    Q = Y @ V
    lhs = float(np.sum(P * (L @ Q)))
    rhs = float(np.sum(-L * _pairwise_sq_dist(P, Q)))
    return lhs, rhs


def distance_spread_objective(X: np.ndarray, Y: np.ndarray,
                    U: np.ndarray, V: np.ndarray) -> float:
    """Distance-spread objective: sum_ij (d_ij)^2 - n * sum_i (d_ii)^2."""
    P = X @ U
    Q = Y @ V
    D2 = _pairwise_sq_dist(P, Q)
    n = X.shape[0]
    return float(D2.sum() - n * np.trace(D2))


def cca_correlation_check(X: np.ndarray, Y: np.ndarray,
                          a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation of the two projected views along (a, b)."""
    x = np.asarray(X, dtype=float) @ np.asarray(a, dtype=float)
    y = np.asarray(Y, dtype=float) @ np.asarray(b, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    nx = np.linalg.norm(xc)
    ny = np.linalg.norm(yc)
    if nx == 0.0 or ny == 0.0:
        raise DataError("degenerate projection")
    return float(np.clip(xc @ yc / (nx * ny), -1.0, 1.0))


# ---------------------------------------------------------------------------
# Embedding I/O (word2vec text format + JSON meta sidecar)


def save_embeddings(emb: EmbeddingSet, path: str, meta_path: str | None = None) -> None:
    """Write word2vec text format at 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(emb.words)} {emb.dim}\n")
        for word, row in zip(emb.words, emb.vectors):
            fh.write(word + " " + " ".join(f"{v:.17g}" for v in row) + "\n")
    if meta_path:
        with open(meta_path, "w", encoding="utf-8") as fh:
            json.dump(emb.meta, fh, indent=2, sort_keys=True)
            fh.write("\n")


def load_embeddings(path: str, meta_path: str | None = None) -> EmbeddingSet:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DataError(f"{path}: bad word2vec header")
        n_words, dim = int(header[0]), int(header[1])
        words = []
        vectors = np.empty((n_words, dim))
        for i in range(n_words):
            parts = fh.readline().rstrip("\n").split(" ")
            if len(parts) != dim + 1:
                raise DataError(f"{path}: row {i + 2} has wrong arity")
            words.append(parts[0])
            vectors[i] = [float(v) for v in parts[1:]]
    meta = {}
    if meta_path:
        with open(meta_path, encoding="utf-8") as fh:
            meta = json.load(fh)
    return EmbeddingSet(words, vectors, meta)
