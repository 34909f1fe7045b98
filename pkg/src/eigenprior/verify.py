"""Machine verification of the algebraic identities behind the method.

Each check generates random instances from an explicit seed, evaluates
both sides of an identity (or an oracle next to the production path)
and reports the worst deviation.  The CLI `verify` command runs the
whole battery and fails loudly on any violation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import accumulate, cca_core, linalg
from .prior_graph import PriorGraph


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_orthonormal(rng, n: int, m: int) -> np.ndarray:
    q, _ = np.linalg.qr(rng.standard_normal((n, m)))
    return q[:, :m]


def _random_strict_laplacian(rng, n: int) -> np.ndarray:
    adj = rng.random((n, n)) < 0.4
    adj = np.triu(adj, 1)
    A = (adj | adj.T).astype(float)
    return np.diag(A.sum(axis=1)) - A


def _random_graph(rng, n: int, density: float) -> PriorGraph:
    g = PriorGraph(n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                g.add_edge(i, j)
    return g


def check_complete_graph_battery(seed: int = 0, instances: int = 100) -> CheckResult:
    """X^T L Y == n X^T Y for the complete-graph Laplacian, centered data."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    ok = True
    for _ in range(instances):
        n = int(rng.integers(2, 21))
        d = int(rng.integers(1, 9))
        dp = int(rng.integers(1, 9))
        X = cca_core.center_columns(rng.uniform(-1, 1, (n, d)))
        Y = cca_core.center_columns(rng.uniform(-1, 1, (n, dp)))
        dev = cca_core.check_complete_graph_identity(X, Y)
        bound = 1e-9 * n * max(1.0, float(np.max(np.abs(X.T @ Y))))
        worst = max(worst, dev)
        ok = ok and dev <= bound
    return CheckResult("complete-graph Laplacian identity", ok,
                       f"max deviation {worst:.3e} over {instances} instances")


def check_distance_sum_battery(seed: int = 0, instances: int = 100) -> CheckResult:
    """Laplacian quadratic form equals the weighted distance sum."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    ok = True
    for _ in range(instances):
        n = int(rng.integers(2, 11))
        d = int(rng.integers(1, 7))
        dp = int(rng.integers(1, 7))
        m = int(rng.integers(1, min(4, d, dp) + 1))
        L = _random_strict_laplacian(rng, n)
        X = rng.standard_normal((n, d))
        Y = rng.standard_normal((n, dp))
        U = _random_orthonormal(rng, d, m)
        V = _random_orthonormal(rng, dp, m)
        lhs, rhs = cca_core.check_distance_sum_identity(X, Y, L, U, V)
        dev = abs(lhs - rhs)
        worst = max(worst, dev / (1.0 + abs(lhs)))
        ok = ok and dev <= 1e-9 * (1.0 + abs(lhs))
    return CheckResult("Laplacian distance-sum identity", ok,
                       f"max relative deviation {worst:.3e} over {instances} instances")


def check_svd_dominance(seed: int = 0, instances: int = 20,
                        candidates: int = 1000) -> CheckResult:
    """Reference projections dominate random candidates on the
    distance-spread objective, which equals n * sum of top singular
    values of X^T Y on centered data."""
    rng = np.random.default_rng(seed)
    ok = True
    details = []
    for _ in range(instances):
        n = int(rng.integers(2, 16))
        d = int(rng.integers(1, 7))
        dp = int(rng.integers(1, 7))
        m = int(rng.integers(1, min(3, d, dp) + 1))
        X = cca_core.center_columns(rng.standard_normal((n, d)))
        Y = cca_core.center_columns(rng.standard_normal((n, dp)))
        ref = cca_core.laplacian_cca_reference(X, Y, cca_core.uniform_laplacian(n), m)
        best = cca_core.distance_spread_objective(X, Y, ref.U, ref.V)
        expected = n * float(np.sum(np.linalg.svd(X.T @ Y, compute_uv=False)[:m]))
        if abs(best - expected) > 1e-8 * max(1.0, abs(expected)):
            ok = False
            details.append(f"objective {best:.6g} != n*sum(sigma) {expected:.6g}")
        for _ in range(candidates):
            U = _random_orthonormal(rng, d, m)
            V = _random_orthonormal(rng, dp, m)
            if cca_core.distance_spread_objective(X, Y, U, V) > best + 1e-9:
                ok = False
                details.append("random candidate beat the reference projections")
                break
    detail = "; ".join(details) if details else (
        f"{instances} instances x {candidates} candidates dominated")
    return CheckResult("projection optimality", ok, detail)


def check_accumulation_oracle(seed: int = 0, instances: int = 50) -> CheckResult:
    """Streaming accumulation agrees exactly with the brute-force oracle."""
    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(instances):
        n_vocab = int(rng.integers(5, 31))
        n_tokens = int(rng.integers(20, 501))
        k = int(rng.choice([1, 2]))
        locality = int(rng.choice([0, 3, 12]))
        chunk_len = int(rng.choice([5, 13]))
        density = float(rng.uniform(0, 0.3))
        tokens = rng.integers(0, n_vocab, n_tokens).tolist()
        graph = _random_graph(rng, n_vocab, density)
        pipeline = accumulate.accumulate_corpus(
            tokens, n_vocab, k, locality, chunk_len, graph)
        oracle = accumulate.oracle_accumulate(
            tokens, n_vocab, k, locality, chunk_len, graph)
        if pipeline != oracle:
            ok = False
            break
    return CheckResult("accumulation vs brute-force oracle", ok,
                       f"{instances} random corpora, exact integer equality"
                       if ok else "pipeline/oracle mismatch")


def check_svd_oracle(seed: int = 0, instances: int = 20) -> CheckResult:
    """Randomized truncated SVD matches the dense oracle to 1e-6."""
    worst = 0.0
    for trial in range(instances):
        A = sp.random(200, 300, density=0.05, format="csr",
                      random_state=np.random.RandomState(seed + trial))
        approx = linalg.truncated_svd(A, 10, oversample=10, power_iters=3,
                                      seed=seed + trial)
        exact = linalg.dense_svd(A.toarray())
        rel = np.max(np.abs(approx.S - exact.S[:10]) / exact.S[:10])
        worst = max(worst, float(rel))
    return CheckResult("randomized SVD vs dense oracle", worst <= 1e-6,
                       f"max relative singular-value error {worst:.3e}")


ALL_CHECKS = [
    check_complete_graph_battery,
    check_distance_sum_battery,
    check_svd_dominance,
    check_accumulation_oracle,
    check_svd_oracle,
]


def run_all(seed: int = 0) -> list[CheckResult]:
    return [check(seed=seed) for check in ALL_CHECKS]
