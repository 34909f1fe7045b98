"""Embedding evaluation: word similarity, analogies, graph-only baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .cca_core import EmbeddingSet
from .errors import ContractViolation, DataError
from .linalg import truncated_svd
from .prior_graph import PriorGraph


@dataclass
class SimilarityDataset:
    pairs: list[tuple[str, str, float]]

    def __post_init__(self):
        if len(self.pairs) < 2:
            raise DataError("similarity dataset needs at least 2 pairs")
        if not all(np.isfinite(s) for _, _, s in self.pairs):
            raise DataError("non-finite human score in similarity dataset")


@dataclass
class AnalogyDataset:
    quadruples: list[tuple[str, str, str, str]]
    n_sections: int = 0

    def __post_init__(self):
        for q in self.quadruples:
            if not all(q):
                raise DataError("empty word in analogy quadruple")


def load_similarity_dataset(path: str) -> SimilarityDataset:
    """Read ``word1<TAB>word2<TAB>score`` lines."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DataError(f"{path}:{lineno}: expected 'w1<TAB>w2<TAB>score'")
            try:
                pairs.append((parts[0], parts[1], float(parts[2])))
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad score {parts[2]!r}") from None
    return SimilarityDataset(pairs)


def load_analogy_dataset(path: str) -> AnalogyDataset:
    """Read whitespace-separated ``a b c d`` lines; ``:`` lines are headers."""
    quads = []
    sections = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(":"):
                sections += 1
                continue
            parts = line.split()
            if len(parts) != 4:
                raise DataError(f"{path}:{lineno}: expected 4 words")
            quads.append(tuple(parts))
    return AnalogyDataset(quads, sections)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity, defined as 0 when either vector is zero."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ContractViolation(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.clip(u @ v / (nu * nv), -1.0, 1.0))


def spearman(xs, ys) -> float:
    """Spearman rank correlation with average ranks for ties."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ContractViolation("inputs must be 1-D of equal length")
    if len(xs) < 2:
        raise ContractViolation("need at least 2 observations")
    rx = rankdata(xs)
    ry = rankdata(ys)
    if np.all(rx == rx[0]) or np.all(ry == ry[0]):
        raise DataError("undefined correlation (constant input)")
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    return float(rx @ ry / (np.linalg.norm(rx) * np.linalg.norm(ry)))


def eval_similarity(emb: EmbeddingSet,
                    dataset: SimilarityDataset) -> tuple[float, int, int]:
    """Spearman rho over pairs with both words in-vocabulary."""
    model_scores = []
    human_scores = []
    for w1, w2, score in dataset.pairs:
        if w1 in emb and w2 in emb:
            model_scores.append(cosine(emb.vector(w1), emb.vector(w2)))
            human_scores.append(score)
    total = len(dataset.pairs)
    if len(model_scores) < 2:
        raise DataError("insufficient coverage")
    return spearman(model_scores, human_scores), len(model_scores), total


def solve_analogy(emb: EmbeddingSet, a: str, b: str, c: str) -> str:
    """Vector-offset analogy: nearest word to v_b - v_a + v_c.

    The three query words are excluded; cosine ties break toward the
    lower identifier.
    """
    for w in (a, b, c):
        if w not in emb:
            raise DataError(f"query word {w!r} not in vocabulary")
    target = emb.vector(b) - emb.vector(a) + emb.vector(c)
    tnorm = np.linalg.norm(target)
    norms = np.linalg.norm(emb.vectors, axis=1)
    denom = norms * (tnorm if tnorm > 0 else 1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        sims = np.where(denom > 0, emb.vectors @ target / np.where(denom > 0, denom, 1.0), 0.0)
    if tnorm == 0.0:
        sims = np.zeros(len(emb.words))
    for w in (a, b, c):
        sims[emb.id_of[w]] = -np.inf
    return emb.words[int(np.argmax(sims))]  # argmax takes first on ties


def eval_analogy(emb: EmbeddingSet,
                 dataset: AnalogyDataset) -> tuple[float, int, int]:
    """Accuracy of vector-offset analogy over covered quadruples."""
    correct = 0
    covered = 0
    for a, b, c, d in dataset.quadruples:
        if not all(w in emb for w in (a, b, c, d)):
            continue
        covered += 1
        if solve_analogy(emb, a, b, c) == d:
            correct += 1
    if covered == 0:
        raise DataError("no covered quadruples")
    return correct / covered, covered, len(dataset.quadruples)


def graph_only_embed(graph: PriorGraph, words: list[str], m: int,
                     oversample: int = 10, power_iters: int = 3,
                     seed: int = 0) -> EmbeddingSet:
    """Embeddings from the similarity graph alone: U * sqrt(S) of the
    0/1 adjacency matrix.  Control baseline with no corpus statistics."""
    if graph.is_empty:
        raise DataError("no edges")
    if m > graph.n:
        raise ContractViolation(f"m={m} exceeds vocabulary size {graph.n}")
    from .linalg import stats_matrix_to_csr

    def cells():
        for i, nbrs in enumerate(graph.adjacency):
            for j in sorted(nbrs):
                yield i, j, 1.0

    A = stats_matrix_to_csr(graph.n, graph.n, cells())
    factors = truncated_svd(A, m, oversample=oversample,
                            power_iters=power_iters, seed=seed)
    vectors = factors.U * np.sqrt(factors.S)[None, :]
    meta = {"m": m, "source": "graph-only", "seed": seed,
            "edge_count": graph.edge_count}
    return EmbeddingSet(list(words), vectors, meta)
