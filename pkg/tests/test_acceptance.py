"""Acceptance suite: one test per release criterion, each printing a
pass/fail line with its measured figure and runtime."""

import os
import time

import numpy as np
import pytest

from eigenprior import verify
from eigenprior.accumulate import accumulate_corpus
from eigenprior.cca_core import embed
from eigenprior.corpus import build_vocab
from eigenprior.estimator import EigenwordEmbedder
from eigenprior.evaluate import cosine, eval_similarity, load_similarity_dataset
from eigenprior.prior_graph import empty_graph, graph_from_pairs

SEED = 20260823


def report(name, ok, detail, elapsed):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({elapsed:.2f}s)")
    assert ok, f"{name}: {detail}"


def test_criterion_1_complete_graph_identity():
    t0 = time.time()
    result = verify.check_complete_graph_battery(seed=SEED, instances=100)
    elapsed = time.time() - t0
    report("criterion 1 (complete-graph Laplacian identity)",
           result.passed and elapsed < 1.0, result.detail, elapsed)


def test_criterion_2_distance_sum_identity():
    t0 = time.time()
    result = verify.check_distance_sum_battery(seed=SEED, instances=100)
    elapsed = time.time() - t0
    report("criterion 2 (Laplacian distance-sum identity)",
           result.passed and elapsed < 1.0, result.detail, elapsed)


def test_criterion_3_projection_optimality():
    t0 = time.time()
    result = verify.check_svd_dominance(seed=SEED, instances=20, candidates=1000)
    elapsed = time.time() - t0
    report("criterion 3 (projection optimality and objective value)",
           result.passed and elapsed < 30.0, result.detail, elapsed)


def test_criterion_4_accumulation_oracle():
    t0 = time.time()
    result = verify.check_accumulation_oracle(seed=SEED, instances=50)
    elapsed = time.time() - t0
    report("criterion 4 (accumulation vs brute-force oracle)",
           result.passed and elapsed < 5.0, result.detail, elapsed)


def test_criterion_5_svd_oracle():
    t0 = time.time()
    result = verify.check_svd_oracle(seed=SEED, instances=20)
    elapsed = time.time() - t0
    report("criterion 5 (randomized SVD vs dense oracle)",
           result.passed and elapsed < 10.0, result.detail, elapsed)


def test_criterion_6_empty_graph_reduction():
    t0 = time.time()
    rng = np.random.default_rng(SEED)
    tokens = rng.integers(0, 25, 2000).tolist()
    stats = accumulate_corpus(tokens, 25, 2, 12, 13, empty_graph(25))
    base = embed(stats, 0.0, 6, seed=SEED)
    ok = True
    for alpha in (0.1, 0.5, 0.9, 1.0):
        other = embed(stats, alpha, 6, seed=SEED)
        ok = ok and np.array_equal(base.vectors, other.vectors)
    report("criterion 6 (empty graph reduces to plain eigenwords, bit-identical)",
           ok, "alpha in {0.1,0.5,0.9,1.0} vs 0.0", time.time() - t0)


def _group_corpus(rng, n_tokens):
    """Two pivot groups with interchangeable contexts, 40-word vocabulary.

    Emits 5-grams c c p c c where the pivot p and contexts c are drawn
    from the same group, so within-group pivots share their context
    distribution exactly and cross-group contexts are disjoint.  A third
    block of filler words with strong per-word structure absorbs the
    embedding dimensions beyond the two group directions; otherwise those
    dimensions fill with whitened sampling noise, which the spectral
    scaling weights as heavily as signal.
    """
    pivots = [[f"p{g}_{i}" for i in range(8)] for g in (0, 1)]
    contexts = [[f"c{g}_{i}" for i in range(8)] for g in (0, 1)]
    fillers = [f"f{i}" for i in range(8)]
    tokens = []
    while len(tokens) < n_tokens:
        if rng.random() < 0.1:
            tokens.extend([fillers[int(rng.integers(0, 8))]] * 5)
        else:
            g = int(rng.integers(0, 2))
            c = rng.choice(contexts[g], 4)
            tokens.extend([c[0], c[1], str(rng.choice(pivots[g])), c[2], c[3]])
    return tokens[:n_tokens], pivots


def test_criterion_7_semantic_smoke_and_prior_direction():
    t0 = time.time()
    rng = np.random.default_rng(SEED)
    tokens, pivots = _group_corpus(rng, 100_000)
    vocab = build_vocab(tokens, 40, oov="drop")
    stats = accumulate_corpus(vocab.map_tokens(tokens), len(vocab), 2, 12, 5,
                              empty_graph(len(vocab)))
    emb = embed(stats, 0.0, 10, seed=SEED, words=vocab.words)
    within, cross = [], []
    for g in (0, 1):
        group = pivots[g]
        other = pivots[1 - g]
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                within.append(cosine(emb.vector(group[i]), emb.vector(group[j])))
            for w in other:
                if g == 0:
                    cross.append(cosine(emb.vector(group[i]), emb.vector(w)))
    within = np.asarray(within)
    cross = np.asarray(cross)
    frac = (within[:, None] > cross[None, :]).mean()
    ok_groups = frac >= 0.95

    # prior injection: two synonyms in disjoint contexts, graph edge,
    # cosine must strictly rise from alpha=0 to alpha=0.5 at fixed seed
    words = ["s1", "s2", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4",
             "f1", "f2", "f3"]
    doc = ["x1", "x2", "s1", "x3", "x4", "y1", "y2", "s2", "y3", "y4",
           "f1", "f2", "f3"]
    tokens2 = doc * 50
    vocab2 = build_vocab(tokens2, 20, oov="drop")
    graph = graph_from_pairs(
        len(vocab2), [(vocab2.id_of["s1"], vocab2.id_of["s2"])])
    stats2 = accumulate_corpus(vocab2.map_tokens(tokens2), len(vocab2),
                               2, 12, 13, graph)
    cos_by_alpha = {}
    for alpha in (0.0, 0.5):
        e = embed(stats2, alpha, 4, seed=SEED, words=vocab2.words)
        cos_by_alpha[alpha] = cosine(e.vector("s1"), e.vector("s2"))
    ok_prior = cos_by_alpha[0.5] > cos_by_alpha[0.0]
    report("criterion 7 (semantic smoke + prior-injection direction)",
           ok_groups and ok_prior,
           f"within beats cross for {frac:.0%} of pair comparisons; "
           f"synonym cosine {cos_by_alpha[0.0]:.3f} -> {cos_by_alpha[0.5]:.3f}",
           time.time() - t0)


@pytest.mark.skipif("EIGENPRIOR_PLAUSIBILITY_CORPUS" not in os.environ,
                    reason="non-binding plausibility run needs a ~17M-token "
                           "corpus and a WS-353-format dataset; set "
                           "EIGENPRIOR_PLAUSIBILITY_CORPUS and "
                           "EIGENPRIOR_PLAUSIBILITY_DATASET to enable")
def test_criterion_8_plausibility_run():
    t0 = time.time()
    corpus_path = os.environ["EIGENPRIOR_PLAUSIBILITY_CORPUS"]
    dataset_path = os.environ["EIGENPRIOR_PLAUSIBILITY_DATASET"]
    with open(corpus_path, encoding="utf-8") as fh:
        est = EigenwordEmbedder(m=50, alpha=0.0, seed=SEED).fit([fh.read()])
    dataset = load_similarity_dataset(dataset_path)
    rho, covered, total = eval_similarity(est.embeddings_, dataset)
    elapsed = time.time() - t0
    report("criterion 8 (plausibility run)",
           rho > 0.2 and elapsed < 1800,
           f"rho={rho:.3f} covered={covered}/{total}", elapsed)


def test_criterion_9_eval_unit_correctness():
    t0 = time.time()
    from test_evaluate import brute_force_spearman
    from eigenprior.evaluate import solve_analogy, spearman
    from eigenprior.cca_core import EmbeddingSet

    ok = True
    details = []
    # tie handling vs rank-by-definition oracle
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        xs = rng.integers(0, 6, 15).astype(float)
        ys = rng.integers(0, 6, 15).astype(float)
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        if abs(spearman(xs, ys) - brute_force_spearman(list(xs), list(ys))) > 1e-12:
            ok = False
            details.append("spearman tie handling diverged from oracle")
            break
    # cosine basics
    x = np.array([3.0, 4.0])
    ok &= cosine(x, x) == pytest.approx(1.0)
    ok &= cosine(x, -x) == pytest.approx(-1.0)
    ok &= cosine(np.zeros(2), x) == 0.0
    # analogy equals exhaustive scan
    words = [f"w{i}" for i in range(30)]
    vecs = rng.standard_normal((30, 6))
    emb = EmbeddingSet(words, vecs)
    target = vecs[4] - vecs[1] + vecs[9]
    scan = max((w for i, w in enumerate(words) if w not in ("w1", "w4", "w9")),
               key=lambda w: cosine(vecs[words.index(w)], target))
    ok &= solve_analogy(emb, "w1", "w4", "w9") == scan
    report("criterion 9 (eval unit correctness)",
           ok and time.time() - t0 < 1.0,
           "; ".join(details) if details else
           "spearman/cosine/analogy match their definitional oracles",
           time.time() - t0)
