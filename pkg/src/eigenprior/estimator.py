"""Scikit-learn style front end for the embedding pipeline.

``EigenwordEmbedder.fit`` takes an iterable of raw-text documents,
builds the vocabulary and co-occurrence statistics, and factors them
into word vectors.  ``transform`` maps words to their vectors so the
model composes with sklearn pipelines operating on token features.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import accumulate, cca_core, corpus
from .errors import DataError
from .prior_graph import PriorGraph, empty_graph


class EigenwordEmbedder(BaseEstimator, TransformerMixin):
    """CCA-style word embeddings with optional graph prior knowledge.

    Parameters
    ----------
    m : embedding dimension.
    k : context window size; each training example is a (2k+1)-gram.
    chunk_len : document chunk length (must be >= 2k+1).
    alpha : smoothing weight in [0, 1] for graph-driven prior counts.
    locality : maximum pivot distance within a chunk for prior updates.
    max_vocab : keep this many most frequent words.
    oov : "unk" maps out-of-vocabulary tokens to a sentinel, "drop"
        deletes them from the stream.
    prior_edges : iterable of (word, word) pairs, or None.
    sqrt_transform : apply the variance-stabilizing square root to
        counts before whitening.
    d1_projection : project U by D1^{-1/2} (the default embedding);
        disable to return raw U rows.
    seed, oversample, power_iters : truncated SVD controls.
    """

    def __init__(self, m=50, k=2, chunk_len=13, alpha=0.0, locality=12,
                 max_vocab=200_000, oov="unk", prior_edges=None,
                 sqrt_transform=True, d1_projection=True, seed=0,
                 oversample=10, power_iters=3):
        self.m = m
        self.k = k
        self.chunk_len = chunk_len
        self.alpha = alpha
        self.locality = locality
        self.max_vocab = max_vocab
        self.oov = oov
        self.prior_edges = prior_edges
        self.sqrt_transform = sqrt_transform
        self.d1_projection = d1_projection
        self.seed = seed
        self.oversample = oversample
        self.power_iters = power_iters

    def _build_graph(self, vocab: corpus.Vocabulary) -> PriorGraph:
        if not self.prior_edges:
            return empty_graph(len(vocab))
        graph = PriorGraph(len(vocab))
        for w1, w2 in self.prior_edges:
            if w1 in vocab and w2 in vocab and w1 != w2:
                graph.add_edge(vocab.id_of[w1], vocab.id_of[w2])
            else:
                graph.unresolved += 1
        return graph

    def fit(self, X, y=None):
        """Fit on an iterable of document strings (or token lists)."""
        if self.chunk_len < 2 * self.k + 1:
            raise DataError("chunk_len must be at least 2k+1")
        docs = [corpus.tokenize(d) if isinstance(d, str) else list(d) for d in X]
        all_tokens = [t for doc in docs for t in doc]
        vocab = corpus.build_vocab(all_tokens, self.max_vocab, oov=self.oov)
        graph = self._build_graph(vocab)
        stats = accumulate.CooccurrenceStats(len(vocab), self.k)
        for doc in docs:
            accumulate.accumulate_corpus(
                vocab.map_tokens(doc), len(vocab), self.k, self.locality,
                self.chunk_len, graph, stats=stats)
        emb = cca_core.embed(
            stats, self.alpha, self.m, sqrt_transform=self.sqrt_transform,
            oversample=self.oversample, power_iters=self.power_iters,
            seed=self.seed, d1_projection=self.d1_projection,
            words=vocab.words)
        self.vocabulary_ = vocab
        self.graph_ = graph
        self.stats_ = stats
        self.embeddings_ = emb
        return self

    def transform(self, X):
        """Map an iterable of words to their vectors.

        Out-of-vocabulary words map to the sentinel vector when the
        model was fit with ``oov="unk"``, and to zeros otherwise.
        """
        emb = self.embeddings_
        out = np.zeros((len(X), emb.dim))
        for i, word in enumerate(X):
            if word in emb:
                out[i] = emb.vector(word)
            elif self.oov == "unk":
                out[i] = emb.vectors[0]
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array([f"dim{i}" for i in range(self.embeddings_.dim)])
