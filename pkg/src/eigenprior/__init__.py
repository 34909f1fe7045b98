"""CCA-style word embeddings with graph prior knowledge baked into the
co-occurrence statistics, plus a numerical verification battery and an
evaluation harness."""

from .accumulate import CooccurrenceStats, accumulate_corpus, merge
from .cca_core import EmbeddingSet, embed, scale
from .corpus import Vocabulary, build_vocab, chunk, tokenize
from .errors import ContractViolation, DataError, EigenpriorError, VerificationFailure
from .estimator import EigenwordEmbedder
from .evaluate import cosine, eval_analogy, eval_similarity, solve_analogy, spearman
from .linalg import SvdFactors, dense_svd, smallest_svd, truncated_svd
from .prior_graph import PriorGraph, load_edges

__version__ = "0.1.0"

__all__ = [
    "CooccurrenceStats", "EmbeddingSet", "EigenwordEmbedder", "PriorGraph",
    "SvdFactors", "Vocabulary", "accumulate_corpus", "build_vocab", "chunk",
    "cosine", "dense_svd", "embed", "eval_analogy", "eval_similarity",
    "load_edges", "merge", "scale", "smallest_svd", "solve_analogy",
    "spearman", "tokenize", "truncated_svd",
    "ContractViolation", "DataError", "EigenpriorError", "VerificationFailure",
]
