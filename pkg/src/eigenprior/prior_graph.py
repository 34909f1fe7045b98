"""Undirected, unweighted word-similarity graph over vocabulary identifiers.

Edges come from an external lexical resource, pre-extracted offline into
a plain ``word1<TAB>word2`` edge list.  An optional lemma map lets edges
stated between base forms fan out to every in-vocabulary surface form
sharing that base.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .corpus import Vocabulary
from .errors import ContractViolation, DataError

log = logging.getLogger(__name__)


@dataclass
class PriorGraph:
    """Symmetric adjacency over ``[0, n)`` with no self-loops."""

    n: int
    adjacency: list[set[int]] = field(default_factory=list)
    edge_count: int = 0
    unresolved: int = 0  # edge-list entries whose words did not resolve

    def __post_init__(self):
        if not self.adjacency:
            self.adjacency = [set() for _ in range(self.n)]

    def add_edge(self, i: int, j: int) -> None:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ContractViolation(f"edge ({i},{j}) outside [0,{self.n})")
        if i == j or j in self.adjacency[i]:
            return
        self.adjacency[i].add(j)
        self.adjacency[j].add(i)
        self.edge_count += 1

    def degree(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise ContractViolation(f"node {i} outside [0,{self.n})")
        return len(self.adjacency[i])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    @property
    def is_empty(self) -> bool:
        return self.edge_count == 0


def empty_graph(n: int) -> PriorGraph:
    return PriorGraph(n)


def graph_from_pairs(n: int, pairs) -> PriorGraph:
    g = PriorGraph(n)
    for i, j in pairs:
        g.add_edge(i, j)
    return g


def load_lemma_map(path: str) -> dict[str, str]:
    """Read a ``surface<TAB>base`` mapping file."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 'surface<TAB>base'")
            mapping[parts[0]] = parts[1]
    return mapping


def _surface_forms(vocab: Vocabulary, lemma_map: dict[str, str] | None) -> dict[str, list[int]]:
    """Map each base form to the identifiers of its in-vocab surface forms."""
    forms: dict[str, list[int]] = {}
    for i, word in enumerate(vocab.words):
        base = lemma_map.get(word, word) if lemma_map else word
        forms.setdefault(base, []).append(i)
    return forms


def load_edges(path: str, vocab: Vocabulary,
               lemma_map: dict[str, str] | None = None) -> PriorGraph:
    """Load a tab-separated edge list into a PriorGraph.

    Each endpoint word is mapped to its base form (when a lemma map is
    given) and then expanded to all in-vocabulary surface forms of that
    base; the cross product of the two expansions becomes edges.
    Duplicate edges and self-loops are dropped.  Words that resolve to
    no vocabulary entry are counted in ``graph.unresolved``.
    """
    forms = _surface_forms(vocab, lemma_map)
    graph = PriorGraph(len(vocab))
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 'word1<TAB>word2'")
            ids = []
            for word in parts:
                base = lemma_map.get(word, word) if lemma_map else word
                ids.append(forms.get(base, []))
            if not ids[0] or not ids[1]:
                graph.unresolved += 1
                continue
            for i in ids[0]:
                for j in ids[1]:
                    graph.add_edge(i, j)
    if graph.unresolved:
        log.info("skipped %d edges with unresolvable words", graph.unresolved)
    return graph
