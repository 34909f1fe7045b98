"""Streaming accumulation of word/context co-occurrence statistics.

Counts are kept as two exact integer counters per (word, context-slot)
cell: ``unit`` for ordinary pivot/context co-occurrence and ``prior``
for graph-driven updates between nearby examples whose pivots are
connected in the similarity graph.  The smoothing weight is applied
later, at scaling time, as ``unit + alpha * prior``, so one corpus scan
supports any number of alpha values.

Context slots are laid out as ``position_index * n_vocab + word_id``
with position indices 0..k-1 covering the left context in textual order
(offset -k first, -1 last) and k..2k-1 the right context (offset +1
first, +k last).

The diagonal count vectors d1/d2 come from unit counts only; prior
counts never touch them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .corpus import chunk as make_chunks
from .errors import ContractViolation, DataError
from .prior_graph import PriorGraph


class Example(NamedTuple):
    pivot: int
    context: tuple[int, ...]  # 2k ids in slot order
    position: int             # pivot index within the chunk


@dataclass
class CooccurrenceStats:
    n_vocab: int
    k: int
    n_examples: int = 0
    # (word_id, context_slot) -> [unit, prior]
    entries: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    d1: np.ndarray = None
    d2: np.ndarray = None

    def __post_init__(self):
        if self.d1 is None:
            self.d1 = np.zeros(self.n_vocab, dtype=np.int64)
        if self.d2 is None:
            self.d2 = np.zeros(2 * self.k * self.n_vocab, dtype=np.int64)

    def unit(self, r: int, s: int) -> int:
        cell = self.entries.get((r, s))
        return cell[0] if cell else 0

    def prior(self, r: int, s: int) -> int:
        cell = self.entries.get((r, s))
        return cell[1] if cell else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, CooccurrenceStats):
            return NotImplemented
        return (self.n_vocab == other.n_vocab and self.k == other.k
                and self.n_examples == other.n_examples
                and {k: tuple(v) for k, v in self.entries.items()}
                == {k: tuple(v) for k, v in other.entries.items()}
                and np.array_equal(self.d1, other.d1)
                and np.array_equal(self.d2, other.d2))


def slot_index(position_index: int, word_id: int, n_vocab: int) -> int:
    return position_index * n_vocab + word_id


def extract_examples(chunk: list[int], k: int) -> list[Example]:
    """One example per chunk position with a full +-k context."""
    out = []
    for p in range(k, len(chunk) - k):
        context = tuple(chunk[p - k : p]) + tuple(chunk[p + 1 : p + k + 1])
        out.append(Example(chunk[p], context, p))
    return out


def accumulate_chunk(stats: CooccurrenceStats, chunk: list[int], k: int,
                     locality: int, graph: PriorGraph) -> None:
    """Apply one chunk's unit and prior updates to ``stats`` in place.

    Unit updates: each example increments its pivot row at each of its
    2k context slots, plus d1/d2.  Prior updates: every ordered pair of
    distinct examples whose pivot positions are within ``locality`` of
    each other and whose pivots are graph-adjacent increments the first
    pivot's row at the second example's context slots.  Pairs never
    cross chunk boundaries.
    """
    n_vocab = stats.n_vocab
    examples = extract_examples(chunk, k)
    entries = stats.entries
    for ex in examples:
        stats.d1[ex.pivot] += 1
        for pos, w in enumerate(ex.context):
            s = pos * n_vocab + w
            cell = entries.setdefault((ex.pivot, s), [0, 0])
            cell[0] += 1
            stats.d2[s] += 1
    stats.n_examples += len(examples)
    if graph.is_empty or locality <= 0:
        return
    adjacency = graph.adjacency
    for a in examples:
        neighbors = adjacency[a.pivot]
        if not neighbors:
            continue
        for b in examples:
            if b.position == a.position:
                continue
            if abs(a.position - b.position) > locality:
                continue
            if b.pivot not in neighbors:
                continue
            for pos, w in enumerate(b.context):
                s = pos * n_vocab + w
                cell = entries.setdefault((a.pivot, s), [0, 0])
                cell[1] += 1


def accumulate_corpus(token_ids: list[int], n_vocab: int, k: int,
                      locality: int, chunk_len: int,
                      graph: PriorGraph,
                      stats: CooccurrenceStats | None = None) -> CooccurrenceStats:
    """Chunk a mapped token stream and accumulate every chunk."""
    if chunk_len < 2 * k + 1:
        raise ContractViolation("chunk_len must be >= 2k+1")
    if stats is None:
        stats = CooccurrenceStats(n_vocab, k)
    for ch in make_chunks(token_ids, chunk_len):
        accumulate_chunk(stats, ch, k, locality, graph)
    return stats


def merge(a: CooccurrenceStats, b: CooccurrenceStats) -> CooccurrenceStats:
    """Entrywise integer sum of two compatible statistics objects."""
    if a.n_vocab != b.n_vocab or a.k != b.k:
        raise ContractViolation("stats shape mismatch: |H| and k must agree")
    out = CooccurrenceStats(a.n_vocab, a.k, a.n_examples + b.n_examples)
    out.d1 = a.d1 + b.d1
    out.d2 = a.d2 + b.d2
    out.entries = {key: list(cell) for key, cell in a.entries.items()}
    for key, cell in b.entries.items():
        mine = out.entries.setdefault(key, [0, 0])
        mine[0] += cell[0]
        mine[1] += cell[1]
    return out


def oracle_accumulate(token_ids: list[int], n_vocab: int, k: int,
                      locality: int, chunk_len: int,
                      graph: PriorGraph) -> CooccurrenceStats:
    """Brute-force reference accumulator, used only by tests.

    Written from the definitions with quadratic nested loops and no
    shared code with the streaming path: contexts and slots are
    recomputed inline, and d1/d2 are rebuilt from the example list.
    """
    stats = CooccurrenceStats(n_vocab, k)
    n_chunks = len(token_ids) // chunk_len
    for c in range(n_chunks):
        tokens = token_ids[c * chunk_len : (c + 1) * chunk_len]
        pivots = []
        slots_per_example = []
        for p in range(len(tokens)):
            if p - k < 0 or p + k >= len(tokens):
                continue
            slots = []
            for offset in range(-k, k + 1):
                if offset == 0:
                    continue
                pos_index = offset + k if offset < 0 else offset + k - 1
                slots.append(pos_index * n_vocab + tokens[p + offset])
            pivots.append((p, tokens[p]))
            slots_per_example.append(slots)
        for i in range(len(pivots)):
            for j in range(len(pivots)):
                pi, ri = pivots[i]
                pj, rj = pivots[j]
                if i == j:
                    for s in slots_per_example[i]:
                        cell = stats.entries.setdefault((ri, s), [0, 0])
                        cell[0] += 1
                        stats.d2[s] += 1
                    stats.d1[ri] += 1
                    stats.n_examples += 1
                elif abs(pi - pj) <= locality and graph.has_edge(ri, rj):
                    for s in slots_per_example[j]:
                        cell = stats.entries.setdefault((ri, s), [0, 0])
                        cell[1] += 1
    return stats


STATS_MAGIC = "eigenprior-stats v1"


def save_stats(stats: CooccurrenceStats, path: str) -> None:
    """Persist statistics in the bit-exact round-trippable text format."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{STATS_MAGIC} {stats.n_vocab} {stats.k} {stats.n_examples}\n")
        for (r, s) in sorted(stats.entries):
            unit, prior = stats.entries[(r, s)]
            fh.write(f"{r}\t{s}\t{unit}\t{prior}\n")
        fh.write("D1\n")
        for i in np.flatnonzero(stats.d1):
            fh.write(f"{i}\t{stats.d1[i]}\n")
        fh.write("D2\n")
        for i in np.flatnonzero(stats.d2):
            fh.write(f"{i}\t{stats.d2[i]}\n")


def load_stats(path: str) -> CooccurrenceStats:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        parts = header.split()
        if parts[:2] != STATS_MAGIC.split() or len(parts) != 5:
            raise DataError(f"{path}: bad stats header {header!r}")
        n_vocab, k, n_examples = int(parts[2]), int(parts[3]), int(parts[4])
        stats = CooccurrenceStats(n_vocab, k, n_examples)
        section = "M"
        for lineno, line in enumerate(fh, 2):
            line = line.rstrip("\n")
            if line in ("D1", "D2"):
                section = line
                continue
            cols = line.split("\t")
            try:
                if section == "M":
                    r, s, unit, prior = map(int, cols)
                    stats.entries[(r, s)] = [unit, prior]
                else:
                    i, count = map(int, cols)
                    (stats.d1 if section == "D1" else stats.d2)[i] = count
            except (ValueError, IndexError):
                raise DataError(f"{path}:{lineno}: malformed row {line!r}") from None
    return stats
