"""Corpus preprocessing: tokenization, vocabulary construction and chunking.

The token stream is lowercased ASCII-ish text split on whitespace, with
non-alphanumeric characters stripped from token boundaries (interior
punctuation such as hyphens survives).  The vocabulary keeps the most
frequent words with dense integer identifiers; identifier 0 is reserved
for the ``<unk>`` sentinel when out-of-vocabulary mapping is enabled.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ContractViolation, DataError

UNK = "<unk>"

_BOUNDARY = re.compile(r"^[^a-z0-9]+|[^a-z0-9]+$")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace and strip token boundaries."""
    out = []
    for raw in text.lower().split():
        tok = _BOUNDARY.sub("", raw)
        if tok:
            out.append(tok)
    return out


def tokenize_bytes(data: bytes) -> list[str]:
    """Tokenize a raw byte stream, rejecting invalid UTF-8."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"invalid UTF-8 at byte offset {exc.start}") from exc
    return tokenize(text)


@dataclass
class Vocabulary:
    """Bijection between surface words and dense integer identifiers.

    Identifiers are dense in ``[0, len(words))``.  Counts are
    non-increasing in identifier order (ties broken lexicographically),
    except for the optional ``<unk>`` sentinel pinned at identifier 0,
    whose count is the total number of out-of-vocabulary occurrences.
    """

    words: list[str]
    counts: list[int]
    id_of: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.id_of = {w: i for i, w in enumerate(self.words)}
        if len(self.id_of) != len(self.words):
            raise DataError("duplicate word in vocabulary")

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.id_of

    @property
    def has_unk(self) -> bool:
        return bool(self.words) and self.words[0] == UNK

    def map_tokens(self, tokens: Iterable[str]) -> list[int]:
        """Map surface tokens to identifiers.

        OOV tokens map to the sentinel when present, and are dropped
        from the stream otherwise.
        """
        id_of = self.id_of
        if self.has_unk:
            return [id_of.get(t, 0) for t in tokens]
        return [id_of[t] for t in tokens if t in id_of]


def build_vocab(tokens: Iterable[str], max_size: int, oov: str = "unk") -> Vocabulary:
    """Build a frequency-capped vocabulary from a token stream.

    ``oov`` is ``"unk"`` to reserve identifier 0 for the sentinel or
    ``"drop"`` to omit it (OOV tokens are then deleted downstream).
    """
    if max_size < 1:
        raise ContractViolation("max_size must be >= 1")
    if oov not in ("unk", "drop"):
        raise DataError(f"unknown OOV policy: {oov!r}")
    freq = Counter(tokens)
    if not freq:
        raise DataError("empty corpus")
    ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:max_size]
    words = [w for w, _ in ranked]
    counts = [c for _, c in ranked]
    if oov == "unk":
        oov_count = sum(freq.values()) - sum(counts)
        words.insert(0, UNK)
        counts.insert(0, oov_count)
    return Vocabulary(words, counts)


def chunk(token_ids: list[int], chunk_len: int) -> Iterator[list[int]]:
    """Split a mapped token stream into consecutive fixed-length chunks.

    The trailing remainder shorter than ``chunk_len`` is discarded.
    """
    if chunk_len < 1:
        raise ContractViolation("chunk_len must be >= 1")
    n = len(token_ids) // chunk_len
    for i in range(n):
        yield token_ids[i * chunk_len : (i + 1) * chunk_len]


def save_vocab(vocab: Vocabulary, path: str) -> None:
    """Write one ``word<TAB>count`` line per identifier (0-based order)."""
    with open(path, "w", encoding="utf-8") as fh:
        for word, count in zip(vocab.words, vocab.counts):
            fh.write(f"{word}\t{count}\n")


def load_vocab(path: str) -> Vocabulary:
    words, counts = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 'word<TAB>count'")
            words.append(parts[0])
            try:
                counts.append(int(parts[1]))
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad count {parts[1]!r}") from None
    if not words:
        raise DataError(f"{path}: empty vocabulary file")
    return Vocabulary(words, counts)
