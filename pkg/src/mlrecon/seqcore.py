"""q-ary words, run decomposition and the two distances used throughout.

Symbols are small integers.  The text format maps digit characters to
symbols when ``q <= 10`` and uses comma-separated integers otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np


@dataclass(frozen=True)
class Word:
    """A word over the alphabet ``{0, ..., q-1}``."""

    symbols: tuple[int, ...]
    q: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")
        syms = tuple(int(s) for s in self.symbols)
        for s in syms:
            if not 0 <= s < self.q:
                raise ValueError(f"symbol {s} outside alphabet of size {self.q}")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def parse(cls, text: str, q: int = 2) -> "Word":
        text = text.strip()
        if q > 10 or "," in text:
            syms = [int(tok) for tok in text.split(",") if tok.strip()]
        else:
            syms = [int(ch) for ch in text]
        return cls(tuple(syms), q)

    @classmethod
    def from_array(cls, arr, q: int) -> "Word":
        return cls(tuple(int(v) for v in arr), q)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.symbols, dtype=np.int8)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.symbols[idx], self.q)
        return self.symbols[idx]

    def __iter__(self):
        return iter(self.symbols)

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.symbols) < (len(other), other.symbols)

    def __str__(self) -> str:
        return format_word(self.symbols, self.q)


def format_word(symbols: Sequence[int], q: int) -> str:
    if q > 10:
        return ",".join(str(int(s)) for s in symbols)
    return "".join(str(int(s)) for s in symbols)


def as_word(w, q: int | None = None) -> Word:
    """Coerce a Word, string or integer sequence to a Word."""
    if isinstance(w, Word):
        if q is not None and w.q != q:
            raise ValueError(f"alphabet mismatch: word has q={w.q}, expected {q}")
        return w
    if isinstance(w, str):
        return Word.parse(w, q if q is not None else 2)
    return Word(tuple(int(s) for s in w), q if q is not None else 2)


def _same_alphabet(x: Word, y: Word) -> None:
    if x.q != y.q:
        raise ValueError(f"alphabet mismatch: q={x.q} vs q={y.q}")


class Run(NamedTuple):
    symbol: int
    length: int
    start: int


def run_decompose(w: Word | Iterable[int]) -> list[Run]:
    """Split a word into maximal runs of equal symbols."""
    syms = list(w)
    runs: list[Run] = []
    start = 0
    for i in range(1, len(syms) + 1):
        if i == len(syms) or syms[i] != syms[start]:
            runs.append(Run(syms[start], i - start, start))
            start = i
    return runs


def expand_runs(runs: Iterable[Run]) -> list[int]:
    out: list[int] = []
    for run in runs:
        out.extend([run.symbol] * run.length)
    return out


def lcs_length_plain(x: Sequence[int], y: Sequence[int]) -> int:
    """Quadratic LCS length with a single rolling row."""
    if len(x) < len(y):
        x, y = y, x
    prev = [0] * (len(y) + 1)
    for a in x:
        cur = [0]
        for j, b in enumerate(y):
            if a == b:
                cur.append(prev[j] + 1)
            else:
                cur.append(max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def indel_distance(x: Word, y: Word) -> int:
    """Levenshtein distance with insertions and deletions only."""
    _same_alphabet(x, y)
    return len(x) + len(y) - 2 * lcs_length_plain(x.symbols, y.symbols)


def hamming_distance(x: Word, y: Word) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x.symbols, y.symbols))


def is_two_symbol_alternation(w: Word | Sequence[int]) -> bool:
    """True iff ``w`` is ABAB... over exactly two distinct symbols, |w| >= 2."""
    syms = list(w)
    if len(syms) < 2 or syms[0] == syms[1]:
        return False
    a, b = syms[0], syms[1]
    return all(s == (a if i % 2 == 0 else b) for i, s in enumerate(syms))


def projection(w: Word, indices: Sequence[int]) -> Word:
    """The subsequence of ``w`` at a strictly increasing index set."""
    prev = -1
    for i in indices:
        if not 0 <= i < len(w):
            raise IndexError(f"index {i} out of range for word of length {len(w)}")
        if i <= prev:
            raise ValueError("index set must be strictly increasing")
        prev = i
    return Word(tuple(w.symbols[i] for i in indices), w.q)
