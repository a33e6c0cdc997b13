"""Deletion, insertion, BSC and Z channels: simulation and likelihoods.

Insertion model: each of the |x|+1 gaps independently receives at most one
symbol, with probability p, drawn uniformly from the alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .seqcore import Word
from .subseq import embedding_number

FAMILIES = ("deletion", "insertion", "bsc", "z")


@dataclass(frozen=True)
class ChannelSpec:
    family: str
    p: float
    q: int = 2

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown channel family {self.family!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.family in ("bsc", "z") and self.q != 2:
            raise ValueError(f"{self.family} channel is binary")


@dataclass(frozen=True)
class TransmissionRecord:
    """Channel output plus ground-truth event positions in the input word.

    ``event_positions`` are deleted indices, gap indices (0..|x|) or flipped
    indices depending on the channel; ``inserted`` holds the symbol placed
    at each insertion gap.
    """

    output: Word
    event_positions: tuple[int, ...]
    inserted: tuple[int, ...] = field(default=())


def transmit_array(x: np.ndarray, family: str, p: float, q: int, rng):
    """Array-level channel; returns ``(output, positions, inserted)``."""
    n = x.shape[0]
    if family == "deletion":
        hit = rng.random(n) < p
        return x[~hit], np.flatnonzero(hit), np.empty(0, np.int8)
    if family == "insertion":
        gaps = np.flatnonzero(rng.random(n + 1) < p)
        syms = rng.integers(0, q, size=gaps.shape[0]).astype(np.int8)
        return np.insert(x, gaps, syms), gaps, syms
    if family == "bsc":
        hit = rng.random(n) < p
        return x ^ hit.astype(np.int8), np.flatnonzero(hit), np.empty(0, np.int8)
    if family == "z":
        hit = (rng.random(n) < p) & (x == 0)
        out = x.copy()
        out[hit] = 1
        return out, np.flatnonzero(hit), np.empty(0, np.int8)
    raise ValueError(f"unknown channel family {family!r}")


def transmit(x: Word, spec: ChannelSpec, rng) -> TransmissionRecord:
    if x.q != spec.q:
        raise ValueError(f"alphabet mismatch: word q={x.q}, channel q={spec.q}")
    out, pos, ins = transmit_array(x.as_array(), spec.family, spec.p, spec.q, rng)
    return TransmissionRecord(Word.from_array(out, x.q),
                              tuple(int(v) for v in pos),
                              tuple(int(v) for v in ins))


def paper_weight_deletion(x: Word, y: Word, p):
    """p^(|x|-|y|) * Emb(x; y): the deletion likelihood without survival factor."""
    if len(y) > len(x):
        raise ValueError("deletion output cannot be longer than the input")
    return p ** (len(x) - len(y)) * embedding_number(x, y)


def likelihood_deletion(x: Word, y: Word, p):
    """Exact Pr{y received | x sent} for the deletion channel."""
    return paper_weight_deletion(x, y, p) * (1 - p) ** len(y)


def paper_weight_insertion(x: Word, y: Word, p):
    """(p/q)^(|y|-|x|) * Emb(y; x)."""
    if len(y) < len(x):
        raise ValueError("insertion output cannot be shorter than the input")
    return (p / x.q) ** (len(y) - len(x)) * embedding_number(y, x)


def gap_separated_embeddings(y: Word, x: Word) -> int:
    """Embeddings of x in y leaving at most one unmatched symbol per gap of x.

    These are exactly the insertion patterns the one-per-gap channel can
    realise, so this count replaces Emb(y; x) in the exact likelihood.
    """
    ys, xs = y.symbols, x.symbols
    m = len(xs)
    # f[j][u]: matched x[:j]; u = 1 if the gap after x[j-1] is already used
    f = [[0, 0] for _ in range(m + 1)]
    f[0][0] = 1
    for s in ys:
        g = [[0, 0] for _ in range(m + 1)]
        for j in range(m + 1):
            free, used = f[j]
            if not free and not used:
                continue
            if j < m and xs[j] == s:
                g[j + 1][0] += free + used
            g[j][1] += free
        f = g
    return f[m][0] + f[m][1]


def likelihood_insertion(x: Word, y: Word, p):
    """Exact Pr{y received | x sent} under the one-insertion-per-gap model."""
    if len(y) < len(x):
        raise ValueError("insertion output cannot be shorter than the input")
    k = len(y) - len(x)
    if k > len(x) + 1:
        return 0 * p
    count = gap_separated_embeddings(y, x)
    return (p / x.q) ** k * (1 - p) ** (len(x) + 1 - k) * count


def likelihood_bsc(x: Word, y: Word, p):
    if len(x) != len(y):
        return 0 * p
    d = sum(a != b for a, b in zip(x, y))
    return p ** d * (1 - p) ** (len(x) - d)


def likelihood_z(x: Word, y: Word, p):
    if len(x) != len(y) or any(a > b for a, b in zip(x, y)):
        return 0 * p
    flips = sum(a != b for a, b in zip(x, y))
    zeros = sum(a == 0 for a in x)
    return p ** flips * (1 - p) ** (zeros - flips)


def likelihood(spec: ChannelSpec, x: Word, y: Word, p=None):
    p = spec.p if p is None else p
    if spec.family == "deletion":
        if len(y) > len(x):
            return 0 * p
        return likelihood_deletion(x, y, p)
    if spec.family == "insertion":
        if len(y) < len(x):
            return 0 * p
        return likelihood_insertion(x, y, p)
    if spec.family == "bsc":
        return likelihood_bsc(x, y, p)
    return likelihood_z(x, y, p)
