"""Embedding numbers, SCS/LCS lengths and fixed-length candidate enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels as K
from .seqcore import Word, _same_alphabet

DEFAULT_CAP = 1_000_000

# (kind, modulus, residue, parity) passed through to the enumeration kernels
NO_CODE = (K.CODE_NONE, 1, 0, 0)


class EmptyCandidateSet(ValueError):
    """Requested length admits no common supersequence."""


@dataclass(frozen=True)
class CandidateSet:
    """Distinct words of one common length, in lexicographic order."""

    words: tuple[Word, ...]
    length: int
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return w in self.words

    def as_set(self) -> set[Word]:
        return set(self.words)


def embedding_number(x: Word, y: Word) -> int:
    """Number of index sets I with x_I = y (exact integer).

    Classic distinct-subsequence count, restricted to the diagonal band of
    width |x| - |y| + 1.
    """
    _same_alphabet(x, y)
    xs, ys = x.symbols, y.symbols
    n, m = len(xs), len(ys)
    e = n - m
    if e < 0:
        return 0
    E = [1] + [0] * m
    for k in range(1, n + 1):
        s = xs[k - 1]
        for j in range(min(k, m), max(1, k - e) - 1, -1):
            if ys[j - 1] == s:
                E[j] += E[j - 1]
    return E[m]


def is_subsequence(x: Word | tuple, y: Word | tuple) -> bool:
    """True iff y can be obtained from x by deletions (greedy matching)."""
    it = iter(x)
    return all(any(s == c for c in it) for s in y)


def lcs_length(y1: Word, y2: Word) -> int:
    _same_alphabet(y1, y2)
    if len(y1) == 0 or len(y2) == 0:
        return 0
    return int(K.lcs_length(y1.as_array(), y2.as_array()))


def scs_length(y1: Word, y2: Word) -> int:
    return len(y1) + len(y2) - lcs_length(y1, y2)


def super_band(m1: int, m2: int, L: int, banded: bool = True) -> tuple[int, int]:
    """Offset band ``i - j`` visited by length-L common supersequences."""
    if banded:
        return -(L - m1), L - m2
    return -m2, m1


def sub_band(m1: int, m2: int, L: int, banded: bool = True) -> tuple[int, int]:
    if banded:
        return -(m2 - L), m1 - L
    return -m2, m1


def scs_length_banded(a: np.ndarray, b: np.ndarray, L: int) -> int | None:
    """SCS length of two arrays if it is at most L, else None."""
    if L < max(len(a), len(b)):
        return None
    dlo, dhi = super_band(len(a), len(b), L)
    T = K.scs_table(a, b, dlo, dhi)
    v = int(T[0, -dlo])
    return v if v <= L else None


def lcs_length_banded(a: np.ndarray, b: np.ndarray, L: int) -> int | None:
    """LCS length of two arrays if it is at least L, else None."""
    if L > min(len(a), len(b)):
        return None
    dlo, dhi = sub_band(len(a), len(b), L)
    T = K.lcs_table(a, b, dlo, dhi)
    v = int(T[0, -dlo])
    return v if v >= L else None


def supersequence_array(a, b, L, q, cap=DEFAULT_CAP, code=NO_CODE, banded=True):
    """Kernel-level enumeration; returns ``(words, total, truncated)``."""
    if L < max(len(a), len(b)):
        return np.empty((0, max(L, 0)), np.int8), 0, False
    dlo, dhi = super_band(len(a), len(b), L, banded)
    T = K.scs_table(a, b, dlo, dhi)
    return K.enumerate_supersequences(a, b, L, q, T, dlo, dhi, cap, *code)


def subsequence_array(a, b, L, q, cap=DEFAULT_CAP, code=NO_CODE, banded=True):
    if L > min(len(a), len(b)) or L < 0:
        return np.empty((0, max(L, 0)), np.int8), 0, False
    dlo, dhi = sub_band(len(a), len(b), L, banded)
    T = K.lcs_table(a, b, dlo, dhi)
    return K.enumerate_subsequences(a, b, L, q, T, dlo, dhi, cap, *code)


def _to_set(arr, q: int, L: int, truncated: bool) -> CandidateSet:
    words = tuple(Word(tuple(int(v) for v in row), q) for row in arr)
    return CandidateSet(words, L, truncated)


def enumerate_common_supersequences(y1: Word, y2: Word, L: int,
                                    cap: int = DEFAULT_CAP,
                                    banded: bool = True) -> CandidateSet:
    """Every distinct common supersequence of y1 and y2 of length exactly L."""
    _same_alphabet(y1, y2)
    if cap <= 0:
        raise ValueError("cap must be positive")
    if L < max(len(y1), len(y2)) or L < scs_length(y1, y2):
        raise EmptyCandidateSet(
            f"no common supersequence of length {L} (SCS is {scs_length(y1, y2)})")
    arr, _, truncated = supersequence_array(
        y1.as_array(), y2.as_array(), L, y1.q, cap, NO_CODE, banded)
    return _to_set(arr, y1.q, L, truncated)


def enumerate_common_subsequences(y1: Word, y2: Word, L: int,
                                  cap: int = DEFAULT_CAP,
                                  banded: bool = True) -> CandidateSet:
    """Every distinct common subsequence of y1 and y2 of length exactly L."""
    _same_alphabet(y1, y2)
    if cap <= 0:
        raise ValueError("cap must be positive")
    arr, _, truncated = subsequence_array(
        y1.as_array(), y2.as_array(), L, y1.q, cap, NO_CODE, banded)
    return _to_set(arr, y1.q, L, truncated)
