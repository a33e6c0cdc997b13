"""Varshamov-Tenengolts and shifted VT codes (binary).

VT(n, a):        sum_{i=1..n} i*x_i = a  (mod n+1)
SVT(n, a, b, P): sum_{i=1..n} i*x_i = a  (mod P)  and  sum x_i = b (mod 2)

Positions are 1-based in the syndromes only; words index from 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .seqcore import Word

MAX_SCAN_N = 28


class DecodingError(ValueError):
    """No (or more than one) codeword is consistent with the received word."""


def _check_binary(w: Word) -> None:
    if w.q != 2:
        raise ValueError("VT/SVT codes are binary")


@dataclass(frozen=True)
class VTCode:
    n: int
    a: int = 0

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.a <= self.n:
            raise ValueError(f"VT code needs n >= 1 and 0 <= a <= n, got n={self.n}, a={self.a}")

    @property
    def modulus(self) -> int:
        return self.n + 1

    def kernel_params(self) -> tuple[int, int, int, int]:
        return (K.CODE_VT, self.n + 1, self.a, 0)

    def contains(self, w: Word) -> bool:
        return vt_contains(self, w)


@dataclass(frozen=True)
class SVTCode:
    n: int
    a: int = 0
    b: int = 0
    P: int = 3

    def __post_init__(self):
        if self.P < 2:
            raise ValueError("SVT window parameter P must be >= 2")
        if not 0 <= self.a < self.P or self.b not in (0, 1):
            raise ValueError(f"SVT needs 0 <= a < P and b in {{0,1}}, got a={self.a}, b={self.b}")

    @property
    def modulus(self) -> int:
        return self.P

    def kernel_params(self) -> tuple[int, int, int, int]:
        return (K.CODE_SVT, self.P, self.a, self.b)

    def contains(self, w: Word) -> bool:
        return svt_contains(self, w)


def default_svt_window(n: int) -> int:
    """ceil(log2 n) + 2."""
    return math.ceil(math.log2(max(n, 2))) + 2


def weighted_sum(w) -> int:
    return sum((i + 1) * s for i, s in enumerate(w))


def vt_syndrome(w: Word) -> int:
    _check_binary(w)
    return weighted_sum(w.symbols) % (len(w) + 1)


def vt_contains(code: VTCode, w: Word) -> bool:
    _check_binary(w)
    if len(w) != code.n:
        raise ValueError(f"word length {len(w)} does not match code length {code.n}")
    return vt_syndrome(w) == code.a


def svt_contains(code: SVTCode, w: Word) -> bool:
    _check_binary(w)
    if len(w) != code.n:
        raise ValueError(f"word length {len(w)} does not match code length {code.n}")
    return (weighted_sum(w.symbols) % code.P == code.a
            and sum(w.symbols) % 2 == code.b)


def vt_decode_single_deletion(code: VTCode, y: Word) -> Word:
    """Levenshtein's reinsertion rule for one deletion."""
    _check_binary(y)
    n = code.n
    if len(y) != n - 1:
        raise ValueError(f"expected length {n - 1}, got {len(y)}")
    ys = list(y.symbols)
    weight = sum(ys)
    deficit = (code.a - weighted_sum(ys)) % (n + 1)
    if deficit <= weight:
        # a 0 with exactly `deficit` ones to its right
        ones_right = 0
        pos = len(ys)
        while ones_right < deficit:
            pos -= 1
            ones_right += ys[pos]
        ys.insert(pos, 0)
    else:
        # a 1 with exactly deficit - weight - 1 zeros to its left
        need = deficit - weight - 1
        zeros_left = 0
        pos = 0
        while zeros_left < need:
            if pos >= len(ys):
                raise DecodingError("no codeword is consistent with the input")
            zeros_left += 1 - ys[pos]
            pos += 1
        ys.insert(pos, 1)
    c = Word(tuple(ys), 2)
    if not vt_contains(code, c):
        raise DecodingError("no codeword is consistent with the input")
    return c


def svt_decode_single_deletion(code: SVTCode, y: Word, window_start: int,
                               window_len: int) -> Word:
    """Reinsert one symbol inside ``[window_start, window_start + window_len)``.

    The surviving candidate must satisfy both congruences and be unique.
    """
    _check_binary(y)
    n = code.n
    if len(y) != n - 1:
        raise ValueError(f"expected length {n - 1}, got {len(y)}")
    if window_len < 1 or window_len > code.P:
        raise ValueError(f"window length must lie in [1, {code.P}]")
    ys = y.symbols
    base = weighted_sum(ys)
    weight = sum(ys)
    suffix_ones = [0] * (len(ys) + 1)
    for i in range(len(ys) - 1, -1, -1):
        suffix_ones[i] = suffix_ones[i + 1] + ys[i]
    found = set()
    lo = max(0, window_start)
    hi = min(len(ys), window_start + window_len - 1)
    for pos in range(lo, hi + 1):
        for s in (0, 1):
            if (weight + s) % 2 != code.b:
                continue
            # inserting s at pos shifts every later symbol right by one
            syn = base + (pos + 1) * s + suffix_ones[pos]
            if syn % code.P == code.a:
                found.add(ys[:pos] + (s,) + ys[pos:])
    if len(found) != 1:
        raise DecodingError(f"{len(found)} codewords consistent with the window")
    return Word(found.pop(), 2)


@lru_cache(maxsize=64)
def _codeword_table(code) -> np.ndarray:
    n = code.n
    if n > MAX_SCAN_N:
        raise ValueError(f"codeword enumeration is limited to n <= {MAX_SCAN_N}")
    weights = np.arange(n, 0, -1, dtype=np.int64)  # bit of value 2^(k) sits at position n-k
    chunks = []
    step = 1 << 20
    for start in range(0, 1 << n, step):
        v = np.arange(start, min(start + step, 1 << n), dtype=np.int64)
        bits = (v[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1
        syn = bits @ weights
        if isinstance(code, VTCode):
            ok = syn % (n + 1) == code.a
        else:
            ok = (syn % code.P == code.a) & (bits.sum(axis=1) % 2 == code.b)
        chunks.append(v[ok])
    return np.concatenate(chunks) if chunks else np.empty(0, np.int64)


def _int_to_word(v: int, n: int) -> Word:
    return Word(tuple((v >> (n - 1 - i)) & 1 for i in range(n)), 2)


def enumerate_codewords(code: VTCode | SVTCode) -> list[Word]:
    """All codewords in lexicographic order (n <= 28)."""
    n = code.n
    return [_int_to_word(int(v), n) for v in _codeword_table(code)]


def code_size(code: VTCode | SVTCode) -> int:
    return int(_codeword_table(code).shape[0])


def encode(code: VTCode | SVTCode, index: int) -> Word:
    """Message ``index`` mapped to the index-th codeword in lexicographic order."""
    table = _codeword_table(code)
    if not 0 <= index < table.shape[0]:
        raise ValueError(f"message index {index} outside [0, {table.shape[0]})")
    return _int_to_word(int(table[index]), code.n)


def sample_codeword_array(code: VTCode | SVTCode, rng, batch: int = 128) -> np.ndarray:
    """A uniformly random codeword by rejection sampling.

    Uniform words are drawn in batches and the first one meeting the
    congruences is returned, so every codeword is equally likely.
    """
    n = code.n
    weights = np.arange(1, n + 1, dtype=np.int64)
    while True:
        words = rng.integers(0, 2, size=(batch, n), dtype=np.int8)
        syn = words @ weights
        if isinstance(code, VTCode):
            ok = syn % (n + 1) == code.a
        else:
            ok = (syn % code.P == code.a) & (words.sum(axis=1) % 2 == code.b)
        hits = np.flatnonzero(ok)
        if hits.shape[0]:
            return words[hits[0]].copy()


def sample_codeword(code: VTCode | SVTCode, rng) -> Word:
    return Word.from_array(sample_codeword_array(code, rng), 2)
