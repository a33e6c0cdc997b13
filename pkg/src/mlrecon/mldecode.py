"""Maximum-likelihood reconstruction from t deletion or insertion traces.

The decoder enumerates candidates (common supersequences for deletions,
common subsequences for insertions), optionally intersects them with a
code, and ranks them by the product of embedding numbers.

Two length rules are supported:

* fixed (default): candidates have exactly the transmitted length n.  The
  p-dependent factor of the likelihood is then identical for all
  candidates and drops out.
* free: the decoder may output any length.  Every extra symbol in a
  deletion candidate costs a factor p^t (every missing symbol in an
  insertion candidate likewise), so for small p the maximiser is found
  among the shortest common supersequences (longest common subsequences);
  those are the candidates used.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as K
from .seqcore import Word
from .subseq import (DEFAULT_CAP, NO_CODE, CandidateSet, lcs_length_banded,
                     scs_length_banded, subsequence_array, supersequence_array)


class TieRule(enum.Enum):
    UNIFORM_RANDOM = "uniform_random"
    LEXICOGRAPHIC_MIN = "lexicographic_min"


class Status(enum.Enum):
    OK = "ok"
    TIE_BROKEN = "tie_broken"
    NO_CANDIDATE = "no_candidate"
    CANDIDATE_OVERFLOW = "candidate_overflow"


@dataclass(frozen=True)
class DecodeResult:
    chosen: Word | None
    candidates: CandidateSet
    scores: tuple[int, ...]
    top_score_log: float
    tie_size: int
    status: Status

    @property
    def ok(self) -> bool:
        return self.status in (Status.OK, Status.TIE_BROKEN)


@dataclass
class RawDecode:
    """Array-level decode outcome used by the simulation loop."""

    chosen: np.ndarray | None
    status: Status
    tie_size: int
    n_candidates: int
    words: np.ndarray
    scores: list[int]


def _code_params(code, length: int):
    if code is None:
        return NO_CODE
    if code.n != length:
        return None
    return code.kernel_params()


def _exact_scores(cands: np.ndarray, traces: list[np.ndarray], deletion: bool) -> list[int]:
    """Exact integer products of embedding numbers, one per candidate."""
    flat = np.concatenate(traces) if traces else np.empty(0, np.int8)
    offsets = np.zeros(len(traces) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([t.shape[0] for t in traces])
    vals, exact = K.score_batch(cands, flat.astype(np.int8), offsets, deletion)
    scores = []
    for r in range(cands.shape[0]):
        prod = 1
        for i in range(len(traces)):
            if exact[r, i]:
                e = int(vals[r, i])
            else:
                e = _embedding_exact(cands[r], traces[i], deletion)
            prod *= e
        scores.append(prod)
    return scores


def _embedding_exact(c: np.ndarray, y: np.ndarray, deletion: bool) -> int:
    from .subseq import embedding_number

    q = max(int(c.max(initial=0)), int(y.max(initial=0))) + 1
    cw = Word(tuple(int(v) for v in c), max(q, 2))
    yw = Word(tuple(int(v) for v in y), cw.q)
    return embedding_number(cw, yw) if deletion else embedding_number(yw, cw)


def _pair_candidates(a, b, length, q, cap, params, deletion):
    if deletion:
        return supersequence_array(a, b, length, q, cap, params)
    return subsequence_array(a, b, length, q, cap, params)


def _contains(sup: np.ndarray, sub: np.ndarray) -> bool:
    j = 0
    m = sub.shape[0]
    for s in sup:
        if j < m and s == sub[j]:
            j += 1
    return j == m


def _candidates(traces, n, q, code, cap, deletion, free):
    """Returns ``(words, total, truncated, length)``; words may be empty."""
    order = sorted(range(len(traces)), key=lambda i: traces[i].shape[0])
    if len(traces) == 1:
        a = b = traces[0]
    else:
        a, b = traces[order[0]], traces[order[1]]
    rest = [traces[i] for i in order[2:]]
    if deletion:
        if free:
            scs = scs_length_banded(a, b, n)
            if scs is None:
                return np.empty((0, n), np.int8), 0, False, n
            lengths = range(scs, n + 1)
        else:
            lengths = [n]
    else:
        if free:
            lcs = lcs_length_banded(a, b, n)
            if lcs is None:
                return np.empty((0, n), np.int8), 0, False, n
            lengths = range(lcs, n - 1, -1)
        else:
            lengths = [n]
    for length in lengths:
        params = _code_params(code, length)
        if params is None:
            continue
        words, total, truncated = _pair_candidates(a, b, length, q, cap, params, deletion)
        if rest and words.shape[0]:
            keep = [r for r in range(words.shape[0])
                    if all(_contains(words[r], y) if deletion else _contains(y, words[r])
                           for y in rest)]
            words = words[keep]
        if words.shape[0] or truncated:
            return words, total, truncated, length
    return np.empty((0, n), np.int8), 0, False, n


def decode_arrays(traces: Sequence[np.ndarray], n: int, q: int, *, deletion: bool,
                  code=None, tie: TieRule = TieRule.UNIFORM_RANDOM,
                  cap: int = DEFAULT_CAP, rng=None, free: bool = False) -> RawDecode:
    traces = [np.ascontiguousarray(t, dtype=np.int8) for t in traces]
    if not traces:
        raise ValueError("at least one trace is required")
    for t in traces:
        if deletion and t.shape[0] > n:
            raise ValueError(f"deletion trace of length {t.shape[0]} exceeds n={n}")
        if not deletion and t.shape[0] < n:
            raise ValueError(f"insertion trace of length {t.shape[0]} is shorter than n={n}")
    words, total, truncated, _ = _candidates(traces, n, q, code, cap, deletion, free)
    if truncated:
        return RawDecode(None, Status.CANDIDATE_OVERFLOW, 0, int(total), words, [])
    if words.shape[0] == 0:
        return RawDecode(None, Status.NO_CANDIDATE, 0, 0, words, [])
    scores = _exact_scores(words, traces, deletion)
    best = max(scores)
    # kernels emit candidates in lexicographic order, so top[0] is the lex-min
    top = [r for r, s in enumerate(scores) if s == best]
    pick, status = _pick(top, tie, rng)
    return RawDecode(words[pick].copy(), status, len(top), words.shape[0], words, scores)


def score_candidate(c: Word, traces: Sequence[Word], direction: str = "del"):
    """Return ``(log_score, exact_product)`` of a candidate against traces.

    ``log_score`` is the sum of log embedding numbers (``-inf`` when some
    trace is not embeddable).
    """
    from .subseq import embedding_number

    if direction not in ("del", "ins"):
        raise ValueError("direction must be 'del' or 'ins'")
    prod = 1
    for y in traces:
        if direction == "del":
            if len(y) > len(c):
                raise ValueError("deletion trace longer than candidate")
            prod *= embedding_number(c, y)
        else:
            if len(y) < len(c):
                raise ValueError("insertion trace shorter than candidate")
            prod *= embedding_number(y, c)
    return _log_int(prod), prod


def _log_int(v: int) -> float:
    if v <= 0:
        return float("-inf")
    return math.log(v)


def _decode(traces, n, code, tie, cap, rng, free, deletion) -> DecodeResult:
    traces = list(traces)
    if not traces:
        raise ValueError("at least one trace is required")
    q = traces[0].q
    for y in traces:
        if y.q != q:
            raise ValueError("traces use different alphabets")
    if isinstance(tie, str):
        tie = TieRule(tie)
    raw = decode_arrays([y.as_array() for y in traces], n, q, deletion=deletion,
                        code=code, tie=tie, cap=cap, rng=rng, free=free)
    length = raw.words.shape[1] if raw.words.ndim == 2 else n
    cands = CandidateSet(tuple(Word.from_array(w, q) for w in raw.words), length,
                         raw.status is Status.CANDIDATE_OVERFLOW)
    chosen = Word.from_array(raw.chosen, q) if raw.chosen is not None else None
    top = _log_int(max(raw.scores)) if raw.scores else float("-inf")
    return DecodeResult(chosen, cands, tuple(raw.scores), top, raw.tie_size, raw.status)


def ml_decode_deletion(traces: Sequence[Word], n: int, code=None,
                       tie: TieRule | str = TieRule.UNIFORM_RANDOM,
                       cap: int = DEFAULT_CAP, rng=None, free: bool = False) -> DecodeResult:
    """ML estimate of the word sent through t deletion channels."""
    return _decode(traces, n, code, tie, cap, rng, free, deletion=True)


def ml_decode_insertion(traces: Sequence[Word], n: int, code=None,
                        tie: TieRule | str = TieRule.UNIFORM_RANDOM,
                        cap: int = DEFAULT_CAP, rng=None, free: bool = False) -> DecodeResult:
    """ML estimate of the word sent through t insertion channels."""
    return _decode(traces, n, code, tie, cap, rng, free, deletion=False)


def _pick(idx: list[int], tie: TieRule, rng):
    if len(idx) == 1:
        return idx[0], Status.OK
    if tie is TieRule.LEXICOGRAPHIC_MIN:
        return idx[0], Status.TIE_BROKEN
    if rng is None:
        raise ValueError("uniform_random tie rule needs an rng")
    return idx[int(rng.integers(len(idx)))], Status.TIE_BROKEN


def two_step_decode_arrays(traces: Sequence[np.ndarray], n: int, code, *,
                           tie: TieRule = TieRule.UNIFORM_RANDOM,
                           cap: int = DEFAULT_CAP, rng=None) -> RawDecode:
    """Shortest-supersequence ML decoding followed by the code's own decoder.

    Candidates are the shortest common supersequences of the traces.

    * Their length is n: the best-scoring codewords among them win.
    * Their length is n-1 and the code is VT: the single-deletion decoder
      is run on every member of the top-scoring group and the distinct
      results are kept.
    * Otherwise the top-scoring group is returned unchanged.

    An SVT code locates a deletion only inside a known window.  When the
    shortest supersequences miss a symbol the two traces agree around it,
    so no window is available and the length n-1 group is kept as is.
    """
    from .codes import DecodingError, VTCode, vt_decode_single_deletion

    raw = decode_arrays(traces, n, 2, deletion=True, code=None, tie=tie, cap=cap,
                        rng=rng, free=True)
    if raw.chosen is None:
        return raw
    words, scores = raw.words, raw.scores
    length = words.shape[1]
    finals: list[np.ndarray] = []
    if length == n:
        ok = [r for r in range(words.shape[0]) if code.contains(Word.from_array(words[r], 2))]
        if ok:
            best = max(scores[r] for r in ok)
            finals = [words[r] for r in ok if scores[r] == best]
    elif length == n - 1 and isinstance(code, VTCode):
        best = max(scores)
        seen = set()
        for r in range(words.shape[0]):
            if scores[r] != best:
                continue
            try:
                c = vt_decode_single_deletion(code, Word.from_array(words[r], 2))
            except DecodingError:
                continue
            if c.symbols not in seen:
                seen.add(c.symbols)
                finals.append(c.as_array())
        finals.sort(key=lambda a: tuple(a))
    if not finals:
        best = max(scores)
        finals = [words[r] for r in range(words.shape[0]) if scores[r] == best]
    pick, status = _pick(list(range(len(finals))), tie, rng)
    return RawDecode(np.asarray(finals[pick], dtype=np.int8).copy(), status, len(finals),
                     raw.n_candidates, raw.words, raw.scores)
