"""Deliberately naive reference implementations.

Nothing here calls the dynamic programs being checked: embeddings are
counted over index subsets and channel probabilities are summed over
explicit error patterns.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from .channels import ChannelSpec
from .seqcore import Word

MAX_SCAN = 2**22


def embedding_by_enumeration(x: Word, y: Word) -> int:
    if len(x) > 20:
        raise ValueError("embedding_by_enumeration is limited to |x| <= 20")
    xs, ys = x.symbols, tuple(y.symbols)
    return sum(1 for idx in combinations(range(len(xs)), len(ys))
               if tuple(xs[i] for i in idx) == ys)


def _contains(sup, sub) -> bool:
    it = iter(sup)
    return all(any(s == c for c in it) for s in sub)


def all_words(n: int, q: int):
    for syms in product(range(q), repeat=n):
        yield Word(syms, q)


def supersequences_by_scan(y1: Word, y2: Word, L: int) -> set[Word]:
    q = y1.q
    if q ** L > MAX_SCAN:
        raise ValueError("scan too large")
    return {w for w in all_words(L, q)
            if _contains(w.symbols, y1.symbols) and _contains(w.symbols, y2.symbols)}


def subsequences_by_scan(y1: Word, y2: Word, L: int) -> set[Word]:
    q = y1.q
    if q ** L > MAX_SCAN:
        raise ValueError("scan too large")
    return {w for w in all_words(L, q)
            if _contains(y1.symbols, w.symbols) and _contains(y2.symbols, w.symbols)}


def channel_probability(x: Word, y: Word, family: str, p, q: int):
    """Pr{y | x} summed over every explicit error pattern."""
    n = len(x)
    xs, ys = x.symbols, tuple(y.symbols)
    total = 0 * p
    if family == "deletion":
        k = n - len(ys)
        if k < 0:
            return total
        for kept in combinations(range(n), len(ys)):
            if tuple(xs[i] for i in kept) == ys:
                total += p ** k * (1 - p) ** (n - k)
        return total
    if family == "insertion":
        k = len(ys) - n
        if k < 0 or k > n + 1:
            return total
        for gaps in combinations(range(n + 1), k):
            for syms in product(range(q), repeat=k):
                out = list(xs)
                for g, s in sorted(zip(gaps, syms), reverse=True):
                    out.insert(g, s)
                if tuple(out) == ys:
                    total += (p / q) ** k * (1 - p) ** (n + 1 - k)
        return total
    raise ValueError(f"oracle supports deletion/insertion, not {family!r}")


def embedding_weight(x: Word, y: Word, family: str, p, q: int):
    """Unnormalised weight p^k * Emb (or (p/q)^k * Emb) by subset counting."""
    if family == "deletion":
        if len(y) > len(x):
            return 0 * p
        return p ** (len(x) - len(y)) * embedding_by_enumeration(x, y)
    if len(y) < len(x):
        return 0 * p
    return (p / q) ** (len(y) - len(x)) * embedding_by_enumeration(y, x)


def bayes_ml_by_scan(traces, n: int, q: int, spec: ChannelSpec, code=None,
                     weight: str = "exact", p=None):
    """Rank every length-n word by the product of per-trace likelihoods.

    Returns ``[(word, probability), ...]`` sorted by decreasing probability
    (ties in lexicographic order), dropping zero-probability words.  With
    ``weight="embedding"`` the embedding-count weights replace exact
    probabilities.
    """
    if q ** n > MAX_SCAN:
        raise ValueError("scan too large")
    p = Fraction(str(spec.p)) if p is None else p
    ranked = []
    for w in all_words(n, q):
        if code is not None and not code.contains(w):
            continue
        prob = 1
        for y in traces:
            if weight not in ("exact", "embedding"):
                raise ValueError(f"unknown weight {weight!r}")
            if weight == "exact":
                prob *= channel_probability(w, y, spec.family, p, q)
            else:
                prob *= embedding_weight(w, y, spec.family, p, q)
            if prob == 0:
                break
        if prob:
            ranked.append((w, prob))
    ranked.sort(key=lambda wp: (-wp[1], wp[0].symbols))
    return ranked


def ranking_groups(ranked) -> list[set[Word]]:
    """Collapse a ranked list into tie groups, best first."""
    groups: list[set[Word]] = []
    last = None
    for w, prob in ranked:
        if prob != last:
            groups.append(set())
            last = prob
        groups[-1].add(w)
    return groups


def top_group(ranked) -> set[Word]:
    groups = ranking_groups(ranked)
    return groups[0] if groups else set()
