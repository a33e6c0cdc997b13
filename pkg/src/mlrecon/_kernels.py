"""Compiled inner loops.

Words are passed as int8 arrays.  Tables are banded on the diagonal offset
``d = i - j``; cells outside ``[dlo, dhi]`` are treated as unreachable.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INF = 1 << 28
# largest integer a float64 represents exactly is 2**53
EXACT_LIMIT = float(2**53)

CODE_NONE = 0
CODE_VT = 1
CODE_SVT = 2


@njit(cache=True)
def scs_table(a, b, dlo, dhi):
    """SCS length of every suffix pair ``(a[i:], b[j:])`` inside the band."""
    m1 = a.shape[0]
    m2 = b.shape[0]
    width = dhi - dlo + 1
    T = np.full((m1 + 1, width), INF, dtype=np.int32)
    for i in range(m1, -1, -1):
        for d in range(dlo, dhi + 1):
            j = i - d
            if j < 0 or j > m2:
                continue
            if i == m1:
                T[i, d - dlo] = m2 - j
                continue
            if j == m2:
                T[i, d - dlo] = m1 - i
                continue
            best = INF
            if a[i] == b[j]:
                best = T[i + 1, d - dlo]
            if d + 1 <= dhi:
                v = T[i + 1, d + 1 - dlo]
                if v < best:
                    best = v
            if d - 1 >= dlo:
                v = T[i, d - 1 - dlo]
                if v < best:
                    best = v
            if best < INF:
                T[i, d - dlo] = best + 1
    return T


@njit(cache=True)
def lcs_table(a, b, dlo, dhi):
    """LCS length of every suffix pair inside the band (-1 if unreachable)."""
    m1 = a.shape[0]
    m2 = b.shape[0]
    width = dhi - dlo + 1
    T = np.full((m1 + 1, width), -1, dtype=np.int32)
    for i in range(m1, -1, -1):
        for d in range(dlo, dhi + 1):
            j = i - d
            if j < 0 or j > m2:
                continue
            if i == m1 or j == m2:
                T[i, d - dlo] = 0
                continue
            best = -1
            if a[i] == b[j] and T[i + 1, d - dlo] >= 0:
                best = T[i + 1, d - dlo] + 1
            if d + 1 <= dhi:
                v = T[i + 1, d + 1 - dlo]
                if v > best:
                    best = v
            if d - 1 >= dlo:
                v = T[i, d - 1 - dlo]
                if v > best:
                    best = v
            T[i, d - dlo] = best
    return T


@njit(cache=True)
def _code_accepts(syn, wt, code_kind, modulus, residue, parity):
    if code_kind == CODE_VT:
        return syn % modulus == residue
    if code_kind == CODE_SVT:
        return syn % modulus == residue and wt % 2 == parity
    return True


@njit(cache=True)
def _grow(buf, rows):
    new = np.empty((max(2 * buf.shape[0], rows), buf.shape[1]), dtype=np.int8)
    new[: buf.shape[0]] = buf
    return new


@njit(cache=True)
def enumerate_supersequences(a, b, L, q, T, dlo, dhi, cap,
                             code_kind, modulus, residue, parity):
    """All common supersequences of ``a`` and ``b`` of length exactly ``L``.

    Walks the deterministic greedy-matching automaton on states ``(i, j)``
    with pruning by ``T``; each word is reached by exactly one path, so no
    duplicate filtering is needed.  Returns ``(words, total, truncated)``
    where ``words`` holds only the code-accepted words and ``total`` counts
    every common supersequence visited.
    """
    m1 = a.shape[0]
    m2 = b.shape[0]
    out = np.empty((16, max(L, 1)), dtype=np.int8)
    n_out = 0
    total = 0
    truncated = False
    if L < 0 or T[0, 0 - dlo] > L:
        return out[:0, :L], total, truncated
    path = np.zeros(max(L, 1), dtype=np.int8)
    ist = np.zeros(L + 1, dtype=np.int64)
    jst = np.zeros(L + 1, dtype=np.int64)
    nxt = np.zeros(L + 1, dtype=np.int64)
    syn = np.zeros(L + 1, dtype=np.int64)
    wt = np.zeros(L + 1, dtype=np.int64)
    k = 0
    while k >= 0:
        if k == L:
            total += 1
            if total > cap:
                truncated = True
                break
            if _code_accepts(syn[k], wt[k], code_kind, modulus, residue, parity):
                if n_out == out.shape[0]:
                    out = _grow(out, n_out + 1)
                out[n_out, :L] = path[:L]
                n_out += 1
            k -= 1
            continue
        s = nxt[k]
        if s >= q:
            k -= 1
            continue
        nxt[k] = s + 1
        i = ist[k]
        j = jst[k]
        i2 = i + 1 if (i < m1 and a[i] == s) else i
        j2 = j + 1 if (j < m2 and b[j] == s) else j
        d = i2 - j2
        if d < dlo or d > dhi:
            continue
        if T[i2, d - dlo] > L - k - 1:
            continue
        path[k] = s
        ist[k + 1] = i2
        jst[k + 1] = j2
        nxt[k + 1] = 0
        syn[k + 1] = syn[k] + (k + 1) * s
        wt[k + 1] = wt[k] + s
        k += 1
    return out[:n_out, :L], total, truncated


@njit(cache=True)
def next_occurrence(a, q):
    """``nx[i, s]`` = smallest index >= i holding symbol s, or len(a)."""
    m = a.shape[0]
    nx = np.empty((m + 1, q), dtype=np.int64)
    for s in range(q):
        nx[m, s] = m
    for i in range(m - 1, -1, -1):
        for s in range(q):
            nx[i, s] = nx[i + 1, s]
        nx[i, a[i]] = i
    return nx


@njit(cache=True)
def enumerate_subsequences(a, b, L, q, T, dlo, dhi, cap,
                           code_kind, modulus, residue, parity):
    """All common subsequences of ``a`` and ``b`` of length exactly ``L``.

    Same scheme as :func:`enumerate_supersequences` on the greedy
    embedding automaton, pruned by the banded suffix LCS table ``T``.
    """
    m1 = a.shape[0]
    m2 = b.shape[0]
    out = np.empty((16, max(L, 1)), dtype=np.int8)
    n_out = 0
    total = 0
    truncated = False
    if L < 0 or dlo > 0 or dhi < 0 or T[0, 0 - dlo] < L:
        return out[:0, :L], total, truncated
    na = next_occurrence(a, q)
    nb = next_occurrence(b, q)
    path = np.zeros(max(L, 1), dtype=np.int8)
    ist = np.zeros(L + 1, dtype=np.int64)
    jst = np.zeros(L + 1, dtype=np.int64)
    nxt = np.zeros(L + 1, dtype=np.int64)
    syn = np.zeros(L + 1, dtype=np.int64)
    wt = np.zeros(L + 1, dtype=np.int64)
    k = 0
    while k >= 0:
        if k == L:
            total += 1
            if total > cap:
                truncated = True
                break
            if _code_accepts(syn[k], wt[k], code_kind, modulus, residue, parity):
                if n_out == out.shape[0]:
                    out = _grow(out, n_out + 1)
                out[n_out, :L] = path[:L]
                n_out += 1
            k -= 1
            continue
        s = nxt[k]
        if s >= q:
            k -= 1
            continue
        nxt[k] = s + 1
        pi = na[ist[k], s]
        pj = nb[jst[k], s]
        if pi >= m1 or pj >= m2:
            continue
        i2 = pi + 1
        j2 = pj + 1
        d = i2 - j2
        if d < dlo or d > dhi:
            continue
        if T[i2, d - dlo] < L - k - 1:
            continue
        path[k] = s
        ist[k + 1] = i2
        jst[k + 1] = j2
        nxt[k + 1] = 0
        syn[k + 1] = syn[k] + (k + 1) * s
        wt[k + 1] = wt[k] + s
        k += 1
    return out[:n_out, :L], total, truncated


@njit(cache=True)
def embedding_float(x, y):
    """Embedding number of ``y`` in ``x`` as float64, banded on |x|-|y|.

    Returns ``(value, exact)``; ``exact`` is False once any table entry
    reaches 2**53, after which the float may have lost integer precision.
    """
    n = x.shape[0]
    m = y.shape[0]
    e = n - m
    if e < 0:
        return 0.0, True
    E = np.zeros(m + 1, dtype=np.float64)
    E[0] = 1.0
    exact = True
    for k in range(1, n + 1):
        s = x[k - 1]
        jhi = min(k, m)
        jlo = max(1, k - e)
        for j in range(jhi, jlo - 1, -1):
            if y[j - 1] == s:
                E[j] += E[j - 1]
                if E[j] >= EXACT_LIMIT:
                    exact = False
    return E[m], exact


@njit(cache=True)
def score_batch(cands, traces, offsets, deletion):
    """Embedding numbers of every (candidate, trace) pair.

    ``traces`` is the concatenation of all traces with boundaries in
    ``offsets``.  For deletion the candidate is the supersequence, for
    insertion the trace is.
    """
    K = cands.shape[0]
    t = offsets.shape[0] - 1
    vals = np.zeros((K, t), dtype=np.float64)
    exact = np.ones((K, t), dtype=np.bool_)
    for r in range(K):
        c = cands[r]
        for i in range(t):
            y = traces[offsets[i]:offsets[i + 1]]
            if deletion:
                v, ok = embedding_float(c, y)
            else:
                v, ok = embedding_float(y, c)
            vals[r, i] = v
            exact[r, i] = ok
    return vals, exact


@njit(cache=True)
def lcs_length(a, b):
    m2 = b.shape[0]
    prev = np.zeros(m2 + 1, dtype=np.int32)
    cur = np.zeros(m2 + 1, dtype=np.int32)
    for i in range(a.shape[0]):
        cur[0] = 0
        for j in range(m2):
            if a[i] == b[j]:
                cur[j + 1] = prev[j] + 1
            elif prev[j + 1] >= cur[j]:
                cur[j + 1] = prev[j + 1]
            else:
                cur[j + 1] = cur[j]
        prev, cur = cur, prev
    return prev[m2]


@njit(cache=True)
def alternation_end(x):
    """``end[a]`` = largest b with x[a..b] a two-symbol alternation, else a."""
    n = x.shape[0]
    end = np.arange(n)
    for a in range(n - 2, -1, -1):
        if x[a] == x[a + 1]:
            end[a] = a
        elif a + 2 < n and x[a + 2] == x[a] and end[a + 1] >= a + 2:
            end[a] = end[a + 1]
        else:
            end[a] = a + 1
    return end


@njit(cache=True)
def run_ids(x):
    n = x.shape[0]
    ids = np.zeros(n, dtype=np.int64)
    for i in range(1, n):
        ids[i] = ids[i - 1] + (1 if x[i] != x[i - 1] else 0)
    return ids


@njit(cache=True)
def count_deletion_events(x, del1, del2):
    """Count cross-channel deletion pairs inside one run / spanning an alternation."""
    rid = run_ids(x)
    alt = alternation_end(x)
    runs = 0
    alts = 0
    for u in del1:
        for v in del2:
            lo = min(u, v)
            hi = max(u, v)
            if rid[lo] == rid[hi]:
                runs += 1
            elif alt[lo] >= hi:
                alts += 1
    return runs, alts


@njit(cache=True)
def _canonical_gap(x, g, s):
    while g > 0 and x[g - 1] == s:
        g -= 1
    return g


@njit(cache=True)
def count_insertion_events(x, gaps1, syms1, gaps2, syms2):
    """Count cross-channel insertion pairs that coincide / frame an alternation.

    A run pair yields the same word in both channels.  An alternating pair
    at gaps ``gl < gr`` makes ``sl + x[gl:gr] + sr`` a two-symbol
    alternation.
    """
    alt = alternation_end(x)
    runs = 0
    alts = 0
    for u in range(gaps1.shape[0]):
        g1 = gaps1[u]
        s1 = syms1[u]
        c1 = _canonical_gap(x, g1, s1)
        for v in range(gaps2.shape[0]):
            g2 = gaps2[v]
            s2 = syms2[v]
            if s1 == s2 and c1 == _canonical_gap(x, g2, s2):
                runs += 1
                continue
            if g1 == g2:
                continue
            if g1 < g2:
                gl, sl, gr, sr = g1, s1, g2, s2
            else:
                gl, sl, gr, sr = g2, s2, g1, s1
            # framed segment x[gl:gr] (length >= 1) plus both inserted ends
            if sl == x[gl] or sr == x[gr - 1]:
                continue
            if gr - gl == 1:
                if sl == sr:
                    alts += 1
            elif alt[gl] >= gr - 1 and sl == x[gl + 1] and sr == x[gr - 2]:
                alts += 1
    return runs, alts
