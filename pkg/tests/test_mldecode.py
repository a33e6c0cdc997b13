import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mlrecon import oracle
from mlrecon.channels import ChannelSpec
from mlrecon.mldecode import (Status, _exact_scores, TieRule, decode_arrays, ml_decode_deletion,
                              ml_decode_insertion, score_candidate)
from mlrecon.seqcore import Word

from conftest import W

LEX = TieRule.LEXICOGRAPHIC_MIN


def test_deletion_examples():
    r = ml_decode_deletion([W("00"), W("00")], 3, tie=LEX)
    assert [str(w) for w in r.candidates] == ["000", "001", "010", "100"]
    assert r.scores == (9, 1, 1, 1)
    assert r.chosen == W("000") and r.tie_size == 1 and r.status is Status.OK
    assert r.top_score_log == pytest.approx(math.log(9))

    r = ml_decode_deletion([W("0"), W("1")], 2, tie=LEX)
    assert r.candidates.as_set() == {W("01"), W("10")}
    assert r.tie_size == 2 and r.chosen == W("01") and r.status is Status.TIE_BROKEN
    assert r.top_score_log == 0.0

    x = W("0110100")
    r = ml_decode_deletion([x, x], len(x), tie=LEX)
    assert r.chosen == x and r.tie_size == 1


def test_insertion_examples():
    assert ml_decode_insertion([W("010"), W("010")], 3, tie=LEX).chosen == W("010")
    r = ml_decode_insertion([W("00"), W("00")], 1, tie=LEX)
    assert [str(w) for w in r.candidates] == ["0"] and r.chosen == W("0")
    r = ml_decode_insertion([W("010"), W("001")], 2, tie=LEX)
    assert r.candidates.as_set() == {W("00"), W("01")}
    assert dict(zip((str(w) for w in r.candidates), r.scores)) == {"00": 1, "01": 2}
    assert r.chosen == W("01")


def test_no_candidate_and_overflow():
    r = ml_decode_deletion([W("0000"), W("1111")], 6, tie=LEX)
    assert r.status is Status.NO_CANDIDATE and r.chosen is None
    r = ml_decode_deletion([W("0"), W("1")], 12, tie=LEX, cap=10)
    assert r.status is Status.CANDIDATE_OVERFLOW and r.chosen is None


def test_argument_errors():
    with pytest.raises(ValueError):
        ml_decode_deletion([W("0101")], 3)
    with pytest.raises(ValueError):
        ml_decode_insertion([W("01")], 3)
    with pytest.raises(ValueError):
        ml_decode_deletion([], 3)
    with pytest.raises(ValueError):
        ml_decode_deletion([W("0"), W("1")], 2, tie=TieRule.UNIFORM_RANDOM, rng=None)
    with pytest.raises(ValueError):
        score_candidate(W("01"), [W("011")], "del")


def test_uniform_ties_are_uniform():
    rng = np.random.default_rng(3)
    picks = [str(ml_decode_deletion([W("0"), W("1")], 2, rng=rng).chosen) for _ in range(4000)]
    share = picks.count("01") / len(picks)
    assert abs(share - 0.5) < 4 * (0.25 / len(picks)) ** 0.5


def test_single_trace_and_noiseless():
    rng = np.random.default_rng(0)
    for _ in range(50):
        x = Word(tuple(int(v) for v in rng.integers(0, 3, 40)), 3)
        assert ml_decode_deletion([x], len(x), tie=LEX).chosen == x
        assert ml_decode_deletion([x, x], len(x), tie=LEX).chosen == x
        assert ml_decode_insertion([x, x], len(x), tie=LEX).chosen == x


def test_exact_scores_beyond_float_precision():
    c = Word((0,) * 120, 2)
    y = Word((0,) * 60, 2)
    log_score, exact = score_candidate(c, [y, y], "del")
    assert exact == math.comb(120, 60) ** 2
    assert log_score == pytest.approx(2 * math.log(math.comb(120, 60)))
    # the array path falls back to exact integers once a count passes 2^53
    cands = np.zeros((2, 120), dtype=np.int8)
    cands[1, -1] = 1
    y = np.zeros(60, dtype=np.int8)
    scores = _exact_scores(cands, [y, y], True)
    assert scores == [math.comb(120, 60) ** 2, math.comb(119, 60) ** 2]


# oracle equivalence

@lru_cache(maxsize=None)
def _prob(x, y, family, p):
    return oracle.channel_probability(Word(x, 2), Word(y, 2), family, p, 2)


def bayes_top(traces, n, family, p, code=None):
    best, group = None, set()
    for xs in itertools.product((0, 1), repeat=n):
        if code is not None and not code.contains(Word(xs, 2)):
            continue
        prob = 1
        for y in traces:
            prob *= _prob(xs, y.symbols, family, p)
            if not prob:
                break
        if not prob:
            continue
        if best is None or prob > best:
            best, group = prob, {xs}
        elif prob == best:
            group.add(xs)
    return group


def decoder_top(traces, n, deletion=True, code=None, free=False):
    r = decode_arrays([t.as_array() for t in traces], n, 2, deletion=deletion, code=code,
                      tie=LEX, free=free)
    if r.chosen is None:
        return set()
    best = max(r.scores)
    return {tuple(int(v) for v in w) for w, s in zip(r.words, r.scores) if s == best}


def test_frozen_bayes_groups(golden):
    for key, entry in golden["bayes_top"].items():
        fam, traces, n, p = key.split("|")
        traces = [W(t) for t in traces.split(",")]
        top = decoder_top(traces, int(n), deletion=fam == "deletion")
        assert {"".join(map(str, w)) for w in top} == set(entry["top"]), key


@pytest.mark.parametrize("p", [Fraction(1, 10), Fraction(3, 10)])
def test_single_deletion_pairs_match_bayes_exhaustive(p):
    for n in range(1, 7):
        seen = set()
        for xs in itertools.product((0, 1), repeat=n):
            for i, j in itertools.product(range(n), repeat=2):
                y1 = Word(xs[:i] + xs[i + 1:], 2)
                y2 = Word(xs[:j] + xs[j + 1:], 2)
                if (y1, y2) in seen:
                    continue
                seen.add((y1, y2))
                assert decoder_top([y1, y2], n) == bayes_top((y1, y2), n, "deletion", p)


def test_random_trace_pairs_match_bayes():
    rng = np.random.default_rng(11)
    p = Fraction(3, 10)
    for case in range(10_000):
        n = 7 + case % 2
        x = rng.integers(0, 2, n).astype(np.int8)
        ys = [Word.from_array(x[rng.random(n) >= 0.3], 2) for _ in range(2)]
        assert decoder_top(ys, n) == bayes_top(tuple(ys), n, "deletion", p)


def test_three_traces_match_bayes():
    rng = np.random.default_rng(12)
    for _ in range(300):
        n = int(rng.integers(3, 7))
        x = rng.integers(0, 2, n).astype(np.int8)
        ys = [Word.from_array(x[rng.random(n) >= 0.25], 2) for _ in range(3)]
        assert decoder_top(ys, n) == bayes_top(tuple(ys), n, "deletion", Fraction(1, 4))


def test_insertion_matches_embedding_weighted_bayes():
    rng = np.random.default_rng(13)
    spec = ChannelSpec("insertion", 0.2)
    for _ in range(300):
        n = int(rng.integers(1, 6))
        x = rng.integers(0, 2, n).astype(np.int8)
        ys = []
        for _ in range(2):
            gaps = np.flatnonzero(rng.random(n + 1) < 0.3)
            ys.append(Word.from_array(np.insert(x, gaps, rng.integers(0, 2, gaps.shape[0])), 2))
        ranked = oracle.bayes_ml_by_scan(ys, n, 2, spec, weight="embedding")
        expect = {w.symbols for w in oracle.top_group(ranked)}
        assert decoder_top(ys, n, deletion=False) == expect


def test_insertion_embedding_weight_is_not_exact():
    # Emb prefers 0 (two embeddings); the one-per-gap channel can only produce 010 from 1
    y = W("010")
    assert ml_decode_insertion([y], 1, tie=LEX).chosen == W("0")
    ranked = oracle.bayes_ml_by_scan([y], 1, 2, ChannelSpec("insertion", 0.1))
    assert oracle.top_group(ranked) == {W("1")}


def test_free_length_matches_bayes_over_lengths():
    p = Fraction(1, 100)
    for n in range(1, 6):
        for xs in itertools.product((0, 1), repeat=n):
            for i, j in itertools.product(range(n), repeat=2):
                y1 = Word(xs[:i] + xs[i + 1:], 2)
                y2 = Word(xs[:j] + xs[j + 1:], 2)
                best, group = None, set()
                for m in range(n + 1):
                    for cand in bayes_top((y1, y2), m, "deletion", p):
                        prob = _prob(cand, y1.symbols, "deletion", p) * _prob(cand, y2.symbols, "deletion", p)
                        if best is None or prob > best:
                            best, group = prob, {cand}
                        elif prob == best:
                            group.add(cand)
                assert decoder_top([y1, y2], n, free=True) == group


@settings(max_examples=100)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=60), st.integers(0, 2**32 - 1))
def test_fixed_length_truth_is_a_candidate(symbols, seed):
    x = np.array(symbols, dtype=np.int8)
    rng = np.random.default_rng(seed)
    ys = [x[rng.random(x.shape[0]) >= 0.1] for _ in range(2)]
    r = decode_arrays(ys, x.shape[0], 4, deletion=True, tie=LEX)
    assert r.status in (Status.OK, Status.TIE_BROKEN)
    assert any(np.array_equal(w, x) for w in r.words)
    assert r.tie_size == sum(s == max(r.scores) for s in r.scores)
