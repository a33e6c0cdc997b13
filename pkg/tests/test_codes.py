import itertools

import numpy as np
import pytest

from mlrecon.codes import (DecodingError, SVTCode, VTCode, code_size, default_svt_window,
                           encode, enumerate_codewords, sample_codeword_array, svt_contains,
                           svt_decode_single_deletion, vt_contains, vt_decode_single_deletion,
                           vt_syndrome, weighted_sum)
from mlrecon.mldecode import Status, TieRule, decode_arrays, two_step_decode_arrays
from mlrecon.seqcore import Word, is_two_symbol_alternation

from conftest import W

LEX = TieRule.LEXICOGRAPHIC_MIN


def test_syndrome_examples():
    assert vt_syndrome(W("1001")) == 0
    assert vt_syndrome(W("0101")) == 1
    assert vt_syndrome(W("0000")) == 0
    assert vt_contains(VTCode(4, 0), W("1001"))
    assert not vt_contains(VTCode(4, 0), W("0101"))
    assert svt_contains(SVTCode(4, 2, 0, 3), W("0110"))
    assert not svt_contains(SVTCode(4, 2, 0, 3), W("0010"))
    with pytest.raises(ValueError):
        vt_contains(VTCode(4, 0), W("01"))
    with pytest.raises(ValueError):
        vt_syndrome(W("012", 3))


def test_parameter_validation():
    with pytest.raises(ValueError):
        VTCode(4, 5)
    with pytest.raises(ValueError):
        SVTCode(4, 3, 0, 3)
    with pytest.raises(ValueError):
        SVTCode(4, 0, 2, 3)
    assert default_svt_window(450) == 11


def test_decode_examples():
    assert vt_decode_single_deletion(VTCode(4, 0), W("001")) == W("1001")
    assert vt_decode_single_deletion(VTCode(4, 0), W("000")) == W("0000")
    assert svt_decode_single_deletion(SVTCode(4, 2, 0, 3), W("010"), 1, 3) == W("0110")
    with pytest.raises(ValueError):
        vt_decode_single_deletion(VTCode(4, 0), W("01"))
    with pytest.raises(ValueError):
        svt_decode_single_deletion(SVTCode(4, 2, 0, 3), W("010"), 0, 4)


def test_enumeration():
    assert [str(w) for w in enumerate_codewords(VTCode(4, 0))] == ["0000", "0110", "1001", "1111"]
    assert W("0000") in enumerate_codewords(SVTCode(4, 0, 0, 3))
    for n in range(1, 11):
        assert sum(code_size(VTCode(n, a)) for a in range(n + 1)) == 2 ** n
        for P in (2, 3, 5):
            assert sum(code_size(SVTCode(n, a, b, P)) for a in range(P) for b in (0, 1)) == 2 ** n
    code = VTCode(7, 3)
    words = enumerate_codewords(code)
    assert all(vt_contains(code, w) for w in words)
    assert [encode(code, i) for i in range(len(words))] == words
    with pytest.raises(ValueError):
        encode(code, len(words))
    with pytest.raises(ValueError):
        enumerate_codewords(VTCode(40, 0))


def test_vt_single_deletion_exhaustive():
    for n in range(1, 13):
        for bits in itertools.product((0, 1), repeat=n):
            code = VTCode(n, weighted_sum(bits) % (n + 1))
            x = Word(bits, 2)
            for i in range(n):
                assert vt_decode_single_deletion(code, Word(bits[:i] + bits[i + 1:], 2)) == x


def test_svt_windowed_deletion_exhaustive():
    for n in range(2, 13):
        for P in range(2, n + 2):
            for bits in itertools.product((0, 1), repeat=n):
                code = SVTCode(n, weighted_sum(bits) % P, sum(bits) % 2, P)
                x = Word(bits, 2)
                for i in range(n):
                    y = Word(bits[:i] + bits[i + 1:], 2)
                    # deletion at the last and at the first position of the window
                    for start in {max(0, i - P + 1), i}:
                        assert svt_decode_single_deletion(code, y, start, P) == x


def test_svt_inconsistent_window_raises():
    # 00 cannot be completed to a word of SVT(3, 1, 0, 2) inside the window [0, 2)
    with pytest.raises(DecodingError):
        svt_decode_single_deletion(SVTCode(3, 1, 0, 2), W("00"), 0, 2)


def _pairs(bits):
    n = len(bits)
    for i in range(n):
        for j in range(i + 1, n):
            seg = bits[i:j + 1]
            if len(set(seg)) == 1:
                yield i, j, "run"
            elif is_two_symbol_alternation(seg):
                yield i, j, "alt"


def test_vt_corrects_run_or_alternation_end_to_end():
    for n in range(2, 11):
        for bits in itertools.product((0, 1), repeat=n):
            x = np.array(bits, dtype=np.int8)
            code = VTCode(n, weighted_sum(bits) % (n + 1))
            for i, j, _ in _pairs(bits):
                r = decode_arrays([np.delete(x, i), np.delete(x, j)], n, 2, deletion=True,
                                  code=code, tie=LEX)
                assert r.status is Status.OK and np.array_equal(r.chosen, x)


@pytest.mark.parametrize("P", [3, 4, 11])
def test_svt_corrects_alternation_end_to_end(P):
    for n in range(2, 11):
        for bits in itertools.product((0, 1), repeat=n):
            x = np.array(bits, dtype=np.int8)
            code = SVTCode(n, weighted_sum(bits) % P, sum(bits) % 2, P)
            for i, j, kind in _pairs(bits):
                # swapping an even alternation of length 2P leaves the syndrome unchanged
                if kind != "alt" or j - i + 1 >= 2 * P:
                    continue
                r = decode_arrays([np.delete(x, i), np.delete(x, j)], n, 2, deletion=True,
                                  code=code, tie=LEX)
                assert r.status is Status.OK and np.array_equal(r.chosen, x)


def test_two_step_decoder():
    n = 10
    for bits in itertools.product((0, 1), repeat=n):
        if weighted_sum(bits) % (n + 1):
            continue
        x = np.array(bits, dtype=np.int8)
        vt = VTCode(n, 0)
        svt = SVTCode(n, weighted_sum(bits) % 5, sum(bits) % 2, 5)
        for i, j, kind in _pairs(bits):
            ys = [np.delete(x, i), np.delete(x, j)]
            r = two_step_decode_arrays(ys, n, vt, tie=LEX)
            assert np.array_equal(r.chosen, x)
            r = two_step_decode_arrays(ys, n, svt, tie=LEX)
            if kind == "run":
                # no window is available: the output stays one symbol short
                assert r.chosen.shape[0] == n - 1
            elif j - i + 1 < 10:
                assert np.array_equal(r.chosen, x)


def test_fixed_points():
    for code in (VTCode(8, 3), SVTCode(8, 1, 1, 3)):
        for c in enumerate_codewords(code):
            a = c.as_array()
            r = decode_arrays([a, a], 8, 2, deletion=True, code=code, tie=LEX)
            assert np.array_equal(r.chosen, a) and r.tie_size == 1


def test_sampling_is_uniform_over_codewords():
    code = VTCode(6, 2)
    words = {w.symbols: k for k, w in enumerate(enumerate_codewords(code))}
    rng = np.random.default_rng(5)
    counts = np.zeros(len(words))
    draws = 20_000
    for _ in range(draws):
        counts[words[tuple(int(v) for v in sample_codeword_array(code, rng))]] += 1
    expected = draws / len(words)
    chi2 = ((counts - expected) ** 2 / expected).sum()
    assert chi2 < len(words) + 6 * (2 * len(words)) ** 0.5
    big = SVTCode(450, 3, 1, 11)
    for _ in range(5):
        assert svt_contains(big, Word.from_array(sample_codeword_array(big, rng), 2))
