import random

import pytest

from zsinterval.davenport import iter_minimal_sequences
from zsinterval.errors import PreconditionViolated
from zsinterval.ordering import (
    LABELS, STRUCTURAL, OrderingResult, off_extreme, order_for, order_lemma2, order_lemma3,
    order_lemma4, search_ordering, verify_window,
)
from zsinterval.rho_chi import Interval
from zsinterval.zsseq import ZSeq

Z = ZSeq.from_counts


def test_lemma2_examples():
    s = Z({1: 1, 2: 1, -3: 1})
    res = order_lemma2(s, (3, 2))
    assert res.values == [1, -3, 2]
    assert res.prefix_sums == [1, -2, 0]
    assert (res.window_lo, res.window_hi, res.case_label) == (-2, 1, "L2")
    assert verify_window(s, res)
    with pytest.raises(PreconditionViolated):
        order_lemma2(Z({1: 1, -1: 1}), (1, 1))
    s = Z({5: 4, -4: 5})
    res = order_lemma2(s, (6, 10))
    assert all(a * b < 0 for a, b in zip(res.values, res.values[1:]))
    assert verify_window(s, res) and (res.window_lo, res.window_hi) == (-5, 9)


def test_lemma3_examples():
    s = Z({3: 1, -2: 1, -1: 1})
    res = order_lemma3(s, (4, 4))
    assert res.case_label == "L3_ii" and res.prefix_sums == [3, 1, 0]
    assert verify_window(s, res) and (res.window_lo, res.window_hi) == (-2, 3)
    assert order_lemma3(Z({6: 1, 5: 2, -4: 4}), (4, 6)).case_label == "L3_iii"
    # both elements other than -2, 2 equal M - 1 = 1
    assert order_lemma3(Z({1: 2, -2: 1}), (2, 2)).case_label == "L3_iii"


def test_lemma4_examples():
    s = Z({3: 2, -2: 3})
    res = order_lemma4(s, (4, 4))
    assert res.case_label == "L4_ii" and verify_window(s, res)
    assert res.values == [-2, 3, -2, 3, -2]
    assert search_ordering(s, -2, 2) is not None
    # every element other than -4, 4 is 3 = M - 1; the first structural case already matches
    assert order_lemma4(Z({3: 4, -4: 3}), (4, 4)).case_label == "L4_iv"
    with pytest.raises(PreconditionViolated):
        order_lemma4(Z({4: 1, -2: 2}), (4, 4))
    with pytest.raises(PreconditionViolated):
        order_lemma4(Z({1: 1, -1: 1}), (3, 4))


def test_verify_window_rejections():
    s = Z({1: 1, 2: 1, -3: 1})
    good = order_lemma2(s, (3, 2))
    assert not verify_window(s, OrderingResult(good.order, -1, 1, "L2"))
    assert not verify_window(s, OrderingResult(good.order[:2], -2, 1, "L2"))
    assert not verify_window(Z({1: 1, 2: 1, -2: 1}), OrderingResult(((1, 0), (2, 0), (-2, 0)), -5, 5, "L2"))
    assert not verify_window(s, OrderingResult(((1, 0), (1, 0), (-3, 0)), -5, 5, "L2"))


def test_precondition_rejects_non_minimal():
    with pytest.raises(PreconditionViolated):
        order_lemma2(Z({1: 2, -1: 2}), (2, 2))
    with pytest.raises(PreconditionViolated):
        order_lemma2(Z({3: 1, -3: 1}), (2, 2))
    with pytest.raises(PreconditionViolated):
        order_lemma3(Z({1: 1, -1: 1}), (1, 3))
    with pytest.raises(ValueError):
        order_for(5, Z({1: 1, -1: 1}), (2, 2))


def _sequences(m_max, M_max, m_min=1, M_min=1):
    for m in range(m_min, m_max + 1):
        for M in range(M_min, M_max + 1):
            iv = Interval(m, M)
            for s in iter_minimal_sequences(iv):
                yield s, iv


def test_lemma2_on_all_sequences_to_five():
    for s, iv in _sequences(5, 5):
        if not off_extreme(s, iv):
            continue
        res = order_lemma2(s, iv)
        assert verify_window(s, res), (s, iv)
        assert len(s) <= iv.m + iv.M - 1


def test_lemma3_on_all_sequences_to_five():
    seen = set()
    for s, iv in _sequences(5, 5, 2, 2):
        if len(off_extreme(s, iv)) < 2:
            continue
        res = order_lemma3(s, iv)
        seen.add(res.case_label)
        assert res.case_label in ("L3_i", "L3_ii", "L3_iii")
        if res.case_label != "L3_iii":
            assert verify_window(s, res), (s, iv, res)
            assert len(s) <= iv.m + iv.M - 2
    assert seen == {"L3_i", "L3_ii", "L3_iii"}


def test_lemma4_on_all_sequences_to_five():
    for s, iv in _sequences(5, 5, 4, 4):
        if len(off_extreme(s, iv)) < 3:
            continue
        res = order_lemma4(s, iv)
        assert res.case_label in LABELS[4:]
        if res.case_label not in STRUCTURAL:
            assert verify_window(s, res), (s, iv, res)
            assert len(s) <= iv.m + iv.M - 3


def test_all_lemmas_to_seven_against_exhaustive_orderings():
    for s, iv in _sequences(7, 7):
        off = len(off_extreme(s, iv))
        for lemma, need, lo in ((2, 1, 1), (3, 2, 2), (4, 3, 4)):
            if off < need or min(iv.m, iv.M) < lo:
                continue
            res = order_for(lemma, s, iv)
            if res.structural:
                assert verify_window(s, res)
                continue
            assert verify_window(s, res), (lemma, s, iv, res)
            assert search_ordering(s, res.window_lo, res.window_hi) is not None


def test_prefix_sums_distinct_for_random_permutations():
    rng = random.Random(20240601)
    pool = [s for s, _ in _sequences(7, 7) if len(s) >= 3]
    for _ in range(1000):
        s = rng.choice(pool)
        values = list(s)
        rng.shuffle(values)
        sums, acc = [], 0
        for v in values:
            acc += v
            sums.append(acc)
        assert len(set(sums)) == len(sums)
        assert 0 not in sums[:-1] and sums[-1] == 0
