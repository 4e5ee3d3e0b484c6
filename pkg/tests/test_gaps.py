"""Gap streaming, record-setting gaps, and the telescoping structure."""

import pytest

from gaplab import (
    GapRecord,
    IndexOutOfRangeError,
    LimitExceededError,
    gap_at,
    gap_stream,
    maximal_gaps,
)
from gaplab.sieve import HARD_CAP


def as_tuples(records):
    return [(r.k, r.p_k, r.p_next, r.d_k) for r in records]


def test_gap_stream_below_first_pair_is_empty():
    assert list(gap_stream(2)) == []


def test_gap_stream_first_two_gaps():
    assert as_tuples(gap_stream(5)) == [(1, 2, 3, 1), (2, 3, 5, 2)]


def test_gap_stream_to_thirty():
    records = list(gap_stream(30))
    assert as_tuples(records[-1:]) == [(9, 23, 29, 6)]
    assert [r.k for r in records] == list(range(1, 10))


def test_gap_stream_rejects_bad_limits():
    with pytest.raises(ValueError):
        list(gap_stream(1))
    with pytest.raises(LimitExceededError):
        list(gap_stream(HARD_CAP + 1))


def test_gap_widths_parity():
    for r in gap_stream(10_000):
        if r.k == 1:
            assert r.d_k == 1
        else:
            assert r.d_k % 2 == 0


def test_telescoping_sum():
    total = 0
    for r in gap_stream(10_000):
        total += r.d_k
        assert total == r.p_next - 2


def test_stream_restriction_is_prefix():
    longer = [r for r in gap_stream(2000) if r.p_next <= 500]
    assert longer == list(gap_stream(500))


def test_segment_boundaries_do_not_matter():
    assert list(gap_stream(5000, segment_size=64)) == list(gap_stream(5000))


def test_gap_record_validation():
    with pytest.raises(ValueError):
        GapRecord(1, 2, 5, 2)
    with pytest.raises(ValueError):
        GapRecord(0, 2, 3, 1)


def test_maximal_first_gap_always_sets_record():
    assert as_tuples(maximal_gaps(3)) == [(1, 2, 3, 1)]


def test_maximal_to_hundred():
    records = list(maximal_gaps(100))
    assert [r.d_k for r in records] == [1, 2, 4, 6, 8]
    assert [r.p_k for r in records] == [2, 3, 7, 23, 89]


def test_maximal_to_million_final_record():
    # Frozen from a full enumeration run of gap_stream(10**6).
    last = list(maximal_gaps(10**6))[-1]
    assert (last.k, last.p_k, last.p_next, last.d_k) == (40933, 492113, 492227, 114)


def test_maximal_equals_running_max_filter():
    best = 0
    expected = []
    for r in gap_stream(10_000):
        if r.d_k > best:
            best = r.d_k
            expected.append(r)
    assert list(maximal_gaps(10_000)) == expected


def test_maximal_rejects_bad_limit():
    with pytest.raises(ValueError):
        list(maximal_gaps(2))


def test_gap_at_matches_stream():
    stream = {r.k: r for r in gap_stream(100)}
    for k, record in stream.items():
        assert gap_at(k) == record
    with pytest.raises(IndexOutOfRangeError):
        gap_at(0)
