"""Next-prime search built on the smallest-gap characterization."""

import math

import pytest

from gaplab import (
    CeilingExceededError,
    ResidueTable,
    find_witness,
    gap_at,
    gap_stream,
    gap_stream_incremental,
    next_prime_by_minimal_d,
    prime_index,
    primes_upto,
)


def test_next_prime_examples():
    assert next_prime_by_minimal_d(2, 10) == (1, 3)
    assert next_prime_by_minimal_d(7, 20) == (4, 11)
    assert next_prime_by_minimal_d(89, 200) == (8, 97)


def test_next_prime_rejects_bad_anchors():
    with pytest.raises(ValueError):
        next_prime_by_minimal_d(8, 20)
    with pytest.raises(ValueError):
        next_prime_by_minimal_d(7, 7)


def test_next_prime_ceiling_exceeded():
    with pytest.raises(CeilingExceededError):
        next_prime_by_minimal_d(7, 8)
    with pytest.raises(CeilingExceededError):
        next_prime_by_minimal_d(89, 97)


def test_residue_table_shape():
    table = ResidueTable.for_search(13, 40)
    assert table.base == [2, 3, 5]
    assert table.residues == [13 % 2, 13 % 3, 13 % 5]
    # Any ceiling >= 4 pulls in at least the prime 2.
    for ceiling in (4, 5, 9, 100):
        assert ResidueTable.for_search(3, ceiling).base[0] == 2


def test_agreement_with_sieve_small_scale():
    primes = primes_upto(10_000).tolist()
    for p, nxt in zip(primes, primes[1:]):
        assert next_prime_by_minimal_d(p, 2 * p) == (nxt - p, nxt)


def test_returned_prime_clears_its_own_base():
    for p in (2, 89, 7919, 104729):
        _, nxt = next_prime_by_minimal_d(p, 2 * p)
        for q in primes_upto(math.isqrt(nxt)):
            assert nxt % int(q) != 0


def test_minimality_is_literal():
    # Every skipped candidate has a witness among the base primes.
    for p in (23, 113, 1327, 31397):
        d, _ = next_prime_by_minimal_d(p, 2 * p)
        k = prime_index(p)
        for i in range(1, d):
            w = find_witness(k, i)
            assert w.p_j <= math.isqrt(p + i)


def test_incremental_empty_request():
    assert list(gap_stream_incremental(2, 0)) == []


def test_incremental_from_two():
    records = list(gap_stream_incremental(2, 4))
    assert [r.d_k for r in records] == [1, 2, 2, 4]
    assert records[-1].p_next == 11
    assert [r.k for r in records] == [1, 2, 3, 4]


def test_incremental_from_other_anchor_leaves_k_unknown():
    (record,) = gap_stream_incremental(23, 1)
    assert (record.k, record.p_k, record.p_next, record.d_k) == (None, 23, 29, 6)


def test_incremental_matches_sieve_stream():
    expected = list(gap_stream(10_000))
    got = list(gap_stream_incremental(2, len(expected)))
    assert got == expected


def test_incremental_rejects_bad_input():
    with pytest.raises(ValueError):
        list(gap_stream_incremental(10, 1))
    with pytest.raises(ValueError):
        list(gap_stream_incremental(2, -1))


def test_incremental_index_continues_past_anchor():
    records = list(gap_stream_incremental(2, 9))
    assert records[-1] == gap_at(9)
