"""Streaming enumeration of consecutive-prime gaps and running-maximum gaps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import IndexOutOfRangeError, LimitExceededError
from .sieve import HARD_CAP, SEGMENT_SIZE, first_primes, primes_upto, sieve_range


@dataclass(frozen=True, slots=True)
class GapRecord:
    """One consecutive-prime pair: p_next is the prime after p_k and
    d_k = p_next - p_k.

    k is the 1-based index of p_k, or None when the stream was anchored
    somewhere other than 2 and the index is unknown.
    """

    k: int | None
    p_k: int
    p_next: int
    d_k: int

    def __post_init__(self):
        if self.d_k != self.p_next - self.p_k:
            raise ValueError(
                f"gap width {self.d_k} inconsistent with {self.p_k} -> {self.p_next}"
            )
        if self.d_k < 1:
            raise ValueError(f"gap width must be >= 1, got {self.d_k}")
        if self.k is not None and self.k < 1:
            raise ValueError(f"prime index must be >= 1, got {self.k}")


def gap_at(k: int) -> GapRecord:
    """Random-access companion to gap_stream: the k-th gap record."""
    if k < 1:
        raise IndexOutOfRangeError(f"prime index must be >= 1, got {k}")
    ps = first_primes(k + 1)
    p_k, p_next = int(ps[k - 1]), int(ps[k])
    return GapRecord(k, p_k, p_next, p_next - p_k)


def gap_stream(limit: int, *, segment_size: int = SEGMENT_SIZE) -> Iterator[GapRecord]:
    """Yield one GapRecord per consecutive prime pair with p_next <= limit.

    Records come out ascending in k, starting at k = 1 (the pair 2, 3).
    Every emitted width is final: a record appears only once both of its
    endpoints are <= limit. Memory stays bounded at one sieve segment plus
    the last prime carried across each segment boundary.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > HARD_CAP:
        raise LimitExceededError(f"limit {limit} exceeds hard cap {HARD_CAP}")

    base = primes_upto(math.isqrt(limit))
    prev = None
    k = 0
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        if hi <= lo:
            break
        window = sieve_range(lo, hi, base)
        for p in window.primes():
            p = int(p)
            if prev is not None:
                k += 1
                yield GapRecord(k, prev, p, p - prev)
            prev = p


def maximal_gaps(limit: int, *, segment_size: int = SEGMENT_SIZE) -> Iterator[GapRecord]:
    """Yield the strictly record-setting subsequence of gap_stream(limit):
    each emitted d_k exceeds every earlier gap width."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    best = 0
    for record in gap_stream(limit, segment_size=segment_size):
        if record.d_k > best:
            best = record.d_k
            yield record
