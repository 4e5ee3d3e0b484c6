"""Next-prime search driven directly by the smallest-gap characterization.

Starting from a prime p, the successor is p + d for the least d >= 1 such
that p + d clears every base prime up to its own integer square root. This
deliberately avoids the segmented sieve so its answers can cross-validate
the sieve-based gap stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .errors import CeilingExceededError, LimitExceededError
from .gaps import GapRecord
from .sieve import HARD_CAP, primes_through_value, trial_factorize


@dataclass
class ResidueTable:
    """Residues of an anchor prime modulo every base prime of a search.

    base holds all primes <= isqrt(ceiling), so it never needs to grow
    mid-search; residues[t] = anchor mod base[t]. Single-caller state.
    """

    anchor: int
    ceiling: int
    base: list[int]
    residues: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.residues:
            self.residues = [self.anchor % q for q in self.base]

    @classmethod
    def for_search(cls, p: int, ceiling: int) -> "ResidueTable":
        base = primes_through_value(math.isqrt(ceiling))
        return cls(p, ceiling, base.tolist(), (p % base).tolist())

    def candidate_clears(self, d: int) -> bool:
        """True when anchor + d has nonzero residue modulo every base prime
        q <= isqrt(anchor + d), q != anchor + d."""
        c = self.anchor + d
        bound = math.isqrt(c)
        for q, r in zip(self.base, self.residues):
            if q > bound:
                break
            if (r + d) % q == 0 and q != c:
                return False
        return True


def next_prime_by_minimal_d(p: int, ceiling: int) -> tuple[int, int]:
    """Return (d, p + d) for the least d >= 1 making p + d prime.

    The scan is the literal definition: d counts up by 1 and each candidate
    is tested against the residue table. Raises CeilingExceededError when
    no candidate below `ceiling` clears; ceiling = 2p always suffices.
    """
    if ceiling > HARD_CAP:
        raise LimitExceededError(f"ceiling {ceiling} exceeds hard cap {HARD_CAP}")
    if not trial_factorize(p).is_prime:
        raise ValueError(f"{p} is not prime")
    if p >= ceiling:
        raise ValueError(f"need p < ceiling, got p={p}, ceiling={ceiling}")

    table = ResidueTable.for_search(p, ceiling)
    d = 1
    while p + d < ceiling:
        if table.candidate_clears(d):
            return d, p + d
        d += 1
    raise CeilingExceededError(f"no prime in ({p}, {ceiling})")


def gap_stream_incremental(start: int, count: int) -> Iterator[GapRecord]:
    """Yield `count` consecutive gap records from `start`, each step found
    by next_prime_by_minimal_d with ceiling 2p.

    Indices are filled only when the stream is anchored at 2; any other
    anchor leaves k unknown (None).
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if not trial_factorize(start).is_prime:
        raise ValueError(f"{start} is not prime")
    k = 1 if start == 2 else None
    p = start
    for _ in range(count):
        d, nxt = next_prime_by_minimal_d(p, 2 * p)
        yield GapRecord(k, p, nxt, d)
        if k is not None:
            k += 1
        p = nxt
