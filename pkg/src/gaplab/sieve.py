"""Prime generation, windowed primality/least-prime-factor tables, and a
slow trial-division oracle.

Window operations are segment-friendly: callers hand in a base prime list
covering everything up to isqrt of the window's top value and get back a
self-contained window object. All divisibility logic is exact integer
arithmetic (math.isqrt, never floats).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientBaseError, LimitExceededError

# Nominal hard cap on any bound handled by this package. The practical cap
# is memory: a dense sieve of [0, n] allocates about n bytes transiently,
# so desk-scale machines top out near n ~ 10^9.
HARD_CAP = 2**63 - 1

# Default window width for segmented work; ~1 MiB of flags stays cache-near.
SEGMENT_SIZE = 1_048_576


def _check_cap(n: int, what: str = "bound") -> None:
    if n > HARD_CAP:
        raise LimitExceededError(f"{what} {n} exceeds hard cap {HARD_CAP}")


@dataclass(eq=False)
class PrimalityWindow:
    """Bit-per-integer primality mask over the half-open range [lo, hi).

    Bit at offset n - lo is set iff n is prime. The values 0 and 1 are
    always flagged non-prime. Bits are packed big-endian per byte
    (numpy.packbits layout).
    """

    lo: int
    hi: int
    bits: np.ndarray

    def __post_init__(self):
        if self.hi <= self.lo:
            raise ValueError(f"empty window [{self.lo}, {self.hi})")

    def __len__(self) -> int:
        return self.hi - self.lo

    def is_prime(self, n: int) -> bool:
        if not self.lo <= n < self.hi:
            raise ValueError(f"{n} outside window [{self.lo}, {self.hi})")
        off = n - self.lo
        return bool((self.bits[off >> 3] >> (7 - (off & 7))) & 1)

    def bools(self) -> np.ndarray:
        """Unpacked boolean mask, one entry per integer in the window."""
        return np.unpackbits(self.bits, count=len(self)).astype(bool)

    def primes(self) -> np.ndarray:
        """All primes in the window, ascending."""
        return np.flatnonzero(self.bools()) + self.lo

    def count(self) -> int:
        return int(np.unpackbits(self.bits, count=len(self)).sum())


@dataclass(eq=False)
class LpfWindow:
    """Least-prime-factor table for the half-open range [lo, hi), lo >= 2.

    For every n in the window, values[n - lo] is the smallest prime
    dividing n; n is prime iff that value equals n.
    """

    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self):
        if self.lo < 2:
            raise ValueError("least prime factor is undefined below 2")
        if self.hi <= self.lo:
            raise ValueError(f"empty window [{self.lo}, {self.hi})")

    def __len__(self) -> int:
        return self.hi - self.lo

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise ValueError(f"{n} outside window [{self.lo}, {self.hi})")
        return int(self.values[n - self.lo])

    def as_dict(self) -> dict[int, int]:
        return {self.lo + off: int(v) for off, v in enumerate(self.values)}


@dataclass(frozen=True)
class FactorMultiset:
    """Complete prime factorization as (prime, multiplicity) pairs, primes
    strictly increasing. The empty multiset is the factorization of 1."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for (q, e), (q2, _) in zip(self.factors, self.factors[1:]):
            if q >= q2:
                raise ValueError("factor primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("multiplicities must be >= 1")

    @property
    def n(self) -> int:
        """The integer this multiset factors (product of q**e)."""
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def least_prime_factor(self) -> int:
        if not self.factors:
            raise ValueError("1 has no prime factors")
        return self.factors[0][0]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def primes_upto(n: int) -> np.ndarray:
    """Return all primes <= n, ascending (downstream indexing is 1-based,
    so the first entry is p_1 = 2).

    Parameters
    ----------
    n : int
        Upper bound, inclusive. Must be >= 0 and within the hard cap.

    Returns
    -------
    np.ndarray
        int64 array of primes.
    """
    if n < 0:
        raise ValueError(f"bound must be >= 0, got {n}")
    _check_cap(n)
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _is_prime_slow(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _require_base(base, hi: int) -> np.ndarray:
    """Validate that `base` holds every prime <= isqrt(hi - 1).

    Completeness below max(base) is assumed; what gets checked is that no
    prime hides between max(base) and the needed bound.
    """
    arr = np.asarray(base, dtype=np.int64)
    s = math.isqrt(hi - 1)
    if s < 2:
        return arr
    mx = int(arr.max()) if arr.size else 1
    if mx < s:
        # By Bertrand there is a prime in (mx, 2mx]; otherwise scan the
        # short uncovered tail for one.
        if 2 * mx < s or any(_is_prime_slow(c) for c in range(mx + 1, s + 1)):
            raise InsufficientBaseError(
                f"window up to {hi} needs all primes through {s}, "
                f"base stops at {mx}"
            )
    return arr


def sieve_range(lo: int, hi: int, base) -> PrimalityWindow:
    """Sieve the half-open window [lo, hi) using the supplied base primes.

    `base` must contain every prime <= isqrt(hi - 1); anything larger is
    ignored. Multiples below q*q need no marking because they carry a
    smaller prime factor handled by an earlier base prime.
    """
    if lo < 0:
        raise ValueError(f"window start must be >= 0, got {lo}")
    if hi <= lo:
        raise ValueError(f"empty window [{lo}, {hi})")
    _check_cap(hi, "window end")
    arr = _require_base(base, hi)

    flags = np.ones(hi - lo, dtype=bool)
    for n in (0, 1):
        if lo <= n < hi:
            flags[n - lo] = False
    for q in arr:
        q = int(q)
        start = max(q * q, ((lo + q - 1) // q) * q)
        if start >= hi:
            continue
        flags[start - lo :: q] = False
    return PrimalityWindow(lo, hi, np.packbits(flags))


def lpf_range(lo: int, hi: int, base) -> LpfWindow:
    """Tabulate the least prime factor of every n in [lo, hi).

    Parameters
    ----------
    lo, hi : int
        Window bounds, half-open, lo >= 2.
    base : sequence of int
        All primes <= isqrt(hi - 1), ascending.

    Returns
    -------
    LpfWindow
        values[n - lo] = least prime factor of n; equals n iff n is prime.
    """
    if lo < 2:
        raise ValueError("least prime factor is undefined below 2")
    if hi <= lo:
        raise ValueError(f"empty window [{lo}, {hi})")
    _check_cap(hi, "window end")
    arr = _require_base(base, hi)

    vals = np.zeros(hi - lo, dtype=np.int64)
    for q in arr:
        q = int(q)
        start = ((lo + q - 1) // q) * q
        if start >= hi:
            continue
        sl = vals[start - lo :: q]
        sl[sl == 0] = q
    # Untouched entries have no factor <= isqrt(hi - 1): they are prime.
    untouched = vals == 0
    vals[untouched] = np.arange(lo, hi, dtype=np.int64)[untouched]
    return LpfWindow(lo, hi, vals)


def trial_factorize(n: int) -> FactorMultiset:
    """Factor n >= 1 by ascending trial division.

    Independent ground truth: divides by 2 and then every odd candidate,
    with no sieve or prime list involved.
    """
    if n < 1:
        raise ValueError(f"can only factor integers >= 1, got {n}")
    pairs = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        pairs.append((m, 1))
    return FactorMultiset(tuple(pairs))


# ---------------------------------------------------------------------------
# Indexed access (1-based: p_1 = 2) backed by a grow-on-demand cache.


def _nth_prime_bound(k: int) -> int:
    # p_k < k(ln k + ln ln k) for k >= 6; below that p_5 = 11 suffices.
    if k < 6:
        return 12
    lk = math.log(k)
    return int(k * (lk + math.log(lk))) + 1


class _PrimeCache:
    """Ascending primes sieved up to a remembered bound, grown on demand."""

    def __init__(self, bound: int):
        self.bound = bound
        self.primes = primes_upto(bound)

    def ensure_value(self, v: int) -> None:
        if v > self.bound:
            self.bound = min(max(v, 2 * self.bound), HARD_CAP)
            self.primes = primes_upto(self.bound)

    def ensure_count(self, count: int) -> None:
        while self.primes.size < count:
            self.ensure_value(max(_nth_prime_bound(count), 2 * self.bound))


_cache = _PrimeCache(1_000)


def first_primes(count: int) -> np.ndarray:
    """The first `count` primes (p_1 = 2) as an int64 array."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    _check_cap(count, "prime count")
    _cache.ensure_count(count)
    return _cache.primes[:count]


def primes_through_value(v: int) -> np.ndarray:
    """All primes <= v, ascending, served from the shared cache."""
    _check_cap(v)
    if v < 2:
        return np.empty(0, dtype=np.int64)
    _cache.ensure_value(v)
    return _cache.primes[: bisect_right(_cache.primes, v)]


def nth_prime(k: int) -> int:
    """The k-th prime, 1-based."""
    if k < 1:
        raise ValueError(f"prime index must be >= 1, got {k}")
    return int(first_primes(k)[-1])


def prime_index(p: int) -> int:
    """The 1-based index k with p_k = p; raises if p is not prime."""
    if p < 2:
        raise ValueError(f"{p} is not prime")
    _cache.ensure_value(p)
    k = bisect_right(_cache.primes, p)
    if k == 0 or int(_cache.primes[k - 1]) != p:
        raise ValueError(f"{p} is not prime")
    return k
