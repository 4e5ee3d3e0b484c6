"""Witness extraction and congruence verification over prime gaps.

For a gap p_k -> p_next with width d_k, every n = p_k + i (1 <= i < d_k)
is composite, so some prime q divides it; q is a *witness* for offset i.
The verified relation is d_k mod q != i mod q for every witness q of every
offset, together with the minimality evidence that p_k + d_k itself has no
small factor. A violation of either would be reportable mathematics, so
violations are recorded as data, never raised, and the whole point of a
sweep is that the violation list stays empty.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    CertificationFailureError,
    IndexOutOfRangeError,
    OffsetOutOfRangeError,
    WitnessMismatchError,
)
from .gaps import GapRecord, gap_at
from .sieve import SEGMENT_SIZE, first_primes, primes_through_value

WITNESS_MODES = ("canonical", "all-factors")
DEFAULT_EXHAUSTIVE_CAP = 1000


@dataclass(frozen=True, slots=True)
class Witness:
    """A prime p_j dividing p_k + i, certifying that offset i is composite.

    The cofactor m satisfies p_j * m = p_k + i with m >= 2.
    """

    k: int
    i: int
    p_j: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.i < 1:
            raise ValueError("witness indices must be >= 1")
        if self.p_j < 2 or self.m < 2:
            raise ValueError("witness factor and cofactor must be >= 2")

    @property
    def n(self) -> int:
        """The certified composite p_k + i."""
        return self.p_j * self.m


@dataclass(frozen=True, slots=True)
class NonzeroResidue:
    """The residue r = (p_k + d_k) mod p_h, certified nonzero (1 <= h <= k)."""

    k: int
    h: int
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("residue must be nonzero")


@dataclass(frozen=True, slots=True)
class RelationCheck:
    """One evaluation of d_k mod p_j vs i mod p_j for a witness p_j.

    holds is True exactly when the two residues differ, i.e. when p_j does
    not divide d_k - i.
    """

    k: int
    i: int
    p_j: int
    lhs: int
    rhs: int
    holds: bool

    def __post_init__(self):
        if self.holds != (self.lhs != self.rhs):
            raise ValueError("holds flag inconsistent with residues")


@dataclass(frozen=True)
class MinimalityCertificate:
    """Per-gap evidence that the gap width cannot be smaller.

    witnesses maps each offset i in 1..d_k-1 to its canonical witness
    (the witness prime varies with i). attestation_bound records the
    divisor bound isqrt(p_k + d_k) below which p_k + d_k was confirmed
    to have no prime factor.
    """

    record: GapRecord
    witnesses: dict[int, Witness]
    attestation_bound: int

    def __post_init__(self):
        if len(self.witnesses) != self.record.d_k - 1:
            raise ValueError(
                f"expected {self.record.d_k - 1} witnesses, got {len(self.witnesses)}"
            )


@dataclass(frozen=True, slots=True)
class Violation:
    """A recorded check failure: offset (or h-index) i at gap k, prime p.

    Expected to never occur on honest input; carried as data so sweeps can
    aggregate rather than abort.
    """

    k: int
    i: int
    p: int
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    """Aggregate result of a verification sweep over a contiguous k-range.

    relation_checks counts verified offsets (one per composite between
    consecutive primes, regardless of witness mode); residue_checks counts
    exhaustive per-h residue tests. Total relation checks over 1..K equal
    (p_{K+1} - 2) - K by telescoping.
    """

    k_lo: int
    k_hi: int
    relation_checks: int
    residue_checks: int
    violations: tuple[Violation, ...]
    elapsed: float

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two reports covering adjacent k-ranges.

        Commutative and associative over disjoint adjacent ranges; elapsed
        times add and are excluded from any equality notion.
        """
        first, second = sorted((self, other), key=lambda r: r.k_lo)
        if second.k_lo != first.k_hi + 1:
            raise ValueError(
                f"ranges [{first.k_lo},{first.k_hi}] and "
                f"[{second.k_lo},{second.k_hi}] are not adjacent"
            )
        merged = sorted(
            first.violations + second.violations,
            key=lambda v: (v.k, v.i, v.p, v.detail),
        )
        return VerificationReport(
            first.k_lo,
            second.k_hi,
            first.relation_checks + second.relation_checks,
            first.residue_checks + second.residue_checks,
            tuple(merged),
            first.elapsed + second.elapsed,
        )


def _distinct_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending, by division with cached primes."""
    out = []
    m = n
    for q in primes_through_value(math.isqrt(n)):
        q = int(q)
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
    if m > 1:
        out.append(m)
    return out


def find_witness(k: int, i: int) -> Witness:
    """Canonical witness for offset i of gap k: the least prime factor of
    p_k + i, with its cofactor."""
    rec = gap_at(k)
    if i < 1 or i >= rec.d_k:
        raise OffsetOutOfRangeError(
            f"offset must satisfy 1 <= i < d_{k} = {rec.d_k}, got {i}"
        )
    n = rec.p_k + i
    for q in primes_through_value(math.isqrt(n)):
        q = int(q)
        if n % q == 0:
            return Witness(k, i, q, n // q)
    raise CertificationFailureError(
        f"{n} (= p_{k} + {i}) has no factor <= isqrt; gap data is inconsistent"
    )


def all_witnesses(k: int, i: int) -> list[Witness]:
    """One witness per distinct prime factor of p_k + i, ascending."""
    rec = gap_at(k)
    if i < 1 or i >= rec.d_k:
        raise OffsetOutOfRangeError(
            f"offset must satisfy 1 <= i < d_{k} = {rec.d_k}, got {i}"
        )
    n = rec.p_k + i
    factors = _distinct_factors(n)
    if not factors or factors[0] == n:
        raise CertificationFailureError(
            f"{n} (= p_{k} + {i}) is not composite; gap data is inconsistent"
        )
    return [Witness(k, i, q, n // q) for q in factors]


def check_nonzero_residue(k: int, h: int) -> NonzeroResidue:
    """Residue of p_k + d_k modulo p_h for 1 <= h <= k, certified nonzero.

    A zero residue would falsify the input gap (p_h would divide the next
    prime); it raises rather than being returned silently.
    """
    if k < 1:
        raise IndexOutOfRangeError(f"prime index must be >= 1, got {k}")
    if h < 1 or h > k:
        raise IndexOutOfRangeError(f"index h must satisfy 1 <= h <= {k}, got {h}")
    rec = gap_at(k)
    p_h = int(first_primes(h)[-1])
    r = (rec.p_k + rec.d_k) % p_h
    if r == 0:
        raise CertificationFailureError(
            f"p_{k} + d_{k} = {rec.p_next} divisible by p_{h} = {p_h}; "
            "gap data is inconsistent"
        )
    return NonzeroResidue(k, h, r)


def check_relation(k: int, i: int, w: Witness) -> RelationCheck:
    """Evaluate the gap congruence for witness w of offset i at gap k:
    holds iff d_k mod p_j differs from i mod p_j."""
    rec = gap_at(k)
    if w.k != k or w.i != i or w.p_j * w.m != rec.p_k + i:
        raise WitnessMismatchError(
            f"witness {w} does not certify p_{k} + {i} = {rec.p_k + i}"
        )
    lhs = rec.d_k % w.p_j
    rhs = i % w.p_j
    return RelationCheck(k, i, w.p_j, lhs, rhs, lhs != rhs)


def certify_minimality(k: int) -> MinimalityCertificate:
    """Build the full per-gap certificate: a canonical witness for every
    offset in 1..d_k-1, plus the attestation that p_k + d_k has no prime
    factor up to its integer square root."""
    rec = gap_at(k)
    witnesses = {i: find_witness(k, i) for i in range(1, rec.d_k)}
    bound = math.isqrt(rec.p_next)
    for q in primes_through_value(bound):
        if rec.p_next % int(q) == 0:
            raise CertificationFailureError(
                f"p_{k} + d_{k} = {rec.p_next} divisible by {int(q)}; "
                "gap data is inconsistent"
            )
    return MinimalityCertificate(rec, witnesses, bound)


# ---------------------------------------------------------------------------
# Range verification engine. Work is partitioned into contiguous k-chunks
# whose prime windows span roughly one sieve segment; chunks are independent
# and merge deterministically in k order, so any worker count produces the
# same report.


def _verify_chunk(args):
    """Verify one contiguous chunk of gaps.

    args = (k_start, pvals, base, all_factors, exhaustive, prefix) where
    pvals holds p_{k_start} .. p_{k_end + 1} and base holds every prime up
    to isqrt(pvals[-1]). Returns (relation_checks, residue_checks,
    violations) with violations as plain tuples (k, i, p, detail).
    """
    k_start, pvals, base, all_factors, exhaustive, prefix = args
    base = [int(q) for q in base]
    violations: list[tuple[int, int, int, str]] = []

    wlo = int(pvals[0]) + 1
    whi = int(pvals[-1]) + 1
    width = whi - wlo

    comp_mask = np.ones(width, dtype=bool)
    comp_mask[pvals[1:] - wlo] = False

    gaps_arr = np.diff(pvals)
    counts = gaps_arr - 1
    n_arr = np.flatnonzero(comp_mask) + wlo
    pk_arr = np.repeat(pvals[:-1], counts)
    i_arr = n_arr - pk_arr
    d_arr = np.repeat(gaps_arr, counts)
    del pk_arr

    def k_of(n_vals):
        # Recover gap index from composite value; only used on failures.
        return np.searchsorted(pvals, n_vals, side="right") - 1 + k_start

    # Least-prime-factor table over the window; zeros afterwards mean
    # "no factor <= isqrt(whi - 1)", i.e. prime.
    lpf = np.zeros(width, dtype=np.int64)
    for q in base:
        start = ((wlo + q - 1) // q) * q
        if start >= whi:
            continue
        sl = lpf[start - wlo :: q]
        sl[sl == 0] = q

    # Minimality attestation for every gap's right endpoint. A base prime
    # marks itself as its own least factor; only a proper factor fails.
    attest = lpf[pvals[1:] - wlo]
    for t in np.flatnonzero((attest != 0) & (attest != pvals[1:])):
        t = int(t)
        violations.append(
            (
                k_start + t,
                0,
                int(attest[t]),
                f"minimality: p_k + d_k = {int(pvals[t + 1])} divisible by {int(attest[t])}",
            )
        )

    relation_checks = int(n_arr.size)

    if not all_factors:
        q_arr = lpf[n_arr - wlo]
        good = q_arr != 0
        for row in np.flatnonzero(~good):
            row = int(row)
            violations.append(
                (
                    int(k_of(n_arr[row])),
                    int(i_arr[row]),
                    0,
                    f"certification: {int(n_arr[row])} has no witness",
                )
            )
        lhs = d_arr[good] % q_arr[good]
        rhs = i_arr[good] % q_arr[good]
        for row in np.flatnonzero(lhs == rhs):
            row = int(np.flatnonzero(good)[row])
            violations.append(
                (
                    int(k_of(n_arr[row])),
                    int(i_arr[row]),
                    int(q_arr[row]),
                    f"relation: d_k and i both = {int(d_arr[row] % q_arr[row])} "
                    f"mod {int(q_arr[row])}",
                )
            )
    else:
        comp_row = np.full(width, -1, dtype=np.int64)
        comp_row[n_arr - wlo] = np.arange(n_arr.size)

        def record_relation_failures(rows, qvals):
            lhs = d_arr[rows] % qvals
            rhs = i_arr[rows] % qvals
            bad = np.flatnonzero(lhs == rhs)
            for b in bad:
                b = int(b)
                row = int(rows[b])
                q = int(qvals[b]) if np.ndim(qvals) else int(qvals)
                violations.append(
                    (
                        int(k_of(n_arr[row])),
                        int(i_arr[row]),
                        q,
                        f"relation: d_k and i both = {int(d_arr[row]) % q} mod {q}",
                    )
                )

        # Every base prime dividing a composite is one of its witnesses.
        for q in base:
            start = ((wlo + q - 1) // q) * q
            if start >= whi:
                continue
            rows = comp_row[start - wlo :: q]
            rows = rows[rows >= 0]
            if rows.size:
                record_relation_failures(rows, q)

        # Divide base primes out of each composite; a surviving cofactor
        # above 1 is the single prime factor beyond the base range.
        rem = np.arange(wlo, whi, dtype=np.int64)
        rem[~comp_mask] = 1
        for q in base:
            start = ((wlo + q - 1) // q) * q
            if start >= whi:
                continue
            idx = np.arange(start - wlo, width, q)
            while idx.size:
                sel = rem[idx] % q == 0
                idx = idx[sel]
                if idx.size == 0:
                    break
                rem[idx] //= q
        big = np.flatnonzero(rem > 1)
        if big.size:
            rows = comp_row[big]
            qvals = rem[big]
            whole = qvals == n_arr[rows]
            for b in np.flatnonzero(whole):
                row = int(rows[int(b)])
                violations.append(
                    (
                        int(k_of(n_arr[row])),
                        int(i_arr[row]),
                        0,
                        f"certification: {int(n_arr[row])} has no witness",
                    )
                )
            keep = ~whole
            if keep.any():
                record_relation_failures(rows[keep], qvals[keep])

    residue_checks = 0
    if exhaustive:
        for t in range(gaps_arr.size):
            k = k_start + t
            p_next = int(pvals[t + 1])
            hs = prefix[:k]
            r = p_next % hs
            for z in np.flatnonzero(r == 0):
                z = int(z)
                violations.append(
                    (
                        k,
                        z + 1,
                        int(hs[z]),
                        f"residue: {p_next} divisible by p_{z + 1} = {int(hs[z])}",
                    )
                )
            residue_checks += k

    return relation_checks, residue_checks, violations


def _chunk_ranges(primes: np.ndarray, k_lo: int, k_hi: int, segment_size: int):
    """Split [k_lo, k_hi] into contiguous sub-ranges whose prime values
    span about one segment each. Depends only on the primes and the
    segment size, never on the worker count."""
    p_lo = int(primes[k_lo - 1])
    p_top = int(primes[k_hi])
    cut_values = np.arange(p_lo + segment_size, p_top, segment_size, dtype=np.int64)
    cut_ks = np.unique(np.searchsorted(primes, cut_values, side="right"))
    edges = [k_lo - 1]
    for k in cut_ks:
        k = int(k)
        if k_lo <= k < k_hi:
            edges.append(k)
    edges.append(k_hi)
    return [(edges[t] + 1, edges[t + 1]) for t in range(len(edges) - 1)]


def verify_range(
    k_lo: int,
    k_hi: int,
    witness_mode: str = "canonical",
    exhaustive_residues: bool = False,
    *,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    jobs: int = 1,
    segment_size: int = SEGMENT_SIZE,
) -> VerificationReport:
    """Verify every gap with index in [k_lo, k_hi].

    For each gap this certifies minimality (a witness for every offset,
    no small factor in p_k + d_k) and evaluates the gap congruence for the
    canonical witness or, in "all-factors" mode, for every distinct prime
    factor of each composite. With exhaustive_residues (permitted only for
    k_hi <= exhaustive_cap) it additionally checks (p_k + d_k) mod p_h != 0
    for every h <= k. The returned report is identical for any job count.
    """
    t0 = time.perf_counter()
    if k_lo < 1 or k_hi < k_lo:
        raise IndexOutOfRangeError(
            f"need 1 <= k_lo <= k_hi, got [{k_lo}, {k_hi}]"
        )
    if witness_mode not in WITNESS_MODES:
        raise ValueError(f"witness_mode must be one of {WITNESS_MODES}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if exhaustive_residues and k_hi > exhaustive_cap:
        raise ValueError(
            f"exhaustive residue mode is capped at k_hi <= {exhaustive_cap}, "
            f"got {k_hi}"
        )

    primes = first_primes(k_hi + 1)
    top = int(primes[-1])
    base = primes[: bisect_right(primes, math.isqrt(top))]
    prefix = primes[:k_hi] if exhaustive_residues else None
    all_factors = witness_mode == "all-factors"

    chunks = _chunk_ranges(primes, k_lo, k_hi, segment_size)
    args = [
        (a, primes[a - 1 : b + 1], base, all_factors, exhaustive_residues, prefix)
        for a, b in chunks
    ]

    if jobs == 1 or len(args) == 1:
        results = [_verify_chunk(arg) for arg in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_chunk, args))

    relation_checks = sum(r[0] for r in results)
    residue_checks = sum(r[1] for r in results)
    violations = [Violation(*v) for r in results for v in r[2]]
    violations.sort(key=lambda v: (v.k, v.i, v.p, v.detail))
    return VerificationReport(
        k_lo,
        k_hi,
        relation_checks,
        residue_checks,
        tuple(violations),
        time.perf_counter() - t0,
    )
