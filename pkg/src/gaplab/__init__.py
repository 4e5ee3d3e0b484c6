"""gaplab: a prime-gap laboratory.

Enumerates consecutive-prime gaps, extracts witness primes for every
composite inside each gap, machine-verifies the gap congruence relations
over large ranges, and cross-validates with a next-prime search built
directly on the smallest-gap characterization.
"""

from .errors import (
    CeilingExceededError,
    CertificationFailureError,
    GapLabError,
    IndexOutOfRangeError,
    InsufficientBaseError,
    LimitExceededError,
    OffsetOutOfRangeError,
    WitnessMismatchError,
)
from .gaps import GapRecord, gap_at, gap_stream, maximal_gaps
from .nextstep import ResidueTable, gap_stream_incremental, next_prime_by_minimal_d
from .relation import (
    MinimalityCertificate,
    NonzeroResidue,
    RelationCheck,
    VerificationReport,
    Violation,
    Witness,
    all_witnesses,
    certify_minimality,
    check_nonzero_residue,
    check_relation,
    find_witness,
    verify_range,
)
from .sieve import (
    FactorMultiset,
    LpfWindow,
    PrimalityWindow,
    first_primes,
    lpf_range,
    nth_prime,
    prime_index,
    primes_upto,
    sieve_range,
    trial_factorize,
)

__version__ = "0.1.0"

__all__ = [
    "CeilingExceededError",
    "CertificationFailureError",
    "FactorMultiset",
    "GapLabError",
    "GapRecord",
    "IndexOutOfRangeError",
    "InsufficientBaseError",
    "LimitExceededError",
    "LpfWindow",
    "MinimalityCertificate",
    "NonzeroResidue",
    "OffsetOutOfRangeError",
    "PrimalityWindow",
    "RelationCheck",
    "ResidueTable",
    "VerificationReport",
    "Violation",
    "Witness",
    "WitnessMismatchError",
    "all_witnesses",
    "certify_minimality",
    "check_nonzero_residue",
    "check_relation",
    "find_witness",
    "first_primes",
    "gap_at",
    "gap_stream",
    "gap_stream_incremental",
    "lpf_range",
    "maximal_gaps",
    "next_prime_by_minimal_d",
    "nth_prime",
    "prime_index",
    "primes_upto",
    "sieve_range",
    "trial_factorize",
    "verify_range",
]
