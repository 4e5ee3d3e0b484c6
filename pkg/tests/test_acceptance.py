"""Acceptance gate: the seven release criteria, one test each.

Each test prints a single pass/fail line (visible with pytest -s) and
asserts the criterion at its stated tolerance. Frozen constants (1229,
78498, the 10^6 maximal gap) were confirmed with the trial-division
oracle before being written down here.
"""

import math
import os
import time

import pytest

from gaplab import (
    IndexOutOfRangeError,
    OffsetOutOfRangeError,
    certify_minimality,
    check_nonzero_residue,
    find_witness,
    gap_stream,
    gap_stream_incremental,
    next_prime_by_minimal_d,
    primes_upto,
    sieve_range,
    trial_factorize,
    verify_range,
)
from gaplab.cli import main


def report(number: int, label: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"[acceptance] criterion {number} ({label}): {status}")
    assert not failures, failures


def test_criterion_1_relation_sweep_to_ten_million(tmp_path):
    failures = []
    primes = primes_upto(10**7)
    k_hi = len(primes) - 1
    p_last = int(primes[-1])
    expected_checks = (p_last - 2) - k_hi

    out = tmp_path / "sweep.csv"
    started = time.perf_counter()
    code = main(
        ["verify", "--kmax", str(k_hi), "--all-factors",
         "--jobs", str(os.cpu_count() or 1), "--out", str(out)]
    )
    elapsed = time.perf_counter() - started

    lines = out.read_text().splitlines()
    if code != 0:
        failures.append(f"exit code {code}")
    if lines[1] != f"1,{k_hi},{expected_checks},0,0":
        failures.append(f"summary row {lines[1]!r}")
    if len(lines) != 2:
        failures.append(f"{len(lines) - 2} violation rows")
    if elapsed > 60.0:
        failures.append(f"runtime {elapsed:.1f}s exceeds 60s")
    report(1, f"all-factors sweep of {k_hi} gaps in {elapsed:.1f}s", failures)


def test_criterion_2_exhaustive_residues_to_k_1000():
    failures = []
    started = time.perf_counter()
    rep = verify_range(1, 1000, "canonical", exhaustive_residues=True)
    elapsed = time.perf_counter() - started
    if rep.residue_checks != 1000 * 1001 // 2:
        failures.append(f"residue checks {rep.residue_checks}")
    if rep.violations:
        failures.append(f"{len(rep.violations)} violations")
    if elapsed > 5.0:
        failures.append(f"runtime {elapsed:.1f}s exceeds 5s")
    report(2, f"{rep.residue_checks} residue checks in {elapsed:.2f}s", failures)


def test_criterion_3_oracle_equivalence():
    failures = []
    bound = 10**5
    window = sieve_range(0, bound + 1, primes_upto(math.isqrt(bound)))
    flags = window.bools()
    if flags[0]:
        failures.append("0 flagged prime")
    for n in range(1, bound + 1):
        if flags[n] != trial_factorize(n).is_prime:
            failures.append(f"primality disagreement at {n}")
            break

    for k in range(1, 2001):
        cert = certify_minimality(k)
        for i, w in cert.witnesses.items():
            expected = trial_factorize(cert.record.p_k + i).least_prime_factor()
            if w.p_j != expected:
                failures.append(f"witness mismatch at k={k}, i={i}")
                break
        else:
            continue
        break
    report(3, "sieve and witnesses vs trial division", failures)


def test_criterion_4_characterization_as_algorithm():
    failures = []
    primes = primes_upto(10**6).tolist()
    for p, nxt in zip(primes, primes[1:]):
        if next_prime_by_minimal_d(p, 2 * p) != (nxt - p, nxt):
            failures.append(f"successor mismatch after {p}")
            break

    sieve_records = list(gap_stream(10**6))
    incremental = list(gap_stream_incremental(2, len(sieve_records)))
    if incremental != sieve_records:
        failures.append("incremental stream diverges from sieve stream")
    report(4, f"{len(primes)} successors + {len(sieve_records)} gaps", failures)


def test_criterion_5_known_prime_counts():
    failures = []
    small = len(primes_upto(10**4))
    oracle_small = sum(1 for n in range(2, 10**4 + 1) if trial_factorize(n).is_prime)
    if small != 1229 or oracle_small != 1229:
        failures.append(f"pi(10^4) sieve={small} oracle={oracle_small}")
    large = len(primes_upto(10**6))
    if large != 78498:
        failures.append(f"pi(10^6) = {large}")
    report(5, "pi(10^4) = 1229 and pi(10^6) = 78498", failures)


def test_criterion_6_parallel_determinism(tmp_path):
    failures = []
    k_max = 10**5
    gap_limit = 1_300_000  # covers every gap with k <= 10^5
    for command, flag, value in (
        ("verify", "--kmax", str(k_max)),
        ("gaps", "--limit", str(gap_limit)),
    ):
        blobs = []
        for jobs in ("1", "8"):
            path = tmp_path / f"{command}_{jobs}.csv"
            code = main([command, flag, value, "--jobs", jobs, "--out", str(path)])
            if code != 0:
                failures.append(f"{command} --jobs {jobs} exit {code}")
            blobs.append(path.read_bytes())
        if blobs[0] != blobs[1]:
            failures.append(f"{command} output differs across job counts")
    report(6, "byte-identical outputs for --jobs 1 vs 8", failures)


def test_criterion_7_edge_cases(capsys):
    failures = []
    cert = certify_minimality(1)
    if cert.witnesses != {} or cert.record.p_next != 3:
        failures.append("k=1 certificate not vacuous")

    with pytest.raises(OffsetOutOfRangeError):
        find_witness(1, 1)
    with pytest.raises(OffsetOutOfRangeError):
        find_witness(9, 6)
    with pytest.raises(IndexOutOfRangeError):
        check_nonzero_residue(9, 10)
    with pytest.raises(IndexOutOfRangeError):
        check_nonzero_residue(9, 0)

    rep = verify_range(1, 1, "canonical", exhaustive_residues=True)
    if (rep.relation_checks, rep.residue_checks, len(rep.violations)) != (0, 1, 0):
        failures.append(f"k=1 verify gave {rep}")

    if main(["witness", "--k", "1", "--i", "1"]) != 2:
        failures.append("CLI offset error did not exit 2")
    capsys.readouterr()
    report(7, "k=1 vacuous range and range errors", failures)
