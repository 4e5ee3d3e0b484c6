"""Command-line frontend: enumeration, witnessing, verification, next-prime.

Output schemas are stable and integer-exact. CSV always carries a header
row; JSONL mirrors the CSV columns as object keys, one object per line.
Exit codes: 0 success, 1 when a verification violation was recorded,
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import nullcontext
from dataclasses import dataclass

from . import nextstep, relation, sieve
from .errors import GapLabError
from .gaps import gap_stream, maximal_gaps

FORMATS = ("csv", "jsonl")

_SCHEMAS = {
    "primes": ("k", "p"),
    "gaps": ("k", "p_k", "p_next", "d_k"),
    "witnesses": ("k", "i", "n", "p_j", "m"),
    "next": ("p", "d", "next"),
    "verify": ("k_lo", "k_hi", "relation_checks", "residue_checks", "violations"),
}


@dataclass
class RunConfig:
    """Parsed, validated invocation parameters for one command."""

    command: str
    limit: int | None = None
    kmax: int | None = None
    k: int | None = None
    i: int | None = None
    after: int | None = None
    all_factors: bool = False
    exhaustive: bool = False
    exhaustive_cap: int = relation.DEFAULT_EXHAUSTIVE_CAP
    fmt: str = "csv"
    out: str | None = None
    jobs: int = 1

    def validate(self) -> None:
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.jobs < 1:
            raise ValueError(f"--jobs must be >= 1, got {self.jobs}")
        for name in ("limit", "kmax", "k", "i", "after"):
            value = getattr(self, name)
            if value is not None and value > sieve.HARD_CAP:
                raise ValueError(f"--{name} {value} exceeds hard cap {sieve.HARD_CAP}")


def emit(rows, fmt: str, stream, kind: str) -> None:
    """Serialize homogeneous row tuples under the named schema.

    rows must already be plain Python ints in schema order. CSV output has
    exactly one header row; an empty sequence yields the header alone.
    """
    header = _SCHEMAS[kind]
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        for row in rows:
            obj = dict(zip(header, row))
            stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


def emit_report(report: relation.VerificationReport, fmt: str, stream) -> None:
    """Serialize a verification report: one summary row, then one detail
    row per violation (prefixed `violation` in CSV, nested in JSONL)."""
    summary = (
        report.k_lo,
        report.k_hi,
        report.relation_checks,
        report.residue_checks,
        report.violation_count,
    )
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(_SCHEMAS["verify"])
        writer.writerow(summary)
        for v in report.violations:
            writer.writerow(("violation", v.k, v.i, v.p, v.detail))
    else:
        stream.write(
            json.dumps(dict(zip(_SCHEMAS["verify"], summary)), separators=(",", ":"))
            + "\n"
        )
        for v in report.violations:
            obj = {"violation": {"k": v.k, "i": v.i, "p_j": v.p, "detail": v.detail}}
            stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _cmd_primes(config: RunConfig, stream) -> int:
    ps = sieve.primes_upto(config.limit)
    emit(((k, int(p)) for k, p in enumerate(ps, 1)), config.fmt, stream, "primes")
    return 0


def _cmd_gaps(config: RunConfig, stream) -> int:
    records = gap_stream(config.limit)
    emit(
        ((r.k, r.p_k, r.p_next, r.d_k) for r in records),
        config.fmt,
        stream,
        "gaps",
    )
    return 0


def _cmd_maximal(config: RunConfig, stream) -> int:
    records = maximal_gaps(config.limit)
    emit(
        ((r.k, r.p_k, r.p_next, r.d_k) for r in records),
        config.fmt,
        stream,
        "gaps",
    )
    return 0


def _cmd_witness(config: RunConfig, stream) -> int:
    if config.all_factors:
        found = relation.all_witnesses(config.k, config.i)
    else:
        found = [relation.find_witness(config.k, config.i)]
    emit(
        ((w.k, w.i, w.n, w.p_j, w.m) for w in found),
        config.fmt,
        stream,
        "witnesses",
    )
    return 0


def _cmd_verify(config: RunConfig, stream) -> int:
    report = relation.verify_range(
        1,
        config.kmax,
        "all-factors" if config.all_factors else "canonical",
        config.exhaustive,
        exhaustive_cap=config.exhaustive_cap,
        jobs=config.jobs,
    )
    emit_report(report, config.fmt, stream)
    return 1 if report.violations else 0


def _cmd_next(config: RunConfig, stream) -> int:
    d, nxt = nextstep.next_prime_by_minimal_d(config.after, 2 * config.after)
    emit([(config.after, d, nxt)], config.fmt, stream, "next")
    return 0


_COMMANDS = {
    "primes": _cmd_primes,
    "gaps": _cmd_gaps,
    "maximal": _cmd_maximal,
    "witness": _cmd_witness,
    "verify": _cmd_verify,
    "next": _cmd_next,
}


def run(config: RunConfig) -> int:
    """Execute a validated configuration; never raises for domain errors."""
    try:
        config.validate()
    except ValueError as exc:
        print(f"gaplab: error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.out is not None:
            ctx = open(config.out, "w", newline="")
        else:
            ctx = nullcontext(sys.stdout)
        with ctx as stream:
            return _COMMANDS[config.command](config, stream)
    except (GapLabError, ValueError) as exc:
        print(f"gaplab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gaplab: error: cannot write output: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaplab",
        description="Prime-gap laboratory: enumerate gaps, extract witnesses, "
        "verify gap congruences, and search for successor primes.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--out", metavar="PATH", default=None)
    common.add_argument("--jobs", type=int, default=1, metavar="J")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", parents=[common], help="list primes up to a bound")
    p.add_argument("--limit", type=int, required=True, metavar="N")

    p = sub.add_parser("gaps", parents=[common], help="stream consecutive-prime gaps")
    p.add_argument("--limit", type=int, required=True, metavar="N")

    p = sub.add_parser("maximal", parents=[common], help="stream record-setting gaps")
    p.add_argument("--limit", type=int, required=True, metavar="N")

    p = sub.add_parser("witness", parents=[common], help="witness primes for one offset")
    p.add_argument("--k", type=int, required=True, metavar="K")
    p.add_argument("--i", type=int, required=True, metavar="I")
    p.add_argument("--all-factors", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="verify gap congruences")
    p.add_argument("--kmax", type=int, required=True, metavar="K")
    p.add_argument("--all-factors", action="store_true")
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("next", parents=[common], help="successor prime by minimal gap")
    p.add_argument("--after", type=int, required=True, metavar="P")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        limit=getattr(args, "limit", None),
        kmax=getattr(args, "kmax", None),
        k=getattr(args, "k", None),
        i=getattr(args, "i", None),
        after=getattr(args, "after", None),
        all_factors=getattr(args, "all_factors", False),
        exhaustive=getattr(args, "exhaustive", False),
        fmt=args.format,
        out=args.out,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))
