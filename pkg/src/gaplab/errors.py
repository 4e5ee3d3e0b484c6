"""Exception hierarchy shared across the package."""


class GapLabError(Exception):
    """Base class for all domain errors raised by gaplab."""


class LimitExceededError(GapLabError):
    """A requested bound is above the configured hard cap."""


class InsufficientBaseError(GapLabError):
    """The supplied base prime list cannot cover the requested window."""


class OffsetOutOfRangeError(GapLabError):
    """Offset i is outside the open interval (0, d_k) for the given gap."""


class IndexOutOfRangeError(GapLabError):
    """A 1-based prime index is outside its permitted range."""


class WitnessMismatchError(GapLabError):
    """A witness does not actually divide the number it claims to certify."""


class CertificationFailureError(GapLabError):
    """Input data contradicts itself (e.g. a 'next prime' turned out composite).

    This signals broken input, not a counterexample: a genuine congruence
    violation is recorded as data in a report, never raised.
    """


class CeilingExceededError(GapLabError):
    """No prime was found below the caller-supplied search ceiling."""
