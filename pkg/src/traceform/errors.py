"""Exception hierarchy shared by all modules."""


class TraceformError(Exception):
    pass


class InvalidInput(TraceformError, ValueError):
    """Rejected argument: bad type/rank, non-dominant weight, malformed spec."""


class OrbitTooLarge(TraceformError):
    """Orbit exceeds the enumeration cap; use the closed formula instead."""


class CapExceeded(TraceformError):
    """A representation is too large for the multiplicity computation."""


class Inconclusive(TraceformError):
    """The gcd search did not stabilize within the requested bound."""
