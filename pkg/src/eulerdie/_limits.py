"""Enumeration limits and the exceptions shared by every module."""

ENUMERATION_BOUND = 10
OMEGA_SEARCH_BOUND = 10**8
COMPLEX_FACE_BOUND = 200_000


class BoundExceeded(ValueError):
    """Raised when an exhaustive enumeration would exceed its configured limit."""


class VerificationFailure(AssertionError):
    """A machine check of an identity or an involution law found a counterexample."""


def check_bound(n, bound, what="n"):
    if n > bound:
        raise BoundExceeded(f"{what}={n} exceeds the enumeration bound {bound}")
