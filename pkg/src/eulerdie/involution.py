"""Checking that a map is a sign-reversing involution on a finite signed set."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from ._limits import VerificationFailure


@dataclass
class InvolutionTally:
    size: int = 0
    paired: int = 0
    fixed_points: int = 0
    signed_sum: int = 0
    fixed_sign_sum: int = 0
    sign_counts: Counter = field(default_factory=Counter)


def check_sign_reversing_involution(
    items: Iterable[Hashable],
    iota: Callable,
    sign: Callable,
    is_exception: Callable | None = None,
    extra_check: Callable | None = None,
) -> InvolutionTally:
    """Apply `iota` to every element and verify the involution laws.

    Checks closure, iota(iota(x)) == x, sign(iota(x)) == -sign(x) off the fixed
    set, and, when `is_exception` is given, that x is fixed exactly when
    is_exception(x). `extra_check(x, y)` may raise for model-specific laws.
    Raises VerificationFailure on the first violation.
    """
    domain = set(items)
    tally = InvolutionTally(size=len(domain))
    for x in domain:
        y = iota(x)
        s = sign(x)
        tally.signed_sum += s
        tally.sign_counts[s] += 1
        if y not in domain:
            raise VerificationFailure(f"image {y!r} of {x!r} leaves the domain")
        if iota(y) != x:
            raise VerificationFailure(f"iota(iota({x!r})) != {x!r}")
        if y == x:
            tally.fixed_points += 1
            tally.fixed_sign_sum += s
            if s != 1:
                raise VerificationFailure(f"fixed point {x!r} has negative sign")
        else:
            tally.paired += 1
            if sign(y) != -s:
                raise VerificationFailure(f"{x!r} and its image have the same sign")
        if is_exception is not None and (y == x) != bool(is_exception(x)):
            raise VerificationFailure(f"fixed-point status of {x!r} disagrees with the exception rule")
        if extra_check is not None:
            extra_check(x, y)
    if tally.signed_sum != tally.fixed_sign_sum:
        raise VerificationFailure("signed sum differs from the fixed-point sum")
    return tally
