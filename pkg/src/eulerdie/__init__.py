"""Exact Eulerian-number identities checked by sign-reversing involutions."""

from ._limits import BoundExceeded, VerificationFailure
from .numbers import (
    binomial, eulerian, eulerian_by_enumeration, eulerian_sum_powers, eulerian_sum_stirling,
    eulerian_sum_stirling_shifted, stirling2, verify_ordered_stirling, verify_worpitzky,
)

__version__ = "0.1.0"
