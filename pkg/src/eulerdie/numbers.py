"""
Exact Eulerian, Stirling (second kind) and binomial numbers.

Python integers are arbitrary precision, so every value here is exact.
Out-of-range indices give 0, which is what the alternating sums expect.

>>> eulerian(5, 2), stirling2(5, 3), binomial(6, 2)
(66, 25, 15)
>>> eq1_terms(5, 2)
[243, -192, 15]
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from operator import gt

from ._limits import ENUMERATION_BOUND, check_bound

__all__ = [
    "Permutation", "descent_set", "des", "check_permutation",
    "binomial", "eulerian", "eulerian_row", "eulerian_by_enumeration",
    "stirling2", "stirling2_row", "bell",
    "eq1_terms", "eq2_terms", "eq3_terms",
    "eulerian_sum_powers", "eulerian_sum_stirling", "eulerian_sum_stirling_shifted",
    "IdentityCheck", "verify_worpitzky", "verify_ordered_stirling",
    "NumberTable", "number_table",
]

# one-line notation pi(1)...pi(n), values 1..n
Permutation = tuple


def descent_set(pi) -> tuple[int, ...]:
    """Positions i (1-based) with pi(i) > pi(i+1)."""
    return tuple(i + 1 for i in range(len(pi) - 1) if pi[i] > pi[i + 1])


def des(pi) -> int:
    return sum(map(gt, pi, pi[1:]))


def check_permutation(pi) -> tuple[int, ...]:
    pi = tuple(int(x) for x in pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"{pi} is not a permutation of 1..{len(pi)}")
    return pi


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> tuple[int, ...]:
    """Row n of the Eulerian triangle, k = 0..n-1.

    Uses <n,k> = (k+1)<n-1,k> + (n-k)<n-1,k-1>.
    """
    if n < 1:
        raise ValueError("Eulerian numbers need n >= 1")
    if n == 1:
        return (1,)
    prev = eulerian_row(n - 1)

    def at(k):
        return prev[k] if 0 <= k < n - 1 else 0

    return tuple((k + 1) * at(k) + (n - k) * at(k - 1) for k in range(n))


def eulerian(n: int, k: int) -> int:
    if n < 1:
        raise ValueError("Eulerian numbers need n >= 1")
    if k < 0 or k >= n:
        return 0
    return eulerian_row(n)[k]


@lru_cache(maxsize=16)
def _descent_distribution(n: int) -> Counter:
    return Counter(sum(map(gt, p, p[1:])) for p in permutations(range(1, n + 1)))


def eulerian_by_enumeration(n: int, k: int, bound: int = ENUMERATION_BOUND) -> int:
    """Count permutations of 1..n with exactly k descents by listing all of them."""
    if n < 1:
        raise ValueError("need n >= 1")
    check_bound(n, bound)
    return _descent_distribution(n)[k]


@lru_cache(maxsize=None)
def stirling2_row(n: int) -> tuple[int, ...]:
    """S(n, 0..n), built with S(n+1,i+1) = (i+1) S(n,i+1) + S(n,i)."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return (1,)
    prev = stirling2_row(n - 1) + (0,)
    return (0,) + tuple((i + 1) * prev[i + 1] + prev[i] for i in range(n))


def stirling2(n: int, k: int) -> int:
    if n < 1:
        raise ValueError("Stirling numbers need n >= 1")
    if k < 1 or k > n:
        return 0
    return stirling2_row(n)[k]


def bell(n: int) -> int:
    return sum(stirling2_row(n))


def _check_nk(n, k):
    if n < 1 or not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")


def eq1_terms(n: int, k: int) -> list[int]:
    """Signed terms (-1)^i C(n+1,i) (k+1-i)^n for i = 0..k."""
    _check_nk(n, k)
    return [(-1) ** i * binomial(n + 1, i) * (k + 1 - i) ** n for i in range(k + 1)]


def eq2_terms(n: int, k: int) -> list[int]:
    """Signed terms (-1)^(k+1-i) C(n-i,k+1-i) S(n,i) i! for i = 1..k+1."""
    _check_nk(n, k)
    return [
        (-1) ** (k + 1 - i) * binomial(n - i, k + 1 - i) * stirling2(n, i) * math.factorial(i)
        for i in range(1, k + 2)
    ]


def eq3_terms(n: int, k: int) -> list[int]:
    """Signed terms (-1)^(k-i) C(n-i,k-i) S(n+1,i+1) i! for i = 0..k."""
    _check_nk(n, k)
    return [
        (-1) ** (k - i) * binomial(n - i, k - i) * stirling2(n + 1, i + 1) * math.factorial(i)
        for i in range(k + 1)
    ]


def eulerian_sum_powers(n: int, k: int) -> int:
    return sum(eq1_terms(n, k))


def eulerian_sum_stirling(n: int, k: int) -> int:
    return sum(eq2_terms(n, k))


def eulerian_sum_stirling_shifted(n: int, k: int) -> int:
    return sum(eq3_terms(n, k))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    n: int
    k: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.holds


def verify_worpitzky(n: int, k: int) -> IdentityCheck:
    """(k+1)^n == sum_i <n,i> C(k+n-i, n)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    rhs = sum(eulerian(n, i) * binomial(k + n - i, n) for i in range(n))
    return IdentityCheck("worpitzky", n, k, (k + 1) ** n, rhs)


def verify_ordered_stirling(n: int, k: int) -> IdentityCheck:
    """k! S(n,k) == sum_{i<k} <n,i> C(n-1-i, k-1-i)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rhs = sum(eulerian(n, i) * binomial(n - 1 - i, k - 1 - i) for i in range(k))
    return IdentityCheck("ordered-stirling", n, k, math.factorial(k) * stirling2(n, k), rhs)


@dataclass(frozen=True)
class NumberTable:
    """A triangle of exact integers keyed by (n, k)."""
    kind: str
    rows: dict = field(default_factory=dict)

    def row(self, n: int) -> list[int]:
        return [v for (m, _), v in sorted(self.rows.items()) if m == n]

    @property
    def row_indices(self) -> list[int]:
        return sorted({n for n, _ in self.rows})

    def row_sums(self) -> dict[int, int]:
        return {n: sum(self.row(n)) for n in self.row_indices}

    def expected_row_sum(self, n: int) -> int:
        if self.kind == "eulerian":
            return math.factorial(n)
        if self.kind == "stirling2":
            return bell(n)
        return 2**n


_KIND_ALIASES = {"eulerian": "eulerian", "stirling": "stirling2", "stirling2": "stirling2",
                 "binomial": "binomial"}


def number_table(kind: str, n_max: int) -> NumberTable:
    """Eulerian rows n=1..n_max (k=0..n-1), Stirling rows n=1..n_max (k=1..n),
    binomial rows n=0..n_max (k=0..n)."""
    try:
        kind = _KIND_ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown table kind {kind!r}") from None
    rows = {}
    if kind == "eulerian":
        for n in range(1, n_max + 1):
            rows.update(((n, k), eulerian(n, k)) for k in range(n))
    elif kind == "stirling2":
        for n in range(1, n_max + 1):
            rows.update(((n, k), stirling2(n, k)) for k in range(1, n + 1))
    else:
        for n in range(0, n_max + 1):
            rows.update(((n, k), binomial(n, k)) for k in range(n + 1))
    return NumberTable(kind, rows)
