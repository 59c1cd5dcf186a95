"""
Posets on {1..n}, linear extensions, P-partitions and P-Eulerian numbers.

A poset is stored by its cover relations (a, b), meaning a <_P b with nothing
in between.  P-partitions use the natural labelling as given: along a relation
i <_P j the value may stay equal when i < j and must strictly grow when i > j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterator

from ._limits import ENUMERATION_BOUND, OMEGA_SEARCH_BOUND, BoundExceeded, check_bound
from .barred import AnchoredBarredPermutation, anchored_over, iota1
from .involution import check_sign_reversing_involution
from .numbers import binomial, des

__all__ = [
    "PosetError", "Poset", "parse_poset", "poset_to_json", "hasse_dot",
    "is_p_partition", "linear_extensions", "p_eulerian", "omega", "omega_via_linext",
    "is_p_compatible", "PeulReport", "verify_die_peul", "alternating_omega_sum",
]


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    n: int
    covers: frozenset  # of (a, b) with a <_P b

    @classmethod
    def from_relations(cls, n: int, pairs, strict: bool = False) -> Poset:
        """Validate `pairs` (a, b) meaning a < b and reduce them to the Hasse covers.

        With strict=True a pair implied by the others is an error instead of
        being dropped.
        """
        if n < 1:
            raise PosetError("a poset needs n >= 1")
        seen = set()
        for pair in pairs:
            a, b = (int(x) for x in pair)
            if not (1 <= a <= n and 1 <= b <= n):
                raise PosetError(f"element out of range in {(a, b)} for n={n}")
            if a == b:
                raise PosetError(f"cycle detected: {a} < {a}")
            if (a, b) in seen:
                raise PosetError(f"duplicate cover {(a, b)}")
            seen.add((a, b))
        graph = {v: set() for v in range(1, n + 1)}
        for a, b in seen:
            graph[b].add(a)
        try:
            tuple(TopologicalSorter(graph).static_order())
        except CycleError as exc:
            raise PosetError(f"cycle detected through {exc.args[1]}") from None
        below = _strict_down_sets(n, seen)
        covers = frozenset(
            (a, b) for a, b in seen
            if not any(a in below[c] for c in below[b] if c != a)
        )
        if strict and covers != seen:
            raise PosetError(f"redundant covers {sorted(seen - covers)}")
        return cls(n, covers)

    @classmethod
    def antichain(cls, n: int) -> Poset:
        return cls(n, frozenset())

    @classmethod
    def chain(cls, order) -> Poset:
        order = list(order)
        return cls.from_relations(len(order), zip(order, order[1:]))

    @cached_property
    def down_sets(self) -> dict[int, frozenset]:
        return {v: frozenset(s) for v, s in _strict_down_sets(self.n, self.covers).items()}

    @cached_property
    def relations(self) -> tuple[tuple[int, int], ...]:
        """Every strict relation a <_P b, sorted."""
        return tuple(sorted((a, b) for b in range(1, self.n + 1) for a in self.down_sets[b]))

    def less(self, a: int, b: int) -> bool:
        return a in self.down_sets[b]


def _strict_down_sets(n, pairs):
    preds = {v: set() for v in range(1, n + 1)}
    for a, b in pairs:
        preds[b].add(a)
    below: dict[int, set] = {}

    def visit(v):
        if v not in below:
            acc = set()
            for p in preds[v]:
                acc.add(p)
                acc |= visit(p)
            below[v] = acc
        return below[v]

    for v in range(1, n + 1):
        visit(v)
    return below


def parse_poset(source, strict: bool = False) -> Poset:
    """Read the JSON form {"n": int, "covers": [[a, b], ...]} (a text or a dict)."""
    if isinstance(source, (str, bytes)):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise PosetError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        n = int(source["n"])
        pairs = [tuple(p) for p in source.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise PosetError(f"malformed poset: {exc}") from None
    if any(len(p) != 2 for p in pairs):
        raise PosetError("each cover must be a pair [a, b]")
    return Poset.from_relations(n, pairs, strict=strict)


def poset_to_json(P: Poset) -> dict:
    return {"n": P.n, "covers": [list(c) for c in sorted(P.covers)]}


def hasse_dot(P: Poset, name: str = "P") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {v};" for v in range(1, P.n + 1)]
    lines += [f"  {a} -> {b};" for a, b in sorted(P.covers)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def is_p_partition(P: Poset, values) -> bool:
    """`values[i-1]` is f(i)."""
    for i, j in P.relations:
        fi, fj = values[i - 1], values[j - 1]
        if fi > fj or (i > j and fi == fj):
            return False
    return True


def linear_extensions(P: Poset, bound: int = ENUMERATION_BOUND) -> Iterator[tuple[int, ...]]:
    """Backtrack over the currently minimal elements in ascending order."""
    check_bound(P.n, bound)
    preds = {v: {a for a, b in P.covers if b == v} for v in range(1, P.n + 1)}
    word: list[int] = []
    placed: set[int] = set()

    def extend():
        if len(word) == P.n:
            yield tuple(word)
            return
        for v in range(1, P.n + 1):
            if v not in placed and preds[v] <= placed:
                word.append(v)
                placed.add(v)
                yield from extend()
                placed.discard(v)
                word.pop()

    yield from extend()


def p_eulerian(P: Poset, k: int, bound: int = ENUMERATION_BOUND) -> int:
    return sum(1 for pi in linear_extensions(P, bound) if des(pi) == k)


def omega(P: Poset, k: int, search_bound: int = OMEGA_SEARCH_BOUND) -> int:
    """Number of P-partitions with values in {0..k}, by direct search.

    Values are assigned to 1, 2, ..., n in turn and a branch is cut as soon as
    a relation between two assigned elements fails.
    """
    if k < 0:
        return 0
    if (k + 1) ** P.n > search_bound:
        raise BoundExceeded(f"(k+1)^n = {(k + 1) ** P.n} exceeds the search bound {search_bound}")
    n = P.n
    # constraints checked once both ends are assigned, at the larger label
    checks = {v: [] for v in range(1, n + 1)}
    for i, j in P.relations:
        checks[max(i, j)].append((i, j))
    f = [0] * (n + 1)

    def count(v):
        if v > n:
            return 1
        total = 0
        for x in range(k + 1):
            f[v] = x
            if all(f[i] < f[j] if i > j else f[i] <= f[j] for i, j in checks[v]):
                total += count(v + 1)
        return total

    return count(1)


def omega_via_linext(P: Poset, k: int, bound: int = ENUMERATION_BOUND) -> int:
    """Sum over linear extensions pi of C(n + k - des(pi), n)."""
    if k < 0:
        return 0
    return sum(binomial(P.n + k - des(pi), P.n) for pi in linear_extensions(P, bound)
               if des(pi) <= k)


def is_p_compatible(P: Poset, beta) -> bool:
    """Whether the ball placement behind a (plain or anchored) barred permutation is a P-partition."""
    if isinstance(beta, AnchoredBarredPermutation):
        beta = beta.underlying()
    return is_p_partition(P, beta.boxes())


def alternating_omega_sum(P: Poset, k: int) -> int:
    return sum((-1) ** i * binomial(P.n + 1, i) * omega(P, k - i) for i in range(k + 1))


@dataclass
class PeulReport:
    poset: Poset
    k: int
    omega_values: dict[int, int]
    class_counts: dict[int, int]
    fixed_points: int
    signed_sum: int
    alternating_sum: int
    p_eulerian: int

    @property
    def ok(self) -> bool:
        classes_match = all(
            self.class_counts.get(i, 0) == binomial(self.poset.n + 1, i) * self.omega_values[self.k - i]
            for i in range(self.k + 1)
        )
        return classes_match and self.signed_sum == self.alternating_sum == self.p_eulerian


def verify_die_peul(P: Poset, k: int, bound: int = ENUMERATION_BOUND) -> PeulReport:
    """Run iota1 over the P-compatible anchored barred permutations with k bars."""
    items = [b for pi in linear_extensions(P, bound) for b in anchored_over(pi, k)]
    classes: dict[int, int] = {}
    for b in items:
        classes[b.float_count] = classes.get(b.float_count, 0) + 1
    tally = check_sign_reversing_involution(items, iota1, lambda b: b.sign, lambda b: b.only_anchors)
    omegas = {j: omega(P, j) for j in range(k + 1)}
    alt = sum((-1) ** i * binomial(P.n + 1, i) * omegas[k - i] for i in range(k + 1))
    return PeulReport(P, k, omegas, dict(sorted(classes.items())), tally.fixed_points,
                      tally.signed_sum, alt, p_eulerian(P, k, bound))
