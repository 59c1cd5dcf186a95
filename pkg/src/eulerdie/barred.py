"""
Barred and anchored barred permutations, and the float/unnecessary toggle.

A barred permutation of size n with k bars is a placement of balls 1..n into
boxes 0..k, read box by box with each box sorted.  Gaps are numbered 0..n:
gap 0 sits before pi(1), gap n after pi(n).

In the anchored model every descent gap holds exactly one anchor bar, which is
derived from ``pi`` and never stored.  The other bars are unnecessary bars (any
number per gap) and float bars (at most one per gap, sign -1 each).

Text form, gap by gap: ``f|`` float, ``|`` unnecessary, ``a|`` anchor, floats
left of unnecessary bars left of anchors.  Elements are single digits with no
separators when n <= 9, otherwise every token is separated by a space.

>>> beta = parse_anchored("f||3|56|a|12f|4|789")
>>> render_anchored(iota1(beta))
'||3|56|a|12f|4|789'
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from ._limits import ENUMERATION_BOUND, VerificationFailure, check_bound
from .involution import check_sign_reversing_involution
from .numbers import binomial, check_permutation, des, eulerian

__all__ = [
    "BarredPermutation", "AnchoredBarredPermutation", "Die1Report",
    "weak_compositions", "enumerate_barred", "count_barred",
    "anchored_over", "enumerate_anchored", "iota1",
    "verify_die_eq1", "restrict_to_permutation",
    "render_barred", "parse_barred", "render_anchored", "parse_anchored",
    "anchored_to_json", "anchored_from_json",
]


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative ints summing to `total`, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _descent_gaps(pi) -> tuple[int, ...]:
    n = len(pi)
    return tuple(1 if 0 < g < n and pi[g - 1] > pi[g] else 0 for g in range(n + 1))


@dataclass(frozen=True)
class BarredPermutation:
    pi: tuple[int, ...]
    bars: tuple[int, ...]  # per gap, len n+1

    def __post_init__(self):
        check_permutation(self.pi)
        if len(self.bars) != len(self.pi) + 1 or min(self.bars) < 0:
            raise ValueError("need n+1 nonnegative bar counts")
        for g, d in enumerate(_descent_gaps(self.pi)):
            if d and self.bars[g] == 0:
                raise ValueError(f"descent gap {g} of {self.pi} has no bar")

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def k(self) -> int:
        return sum(self.bars)

    def boxes(self) -> tuple[int, ...]:
        """Box label of each ball 1..n, i.e. the number of bars to its left."""
        out = [0] * self.n
        seen = 0
        for g, x in enumerate(self.pi):
            seen += self.bars[g]
            out[x - 1] = seen
        return tuple(out)

    @classmethod
    def from_boxes(cls, boxes, k: int) -> BarredPermutation:
        """Build from ball i -> box boxes[i-1] with boxes labelled 0..k."""
        n = len(boxes)
        if any(not 0 <= b <= k for b in boxes):
            raise ValueError("box label out of range")
        pi = tuple(sorted(range(1, n + 1), key=lambda i: (boxes[i - 1], i)))
        labels = [0] + [boxes[x - 1] for x in pi] + [k]
        return cls(pi, tuple(labels[g + 1] - labels[g] for g in range(n + 1)))


@dataclass(frozen=True)
class AnchoredBarredPermutation:
    pi: tuple[int, ...]
    unnecessary: tuple[int, ...]
    floats: tuple[bool, ...]

    def __post_init__(self):
        check_permutation(self.pi)
        m = len(self.pi) + 1
        if len(self.unnecessary) != m or len(self.floats) != m:
            raise ValueError("need n+1 gap entries")
        if min(self.unnecessary) < 0:
            raise ValueError("negative bar count")

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def anchors(self) -> tuple[int, ...]:
        return _descent_gaps(self.pi)

    @property
    def float_count(self) -> int:
        return sum(self.floats)

    @property
    def total_bars(self) -> int:
        return des(self.pi) + sum(self.unnecessary) + self.float_count

    @property
    def sign(self) -> int:
        return -1 if self.float_count % 2 else 1

    @property
    def only_anchors(self) -> bool:
        return not any(self.unnecessary) and not any(self.floats)

    def underlying(self) -> BarredPermutation:
        """Forget the bar species."""
        return BarredPermutation(
            self.pi,
            tuple(u + f + a for u, f, a in zip(self.unnecessary, self.floats, self.anchors)),
        )


def enumerate_barred(n: int, k: int, bound: int = ENUMERATION_BOUND) -> Iterator[BarredPermutation]:
    """B_{n,k}: per permutation with at most k descents, every way to put the
    spare bars into the n+1 gaps on top of one bar per descent."""
    check_bound(n, bound)
    for pi in permutations(range(1, n + 1)):
        base = _descent_gaps(pi)
        spare = k - sum(base)
        if spare < 0:
            continue
        for extra in weak_compositions(spare, n + 1):
            yield BarredPermutation(pi, tuple(b + e for b, e in zip(base, extra)))


def count_barred(n: int, k: int, bound: int = ENUMERATION_BOUND) -> int:
    return sum(1 for _ in enumerate_barred(n, k, bound))


def anchored_over(pi, k: int, floats: int | None = None) -> list[AnchoredBarredPermutation]:
    """The set B_{pi,k} (optionally only the elements with `floats` float bars),
    sorted by (unnecessary vector, float vector)."""
    pi = tuple(pi)
    n = len(pi)
    spare = k - des(pi)
    if spare < 0:
        return []
    counts = range(min(spare, n + 1) + 1) if floats is None else [floats]
    out = []
    for i in counts:
        if i > spare or i > n + 1:
            continue
        for gaps in combinations(range(n + 1), i):
            fl = tuple(g in gaps for g in range(n + 1))
            for unn in weak_compositions(spare - i, n + 1):
                out.append(AnchoredBarredPermutation(pi, unn, fl))
    out.sort(key=lambda b: (b.unnecessary, b.floats))
    return out


def enumerate_anchored(
    n: int, k: int, floats: int | None = None, bound: int = ENUMERATION_BOUND
) -> Iterator[AnchoredBarredPermutation]:
    """Every element of the anchored set with n balls and k bars, once each,
    ordered by (pi, unnecessary vector, float vector)."""
    check_bound(n, bound)
    if floats is not None and not 0 <= floats <= k:
        raise ValueError("need 0 <= floats <= k")
    for pi in permutations(range(1, n + 1)):
        yield from anchored_over(pi, k, floats)


def iota1(beta: AnchoredBarredPermutation) -> AnchoredBarredPermutation:
    """Toggle the leftmost non-anchor bar between float and unnecessary."""
    for g in range(beta.n + 1):
        if beta.floats[g] or beta.unnecessary[g]:
            unn = list(beta.unnecessary)
            fl = list(beta.floats)
            if fl[g]:
                fl[g] = False
                unn[g] += 1
            else:
                fl[g] = True
                unn[g] -= 1
            return AnchoredBarredPermutation(beta.pi, tuple(unn), tuple(fl))
    return beta


@dataclass
class Die1Report:
    n: int
    k: int
    class_counts: dict[int, int]
    paired: int
    fixed_points: int
    signed_sum: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.signed_sum == self.fixed_points == self.expected and self.paired % 2 == 0


def _preserves_pi_and_bars(x, y):
    if x.pi != y.pi or x.total_bars != y.total_bars:
        raise VerificationFailure(f"iota1 changed the permutation or bar count of {x}")


def _die1(n, k, items, expected) -> Die1Report:
    items = list(items)
    classes: dict[int, int] = {}
    for b in items:
        classes[b.float_count] = classes.get(b.float_count, 0) + 1
    tally = check_sign_reversing_involution(
        items, iota1, lambda b: b.sign, lambda b: b.only_anchors, _preserves_pi_and_bars
    )
    return Die1Report(n, k, dict(sorted(classes.items())), tally.paired,
                      tally.fixed_points, tally.signed_sum, expected)


def verify_die_eq1(n: int, k: int, bound: int = ENUMERATION_BOUND) -> Die1Report:
    """Run iota1 over every anchored barred permutation with n balls and k bars."""
    return _die1(n, k, enumerate_anchored(n, k, bound=bound), eulerian(n, k))


def restrict_to_permutation(n: int, k: int, pi, bound: int = ENUMERATION_BOUND) -> Die1Report:
    """The same check on the elements whose underlying permutation is `pi`."""
    check_bound(n, bound)
    pi = check_permutation(pi)
    if len(pi) != n:
        raise ValueError("permutation length differs from n")
    return _die1(n, k, anchored_over(pi, k), 1 if des(pi) == k else 0)


def expected_class_count(n: int, k: int, i: int) -> int:
    return binomial(n + 1, i) * (k + 1 - i) ** n


# ---- codecs ----

_TOKEN = {True: re.compile(r"a\||f\||\||\d+|\S"), False: re.compile(r"a\||f\||\||\d|\S")}


def _tokens(text: str) -> list[str]:
    spaced = any(c.isspace() for c in text.strip())
    return _TOKEN[spaced].findall(text)


def _join(tokens, n):
    return ("" if n <= 9 else " ").join(tokens)


def render_barred(beta: BarredPermutation) -> str:
    toks = []
    for g in range(beta.n + 1):
        toks += ["|"] * beta.bars[g]
        if g < beta.n:
            toks.append(str(beta.pi[g]))
    return _join(toks, beta.n)


def _split_gaps(text):
    pi, gaps = [], [[]]
    for t in _tokens(text):
        if t.isdigit():
            pi.append(int(t))
            gaps.append([])
        elif t in ("|", "a|", "f|"):
            gaps[-1].append(t)
        else:
            raise ValueError(f"unexpected symbol {t!r} in {text!r}")
    return tuple(pi), gaps


def parse_barred(text: str) -> BarredPermutation:
    pi, gaps = _split_gaps(text)
    if any(t != "|" for g in gaps for t in g):
        raise ValueError("plain barred permutations use only '|'")
    return BarredPermutation(pi, tuple(len(g) for g in gaps))


def render_anchored(beta: AnchoredBarredPermutation) -> str:
    toks = []
    for g in range(beta.n + 1):
        if beta.floats[g]:
            toks.append("f|")
        toks += ["|"] * beta.unnecessary[g]
        if beta.anchors[g]:
            toks.append("a|")
        if g < beta.n:
            toks.append(str(beta.pi[g]))
    return _join(toks, beta.n)


def parse_anchored(text: str) -> AnchoredBarredPermutation:
    pi, gaps = _split_gaps(text)
    floats = tuple(g.count("f|") > 0 for g in gaps)
    if any(g.count("f|") > 1 for g in gaps):
        raise ValueError("at most one float bar per gap")
    beta = AnchoredBarredPermutation(pi, tuple(g.count("|") for g in gaps), floats)
    if tuple(g.count("a|") for g in gaps) != beta.anchors:
        raise ValueError(f"anchors in {text!r} do not sit exactly at the descents")
    return beta


def anchored_to_json(beta: AnchoredBarredPermutation) -> str:
    return json.dumps({"pi": list(beta.pi), "unnecessary": list(beta.unnecessary),
                       "float": [bool(f) for f in beta.floats]})


def anchored_from_json(data) -> AnchoredBarredPermutation:
    if isinstance(data, str):
        data = json.loads(data)
    return AnchoredBarredPermutation(tuple(data["pi"]), tuple(data["unnecessary"]),
                                     tuple(bool(f) for f in data["float"]))
