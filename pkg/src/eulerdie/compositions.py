"""
Set compositions, decorated set compositions and the block-boundary toggle.

A boundary between consecutive blocks is an anchor exactly when the left
block's maximum exceeds the right block's minimum, i.e. when the reading word
has a descent there.  Anchors are computed from the blocks, never stored.

Text form: elements separated by spaces, ``|`` for a plain boundary, ``a|``
for an anchor, and a trailing ``~`` on each highlighted element:

>>> g = parse_decorated("3 5~ 6~ a| 1~ 2 4~ | 7 8~ | 9~")
>>> render_decorated(iota2(g))
'3 5~ | 6~ a| 1~ 2 4~ | 7 8~ | 9~'
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from ._limits import ENUMERATION_BOUND, VerificationFailure, check_bound
from .involution import check_sign_reversing_involution
from .numbers import binomial, descent_set, eulerian, stirling2

__all__ = [
    "SetComposition", "DecoratedSetComposition", "Die2Report",
    "enumerate_set_compositions", "count_set_compositions", "enumerate_decorated",
    "toggle_element", "iota2", "verify_die_eq2", "descent_composition",
    "render_composition", "render_decorated", "parse_decorated",
    "decorated_to_json", "decorated_from_json",
]


@dataclass(frozen=True)
class SetComposition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        elems = sorted(x for b in blocks for x in b)
        if elems != list(range(1, len(elems) + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..n")

    @property
    def n(self) -> int:
        return sum(map(len, self.blocks))

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(x for b in self.blocks for x in b)

    @property
    def anchors(self) -> tuple[bool, ...]:
        """One flag per boundary between consecutive blocks."""
        return tuple(l[-1] > r[0] for l, r in zip(self.blocks, self.blocks[1:]))

    @property
    def maxima(self) -> frozenset:
        return frozenset(b[-1] for b in self.blocks)

    @property
    def cuts(self) -> tuple[int, ...]:
        """Positions in the reading word after which a boundary sits."""
        out, pos = [], 0
        for b in self.blocks[:-1]:
            pos += len(b)
            out.append(pos)
        return tuple(out)


def _from_cuts(word, cuts) -> SetComposition:
    edges = (0,) + tuple(cuts) + (len(word),)
    return SetComposition(tuple(tuple(word[a:b]) for a, b in zip(edges, edges[1:])))


def descent_composition(pi) -> SetComposition:
    """Blocks cut exactly at the descents of pi."""
    return _from_cuts(tuple(pi), descent_set(pi))


@dataclass(frozen=True)
class DecoratedSetComposition:
    composition: SetComposition
    highlighted: frozenset

    def __post_init__(self):
        object.__setattr__(self, "highlighted", frozenset(self.highlighted))
        if not self.composition.maxima <= self.highlighted:
            raise ValueError("every block maximum must be highlighted")
        if not self.highlighted <= set(range(1, self.composition.n + 1)):
            raise ValueError("highlighted element out of range")

    @property
    def remarkable(self) -> frozenset:
        return self.highlighted - self.composition.maxima

    @property
    def sign(self) -> int:
        return -1 if len(self.remarkable) % 2 else 1

    @property
    def k(self) -> int:
        return len(self.highlighted) - 1


def enumerate_set_compositions(n: int, blocks: int | None = None,
                               bound: int = ENUMERATION_BOUND) -> Iterator[SetComposition]:
    """Each composition once, as (reading word, cut set containing every descent)."""
    check_bound(n, bound)
    for word in permutations(range(1, n + 1)):
        forced = set(descent_set(word))
        free = [p for p in range(1, n) if p not in forced]
        for r in range(len(free) + 1):
            if blocks is not None and len(forced) + r + 1 != blocks:
                continue
            for extra in combinations(free, r):
                yield _from_cuts(word, sorted(forced.union(extra)))


def count_set_compositions(n: int, blocks: int, bound: int = ENUMERATION_BOUND) -> int:
    if not 1 <= blocks <= n:
        raise ValueError("need 1 <= blocks <= n")
    return sum(1 for _ in enumerate_set_compositions(n, blocks, bound))


def enumerate_decorated(n: int, k: int, blocks: int | None = None,
                        bound: int = ENUMERATION_BOUND) -> Iterator[DecoratedSetComposition]:
    """Decorated compositions of 1..n with k+1 highlighted elements, ordered by
    (reading word, cut positions, sorted highlighted set)."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    if blocks is not None and not 1 <= blocks <= k + 1:
        raise ValueError("need 1 <= blocks <= k+1")
    items = []
    for comp in enumerate_set_compositions(n, blocks, bound):
        i = len(comp.blocks)
        if i > k + 1:
            continue
        rest = sorted(set(range(1, n + 1)) - comp.maxima)
        for extra in combinations(rest, k + 1 - i):
            items.append((comp.word, comp.cuts, tuple(sorted(comp.maxima.union(extra))),
                          DecoratedSetComposition(comp, frozenset(extra) | comp.maxima)))
    items.sort(key=lambda t: t[:3])
    for *_, gamma in items:
        yield gamma


def _symbols(gamma: DecoratedSetComposition):
    """Yield (element, what follows it) over the reading word; the follower is
    'element', 'bar', 'anchor' or None at the very end."""
    blocks = gamma.composition.blocks
    anchors = gamma.composition.anchors
    for bi, block in enumerate(blocks):
        for j, x in enumerate(block):
            if j < len(block) - 1:
                yield x, "element"
            elif bi < len(blocks) - 1:
                yield x, "anchor" if anchors[bi] else "bar"
            else:
                yield x, None


def toggle_element(gamma: DecoratedSetComposition) -> int | None:
    """Leftmost highlighted element not immediately followed by an anchor,
    ignoring the last element of the word."""
    for x, follow in _symbols(gamma):
        if follow is not None and follow != "anchor" and x in gamma.highlighted:
            return x
    return None


def iota2(gamma: DecoratedSetComposition) -> DecoratedSetComposition:
    """Add or remove the bar right after the toggle element."""
    h = toggle_element(gamma)
    if h is None:
        return gamma
    blocks = list(gamma.composition.blocks)
    bi = next(i for i, b in enumerate(blocks) if h in b)
    block = blocks[bi]
    if block[-1] != h:
        j = block.index(h) + 1
        blocks[bi:bi + 1] = [block[:j], block[j:]]
    else:
        blocks[bi:bi + 2] = [block + blocks[bi + 1]]
    return DecoratedSetComposition(SetComposition(tuple(blocks)), gamma.highlighted)


@dataclass
class Die2Report:
    n: int
    k: int
    class_counts: dict[int, int]
    paired: int
    fixed_points: int
    signed_sum: int
    expected: int

    @property
    def ok(self) -> bool:
        classes_match = all(
            self.class_counts.get(i, 0) == expected_class_count(self.n, self.k, i)
            for i in range(1, self.k + 2)
        )
        return classes_match and self.signed_sum == self.fixed_points == self.expected

    def csv_row(self) -> str:
        return f"{self.n},{self.k},{self.paired},{self.fixed_points},{self.signed_sum},{self.expected},{self.ok}"

    CSV_HEADER = "n,k,paired,fixed_points,signed_sum,eulerian,ok"


def expected_class_count(n: int, k: int, i: int) -> int:
    return binomial(n - i, k + 1 - i) * stirling2(n, i) * math.factorial(i)


def _is_descent_composition(gamma) -> bool:
    comp = gamma.composition
    return not gamma.remarkable and all(comp.anchors)


def _iota2_laws(x, y):
    if x.composition.word != y.composition.word or x.highlighted != y.highlighted:
        raise VerificationFailure(f"iota2 changed the word or highlighted set of {x}")
    if toggle_element(x) != toggle_element(y):
        raise VerificationFailure(f"iota2 changed the toggle element of {x}")
    if x != y and abs(len(x.composition.blocks) - len(y.composition.blocks)) != 1:
        raise VerificationFailure(f"iota2 moved more than one boundary of {x}")


def verify_die_eq2(n: int, k: int, bound: int = ENUMERATION_BOUND) -> Die2Report:
    """Run iota2 over every decorated composition of 1..n with k+1 highlighted elements."""
    items = list(enumerate_decorated(n, k, bound=bound))
    classes: dict[int, int] = {}
    for g in items:
        i = len(g.composition.blocks)
        classes[i] = classes.get(i, 0) + 1
    tally = check_sign_reversing_involution(
        items, iota2, lambda g: g.sign, _is_descent_composition, _iota2_laws
    )
    return Die2Report(n, k, dict(sorted(classes.items())), tally.paired,
                      tally.fixed_points, tally.signed_sum, eulerian(n, k))


# ---- codecs ----

def render_composition(comp: SetComposition) -> str:
    parts = []
    for bi, block in enumerate(comp.blocks):
        if bi:
            parts.append("a|" if comp.anchors[bi - 1] else "|")
        parts += [str(x) for x in block]
    return " ".join(parts)


def render_decorated(gamma: DecoratedSetComposition) -> str:
    comp = gamma.composition
    parts = []
    for bi, block in enumerate(comp.blocks):
        if bi:
            parts.append("a|" if comp.anchors[bi - 1] else "|")
        parts += [f"{x}~" if x in gamma.highlighted else str(x) for x in block]
    return " ".join(parts)


def parse_decorated(text: str) -> DecoratedSetComposition:
    blocks: list[list[int]] = [[]]
    marks: list[bool] = []
    highlighted = set()
    for tok in text.split():
        if tok in ("|", "a|"):
            blocks.append([])
            marks.append(tok == "a|")
            continue
        hl = tok.endswith("~")
        try:
            x = int(tok.rstrip("~"))
        except ValueError:
            raise ValueError(f"unexpected token {tok!r}") from None
        blocks[-1].append(x)
        if hl:
            highlighted.add(x)
    if any(b != sorted(b) for b in blocks):
        raise ValueError("elements within a block must increase")
    comp = SetComposition(tuple(tuple(b) for b in blocks))
    if tuple(marks) != comp.anchors:
        raise ValueError(f"anchor marks in {text!r} do not match the blocks")
    return DecoratedSetComposition(comp, frozenset(highlighted))


def decorated_to_json(gamma: DecoratedSetComposition) -> str:
    return json.dumps({"blocks": [list(b) for b in gamma.composition.blocks],
                       "highlighted": sorted(gamma.highlighted)})


def decorated_from_json(data) -> DecoratedSetComposition:
    if isinstance(data, str):
        data = json.loads(data)
    return DecoratedSetComposition(SetComposition(tuple(tuple(b) for b in data["blocks"])),
                                   frozenset(data["highlighted"]))
