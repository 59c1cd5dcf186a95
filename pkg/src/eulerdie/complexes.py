"""
Finite abstract simplicial complexes, f- and h-vectors, interval partitions,
decorated faces, and barycentric subdivisions.

Faces are int bitmasks over the vertex positions in ``vertex_labels``; bit i is
the i-th label.  That order is also the vertex order used by `iota3`.

Throughout, ``f[i]`` counts faces with i vertices, so ``f[0] == 1`` for the
empty face and a complex whose largest face has d vertices has an f-vector of
length d+1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Callable, Iterator

from ._limits import COMPLEX_FACE_BOUND, BoundExceeded, VerificationFailure, check_bound
from .involution import check_sign_reversing_involution
from .numbers import binomial, descent_set, eulerian, stirling2

__all__ = [
    "ComplexError", "NotPureError", "SimplicialComplex", "FVector", "IntervalPartition",
    "PartitionCheck", "DecoratedFace", "Die3Report",
    "from_facets", "f_vector", "h_vector", "euler_characteristic", "is_pure",
    "find_partition", "iter_partitions", "verify_partition", "iota3", "decorated_faces", "verify_die_simplicial",
    "barycentric", "delta_n", "flag_to_composition", "composition_to_flag",
    "render_flag_composition", "verify_fvector_formulas",
    "complex_to_json", "complex_from_json", "partition_to_json", "partition_from_json",
    "face_poset_dot", "delta_face_name",
]


class ComplexError(ValueError):
    pass


class NotPureError(ComplexError):
    pass


def submasks(mask: int) -> Iterator[int]:
    """Every submask of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_labels: tuple
    facets: tuple[int, ...]
    faces: frozenset

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertex_labels)}

    @cached_property
    def sorted_faces(self) -> tuple[int, ...]:
        return tuple(sorted(self.faces, key=lambda m: (m.bit_count(), m)))

    @property
    def dimension(self) -> int:
        return max(m.bit_count() for m in self.facets) - 1

    def mask(self, labels) -> int:
        try:
            return sum(1 << self.index[v] for v in set(labels))
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None

    def labels(self, mask: int) -> tuple:
        return tuple(self.vertex_labels[i] for i in _bits(mask))


def from_facets(vertex_labels, facet_list, face_bound: int = COMPLEX_FACE_BOUND) -> SimplicialComplex:
    """Downward closure of the given facets.  A facet inside another one is rejected."""
    labels = tuple(vertex_labels)
    if len(set(labels)) != len(labels):
        raise ComplexError("vertex labels must be distinct")
    index = {v: i for i, v in enumerate(labels)}
    masks = []
    for facet in facet_list:
        facet = list(facet)
        if len(set(facet)) != len(facet):
            raise ComplexError(f"repeated vertex in facet {facet}")
        try:
            masks.append(sum(1 << index[v] for v in facet))
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None
    if not masks:
        masks = [0]
    for a, b in combinations(range(len(masks)), 2):
        if masks[a] & masks[b] in (masks[a], masks[b]):
            raise ComplexError(f"facet {sorted(facet_list[a] if masks[a] & masks[b] == masks[a] else facet_list[b])}"
                               " is contained in another facet")
    if sum(2 ** m.bit_count() for m in masks) > 8 * face_bound:
        raise BoundExceeded("complex too large to materialize")
    faces = set()
    for m in masks:
        faces.update(submasks(m))
    if len(faces) > face_bound:
        raise BoundExceeded(f"{len(faces)} faces exceed the bound {face_bound}")
    return SimplicialComplex(labels, tuple(sorted(masks)), frozenset(faces))


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, i):
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)


def f_vector(S: SimplicialComplex) -> FVector:
    d = max(m.bit_count() for m in S.facets)
    counts = [0] * (d + 1)
    for m in S.faces:
        counts[m.bit_count()] += 1
    return FVector(tuple(counts))


def h_vector(f) -> tuple[int, ...]:
    """h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_i for k = 0..d."""
    f = tuple(f)
    d = len(f) - 1
    h = tuple(
        sum((-1) ** (k - i) * binomial(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )
    if h[d] != (-1) ** d * (1 - euler_characteristic(f)):
        raise VerificationFailure("top h-entry disagrees with the Euler characteristic")
    return h


def euler_characteristic(f) -> int:
    """Alternating count of the nonempty faces, f_1 - f_2 + f_3 - ..."""
    return sum((-1) ** (i - 1) * x for i, x in enumerate(f) if i >= 1)


def is_pure(S: SimplicialComplex) -> bool:
    return len({m.bit_count() for m in S.facets}) == 1


@dataclass(frozen=True)
class IntervalPartition:
    blocks: tuple[tuple[int, int], ...]  # (anchor mask, facet mask)

    def census(self, d: int) -> tuple[int, ...]:
        out = [0] * (d + 1)
        for anchor, _ in self.blocks:
            out[anchor.bit_count()] += 1
        return tuple(out)

    def block_of(self) -> dict[int, tuple[int, int]]:
        """Face mask -> the block whose interval contains it."""
        return {g: (a, f) for a, f in self.blocks for g in _interval(a, f)}


def _interval(anchor: int, facet: int) -> Iterator[int]:
    for extra in submasks(facet & ~anchor):
        yield anchor | extra


def iter_partitions(S: SimplicialComplex, node_limit: int | None = None) -> Iterator[IntervalPartition]:
    """Every partition of the faces into intervals [anchor, facet], each once.

    Depth-first exact cover: the smallest uncovered faces can only be covered
    as anchors, so branch on the one with the fewest usable facets.
    """
    if not is_pure(S):
        raise NotPureError("partitions are only searched for pure complexes")
    over = {g: [f for f in S.facets if g & f == g] for g in S.faces}
    uncovered = set(S.faces)
    used: set[int] = set()
    chosen: list[tuple[int, int]] = []
    nodes = 0

    def usable(g):
        return [f for f in over[g] if f not in used
                and all(h in uncovered for h in _interval(g, f))]

    def search():
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise BoundExceeded(f"partition search exceeded {node_limit} nodes")
        if not uncovered:
            yield IntervalPartition(tuple(sorted(chosen, key=lambda b: (b[1], b[0]))))
            return
        size = min(g.bit_count() for g in uncovered)
        best = None
        for g in sorted(h for h in uncovered if h.bit_count() == size):
            opts = usable(g)
            if best is None or len(opts) < len(best[1]):
                best = (g, opts)
                if not opts:
                    return
        g, opts = best
        for f in opts:
            block = list(_interval(g, f))
            uncovered.difference_update(block)
            used.add(f)
            chosen.append((g, f))
            yield from search()
            chosen.pop()
            used.discard(f)
            uncovered.update(block)

    yield from search()


def find_partition(S: SimplicialComplex, node_limit: int | None = None) -> IntervalPartition | None:
    """The first partition `iter_partitions` finds, or None once the search
    space is exhausted without one."""
    return next(iter_partitions(S, node_limit), None)


@dataclass
class PartitionCheck:
    valid: bool
    reason: str
    census: tuple[int, ...]
    h: tuple[int, ...]

    def __bool__(self):
        return self.valid


def verify_partition(S: SimplicialComplex, P: IntervalPartition) -> PartitionCheck:
    """Check facet-hood, anchor containment, disjointness and coverage, then
    compare the anchor-size census with the h-vector."""
    h = h_vector(f_vector(S))
    d = len(h) - 1
    census = tuple(P.census(d)) if all(a.bit_count() <= d for a, _ in P.blocks) else ()

    def fail(reason):
        return PartitionCheck(False, reason, census, h)

    facets = set(S.facets)
    seen_facets = set()
    covered: dict[int, int] = {}
    for anchor, facet in P.blocks:
        if facet not in facets:
            return fail(f"{S.labels(facet)} is not a facet")
        if facet in seen_facets:
            return fail(f"facet {S.labels(facet)} used twice")
        seen_facets.add(facet)
        if anchor & facet != anchor:
            return fail(f"anchor {S.labels(anchor)} not inside facet {S.labels(facet)}")
        for g in _interval(anchor, facet):
            if g in covered:
                return fail(f"face {S.labels(g)} lies in two intervals")
            covered[g] = facet
    missing = S.faces - covered.keys()
    if missing:
        g = min(missing, key=lambda m: (m.bit_count(), m))
        return fail(f"face {S.labels(g)} is not covered")
    if census != h:
        return fail(f"census {census} differs from h-vector {h}")
    return PartitionCheck(True, "ok", census, h)


@dataclass(frozen=True)
class DecoratedFace:
    face: int
    remarkable: int

    @property
    def sign(self) -> int:
        return -1 if self.remarkable.bit_count() % 2 else 1


def decorated_faces(S: SimplicialComplex, P: IntervalPartition, k: int) -> list[DecoratedFace]:
    """Pairs (G, J) with G in [anchor, facet], J inside facet - G, |G| + |J| = k."""
    out = []
    for anchor, facet in P.blocks:
        for g in _interval(anchor, facet):
            need = k - g.bit_count()
            if need < 0:
                continue
            for js in combinations(_bits(facet & ~g), need):
                out.append(DecoratedFace(g, sum(1 << j for j in js)))
    return out


def iota3(x: DecoratedFace, blocks: dict[int, tuple[int, int]]) -> DecoratedFace:
    """Move the lowest-indexed vertex of (G - anchor) | J across."""
    anchor, _ = blocks[x.face]
    free = (x.face & ~anchor) | x.remarkable
    if not free:
        return x
    v = free & -free
    if x.remarkable & v:
        return DecoratedFace(x.face | v, x.remarkable & ~v)
    return DecoratedFace(x.face & ~v, x.remarkable | v)


@dataclass
class Die3Report:
    k: int
    class_counts: dict[int, int]
    paired: int
    fixed_points: int
    signed_sum: int
    h_k: int
    census_k: int

    @property
    def ok(self) -> bool:
        return self.signed_sum == self.fixed_points == self.h_k == self.census_k


def verify_die_simplicial(S: SimplicialComplex, P: IntervalPartition, k: int) -> Die3Report:
    check = verify_partition(S, P)
    if not check:
        raise VerificationFailure(f"not a valid partition: {check.reason}")
    f = f_vector(S)
    d = f.d
    blocks = P.block_of()
    items = decorated_faces(S, P, k)
    classes: dict[int, int] = {}
    for x in items:
        i = x.face.bit_count()
        classes[i] = classes.get(i, 0) + 1
    for i in range(min(k, d) + 1):
        if classes.get(i, 0) != binomial(d - i, k - i) * f[i]:
            raise VerificationFailure(f"class {i} has {classes.get(i, 0)} decorated faces")

    def laws(x, y):
        if (x.face | x.remarkable) != (y.face | y.remarkable) or blocks[x.face][1] != blocks[y.face][1]:
            raise VerificationFailure(f"iota3 left the interval or changed G|J for {x}")

    tally = check_sign_reversing_involution(
        items, lambda x: iota3(x, blocks), lambda x: x.sign,
        lambda x: x.remarkable == 0 and x.face == blocks[x.face][0], laws,
    )
    h = check.h
    census = check.census
    return Die3Report(k, dict(sorted(classes.items())), tally.paired, tally.fixed_points,
                      tally.signed_sum, h[k] if k <= d else 0, census[k] if k <= d else 0)


# ---- barycentric subdivision ----

def _ordered_bell(m: int) -> int:
    return sum(stirling2(m, j) * math.factorial(j) for j in range(1, m + 1)) if m else 1


def barycentric(S: SimplicialComplex, face_bound: int = COMPLEX_FACE_BOUND) -> SimplicialComplex:
    """Vertices are the nonempty faces of S (labelled by tuples of S-labels),
    faces are flags of them.  The maximal flags grow a facet one vertex at a time."""
    if sum(_ordered_bell(f.bit_count()) for f in S.facets) > face_bound:
        raise BoundExceeded("barycentric subdivision too large")
    verts = [g for g in S.sorted_faces if g]
    labels = [S.labels(g) for g in verts]
    facets = []
    for f in S.facets:
        for order in permutations(_bits(f)):
            chain, acc = [], 0
            for i in order:
                acc |= 1 << i
                chain.append(S.labels(acc))
            facets.append(chain)
    return from_facets(labels, facets, face_bound)


def delta_n(n: int, boundary: bool = False, bound: int = 7) -> tuple[SimplicialComplex, IntervalPartition]:
    """The subdivided simplex on 1..n (or its boundary) with one interval per
    permutation: facet = full flag of prefixes, anchor = prefixes at descents.

    Vertices are the nonempty (proper, for the boundary) subsets of 1..n as
    sorted tuples, ordered by size then lexicographically.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    check_bound(n, bound)
    top = n - 1 if boundary else n
    labels = [c for r in range(1, top + 1) for c in combinations(range(1, n + 1), r)]
    facets, anchors = [], []
    for pi in permutations(range(1, n + 1)):
        prefixes = [tuple(sorted(pi[:j])) for j in range(1, top + 1)]
        facets.append(prefixes)
        anchors.append([tuple(sorted(pi[:j])) for j in descent_set(pi)])
    S = from_facets(labels, facets)
    P = IntervalPartition(tuple(sorted(
        ((S.mask(a), S.mask(f)) for a, f in zip(anchors, facets)), key=lambda b: (b[1], b[0]))))
    return S, P


def flag_to_composition(flag, n: int) -> tuple[tuple[int, ...], ...]:
    """Nested subsets F_1 < ... < F_m of 1..n -> blocks F_1, F_2 - F_1, ..., {1..n} - F_m.
    The last block is empty when F_m is everything."""
    chain = sorted((frozenset(s) for s in flag), key=len)
    full = frozenset(range(1, n + 1))
    prev = frozenset()
    blocks = []
    for s in chain + [full]:
        if not prev <= s or (s == prev and s != full):
            raise ValueError(f"{flag} is not a flag")
        blocks.append(tuple(sorted(s - prev)))
        prev = s
    return tuple(blocks)


def composition_to_flag(blocks) -> tuple[tuple[int, ...], ...]:
    acc: set[int] = set()
    flag = []
    for b in list(blocks)[:-1]:
        acc |= set(b)
        flag.append(tuple(sorted(acc)))
    return tuple(flag)


def render_flag_composition(blocks) -> str:
    return "|".join("".join(map(str, b)) for b in blocks)


@dataclass
class FormulaCheck:
    n: int
    f: tuple[int, ...]
    f_expected: tuple[int, ...]
    h: tuple[int, ...]
    f_boundary: tuple[int, ...]
    f_boundary_expected: tuple[int, ...]
    h_boundary: tuple[int, ...]
    eulerian_row: tuple[int, ...]
    census: tuple[int, ...]
    census_boundary: tuple[int, ...]

    @property
    def mismatches(self) -> list[str]:
        out = []
        for name, got, want in (("f", self.f, self.f_expected),
                                ("f'", self.f_boundary, self.f_boundary_expected)):
            out += [f"{name}_{i}: {g} != {w}" for i, (g, w) in enumerate(zip(got, want)) if g != w]
        row = self.eulerian_row
        if self.h[:self.n] != row or self.h[self.n:] != (0,):
            out.append(f"h {self.h} != Eulerian row {row}")
        if self.h_boundary != row:
            out.append(f"h' {self.h_boundary} != Eulerian row {row}")
        if self.census[:self.n] != row or self.census_boundary != row:
            out.append("partition census differs from the Eulerian row")
        return out

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_fvector_formulas(n: int, bound: int = 7) -> FormulaCheck:
    """Check f_i = i! S(n+1,i+1) and f'_i = (i+1)! S(n,i+1) on the built complexes,
    and that both h-vectors are row n of the Eulerian triangle."""
    S, P = delta_n(n, False, bound)
    B, Q = delta_n(n, True, bound)
    f, fb = f_vector(S), f_vector(B)
    cs, cb = verify_partition(S, P), verify_partition(B, Q)
    if not (cs and cb):
        raise VerificationFailure(f"canonical partition invalid: {cs.reason} / {cb.reason}")
    return FormulaCheck(
        n,
        tuple(f), tuple(math.factorial(i) * stirling2(n + 1, i + 1) for i in range(n + 1)),
        h_vector(f),
        tuple(fb), tuple(math.factorial(i + 1) * stirling2(n, i + 1) for i in range(n)),
        h_vector(fb),
        tuple(eulerian(n, k) for k in range(n)),
        cs.census, cb.census,
    )


# ---- codecs ----

def _label_out(v):
    return list(v) if isinstance(v, tuple) else v


def _label_in(v):
    return tuple(v) if isinstance(v, list) else v


def complex_to_json(S: SimplicialComplex) -> dict:
    return {"vertices": [_label_out(v) for v in S.vertex_labels],
            "facets": [[_label_out(v) for v in S.labels(f)] for f in S.facets]}


def complex_from_json(data) -> SimplicialComplex:
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        labels = [_label_in(v) for v in data["vertices"]]
        facets = [[_label_in(v) for v in f] for f in data["facets"]]
    except (KeyError, TypeError) as exc:
        raise ComplexError(f"malformed complex: {exc}") from None
    return from_facets(labels, facets)


def partition_to_json(S: SimplicialComplex, P: IntervalPartition) -> list:
    return [{"anchor": [_label_out(v) for v in S.labels(a)],
             "facet": [_label_out(v) for v in S.labels(f)]} for a, f in P.blocks]


def partition_from_json(S: SimplicialComplex, data) -> IntervalPartition:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    return IntervalPartition(tuple(
        (S.mask([_label_in(v) for v in b["anchor"]]), S.mask([_label_in(v) for v in b["facet"]]))
        for b in data))


def _default_face_name(S, mask):
    labs = S.labels(mask)
    if not labs:
        return "∅"
    return "{" + ",".join("".join(map(str, v)) if isinstance(v, tuple) else str(v) for v in labs) + "}"


def face_poset_dot(S: SimplicialComplex, P: IntervalPartition | None = None,
                   name: Callable | None = None) -> str:
    """Face poset, bottom to top, with each interval of `P` drawn as a cluster."""
    name = name or (lambda m: _default_face_name(S, m))
    lines = ["digraph faces {", "  rankdir=BT;", "  node [shape=plaintext];"]

    def node(m):
        return f'  f{m} [label="{name(m)}"];'

    if P is not None:
        for i, (a, f) in enumerate(P.blocks):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append("    style=rounded; color=gray;")
            lines += ["  " + node(m) for m in sorted(_interval(a, f), key=lambda m: (m.bit_count(), m))]
            lines.append("  }")
    else:
        lines += [node(m) for m in S.sorted_faces]
    for m in S.sorted_faces:
        for i in _bits(((1 << len(S.vertex_labels)) - 1) & ~m):
            up = m | 1 << i
            if up in S.faces:
                lines.append(f"  f{m} -> f{up};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def delta_face_name(S: SimplicialComplex, n: int) -> Callable[[int], str]:
    """Names faces of delta_n by their set-composition encoding, e.g. '13|2|'."""
    return lambda m: render_flag_composition(flag_to_composition(S.labels(m), n))
