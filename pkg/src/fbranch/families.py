"""The six obstruction-pattern families on ordered bipartite graphs.

A pattern on q partner pairs (a_1, b_1), ..., (a_q, b_q) is one of:

    EMPTY        no edges
    MATCH        a_i b_i for every i
    CHAIN        a_i b_j for i <= j
    CHAINSTRICT  a_i b_j for i < j
    ANTIMATCH    a_i b_j for i != j
    COMPLETE     every a_i b_j

Each family is closed under restricting to any subset of pairs (with the
inherited order), and contains exactly one member per size.  For q = 1 the
patterns coincide in two groups: a single edge (MATCH = CHAIN = COMPLETE)
and an edgeless pair (EMPTY = CHAINSTRICT = ANTIMATCH); the classifier
reports every matching tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import MalformedLineError


class Family(Enum):
    EMPTY = "empty"
    MATCH = "match"
    CHAIN = "chain"
    CHAINSTRICT = "chainstrict"
    ANTIMATCH = "antimatch"
    COMPLETE = "complete"

    def __lt__(self, other: "Family") -> bool:
        return FAMILY_ORDER.index(self) < FAMILY_ORDER.index(other)


FAMILY_ORDER = (Family.EMPTY, Family.MATCH, Family.CHAIN,
                Family.CHAINSTRICT, Family.ANTIMATCH, Family.COMPLETE)

PRIMAL_FAMILIES = frozenset({Family.MATCH, Family.CHAIN, Family.ANTIMATCH})


def pattern_has_edge(family: Family, i: int, j: int) -> bool:
    """Whether the pattern of ``family`` joins a_i to b_j (0-based)."""
    if family is Family.EMPTY:
        return False
    if family is Family.MATCH:
        return i == j
    if family is Family.CHAIN:
        return i <= j
    if family is Family.CHAINSTRICT:
        return i < j
    if family is Family.ANTIMATCH:
        return i != j
    return True  # COMPLETE


def pattern_edges(family: Family, q: int) -> frozenset[tuple[int, int]]:
    return frozenset((i, j) for i in range(q) for j in range(q)
                     if pattern_has_edge(family, i, j))


@dataclass(frozen=True)
class OrderedBipartiteGraph:
    """Bipartite graph with ordered sides of equal length; pair i consists
    of a_side[i] and b_side[i].  ``edges`` holds (i, j) index pairs meaning
    a_side[i] is adjacent to b_side[j]."""

    q: int
    edges: frozenset[tuple[int, int]]
    a_side: tuple[int, ...] = ()
    b_side: tuple[int, ...] = ()

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("pair count must be nonnegative")
        if self.a_side and len(self.a_side) != self.q:
            raise ValueError("a_side length must equal q")
        if self.b_side and len(self.b_side) != self.q:
            raise ValueError("b_side length must equal q")
        for i, j in self.edges:
            if not (0 <= i < self.q and 0 <= j < self.q):
                raise ValueError(f"edge index ({i}, {j}) out of range")

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def induced(self, pairs: Sequence[int]) -> "OrderedBipartiteGraph":
        """Restriction to the given pair indices, in the given order."""
        pos = {p: k for k, p in enumerate(pairs)}
        new_edges = frozenset((pos[i], pos[j]) for i, j in self.edges
                              if i in pos and j in pos)
        return OrderedBipartiteGraph(
            len(pairs), new_edges,
            tuple(self.a_side[p] for p in pairs) if self.a_side else (),
            tuple(self.b_side[p] for p in pairs) if self.b_side else ())

    def reversed_pairs(self) -> "OrderedBipartiteGraph":
        return self.induced(list(range(self.q - 1, -1, -1)))


def pattern_graph(family: Family, q: int) -> OrderedBipartiteGraph:
    return OrderedBipartiteGraph(q, pattern_edges(family, q))


def parse_ordered_bipartite(text: str) -> OrderedBipartiteGraph:
    """Parse the text format: first line ``q``, then edge lines ``i j``
    with 1-based pair indices."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise MalformedLineError("empty document")
    try:
        q = int(lines[0])
    except ValueError:
        raise MalformedLineError(f"first line must be the pair count, got {lines[0]!r}")
    edges = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"edge line must be 'i j', got {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"edge line must be two integers, got {ln!r}")
        if not (1 <= i <= q and 1 <= j <= q):
            raise MalformedLineError(f"pair index out of range in {ln!r}")
        edges.add((i - 1, j - 1))
    return OrderedBipartiteGraph(q, frozenset(edges))


def matches_pattern_exactly(h: OrderedBipartiteGraph, family: Family) -> bool:
    """Whether h equals the family's pattern under the given pair order."""
    return h.edges == pattern_edges(family, h.q)


def classify_si(h: OrderedBipartiteGraph) -> tuple[Family, ...]:
    """All families whose size-q pattern equals h under some reordering of
    the pairs (the partner pairing itself is kept fixed).

    For q >= 2 at most one family matches; for q = 1 the two degenerate
    groups each yield three tags.  Returns () when nothing matches.
    """
    q = h.q
    if q < 1:
        raise ValueError("classification needs at least one pair")
    tags = []
    # EMPTY, MATCH, ANTIMATCH and COMPLETE are invariant under reordering
    # the pairs, so the exact formula comparison settles them
    for family in (Family.EMPTY, Family.MATCH, Family.ANTIMATCH, Family.COMPLETE):
        if matches_pattern_exactly(h, family):
            tags.append(family)
    if _matches_chain(h, strict=False):
        tags.append(Family.CHAIN)
    if _matches_chain(h, strict=True):
        tags.append(Family.CHAINSTRICT)
    return tuple(sorted(set(tags), key=FAMILY_ORDER.index))


def _matches_chain(h: OrderedBipartiteGraph, strict: bool) -> bool:
    q = h.q
    want = q * (q - 1) // 2 + (0 if strict else q)
    if len(h.edges) != want:
        return False
    # degrees force the order: a-side degree of the pair at chain position k
    # is q - k (non-strict) or q - 1 - k (strict), all distinct
    deg_a = [0] * q
    for i, _ in h.edges:
        deg_a[i] += 1
    base = q if not strict else q - 1
    pos = [0] * q
    seen = set()
    for p in range(q):
        k = base - deg_a[p]
        if k < 0 or k >= q or k in seen:
            return False
        seen.add(k)
        pos[p] = k
    for i in range(q):
        for j in range(q):
            expect = pos[i] <= pos[j] if not strict else pos[i] < pos[j]
            if ((i, j) in h.edges) != expect:
                return False
    return True


def pair_color(h: OrderedBipartiteGraph, i: int, j: int) -> int:
    """Four-way color of a pair of pairs (i < j): 1 if both cross edges
    a_i b_j and a_j b_i are present, 2 if only a_i b_j, 3 if only a_j b_i,
    4 if neither."""
    if not i < j:
        raise ValueError("requires i < j")
    ij = (i, j) in h.edges
    ji = (j, i) in h.edges
    if ij and ji:
        return 1
    if ij:
        return 2
    if ji:
        return 3
    return 4


@dataclass(frozen=True)
class HomogeneousSubset:
    pairs: tuple[int, ...]
    family: Family
    reversed_order: bool


def find_homogeneous_subset(h: OrderedBipartiteGraph, n: int) -> HomogeneousSubset | None:
    """A size-n subset of pairs inducing one of the six patterns, or None
    when no such subset exists (the search is exhaustive).

    Candidate subsets are screened with the pair-color construction first:
    an inducible subset must be uniformly matched/unmatched with colors all
    1, all 4, or within {2, 3}.  ``reversed_order`` reports whether the
    pattern appears under the reversed pair order, which happens exactly in
    the color-3 cases.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return HomogeneousSubset((), Family.EMPTY, False)
    if n > h.q:
        return None
    matched = [(i, i) in h.edges for i in range(h.q)]
    for subset in combinations(range(h.q), n):
        if n >= 2:
            if len({matched[p] for p in subset}) != 1:
                continue
            colors = {pair_color(h, i, j) for i, j in combinations(subset, 2)}
            if not (colors <= {1} or colors <= {4} or colors <= {2, 3}):
                continue
        induced = h.induced(subset)
        exact = [f for f in FAMILY_ORDER if matches_pattern_exactly(induced, f)]
        if exact:
            return HomogeneousSubset(subset, exact[0], False)
        rev = induced.reversed_pairs()
        exact = [f for f in FAMILY_ORDER if matches_pattern_exactly(rev, f)]
        if exact:
            return HomogeneousSubset(subset, exact[0], True)
        # scrambled pair orders can still classify (chain under some other
        # permutation); the subset is homogeneous all the same
        tags = classify_si(induced)
        if tags:
            return HomogeneousSubset(subset, tags[0], False)
    return None


def ramsey_upper_bound(sizes: Sequence[int]) -> int:
    """Upper bound on the multicolor Ramsey number for the given clique
    targets: binom(n1 + n2 - 1, n1 - 1) for two colors, one color is the
    target itself, and more colors reduce by collapsing the last two."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("at least one clique target required")
    if any(s < 1 for s in sizes):
        raise ValueError("clique targets must be >= 1")
    if len(sizes) == 1:
        return sizes[0]
    while len(sizes) > 2:
        last = ramsey_upper_bound(sizes[-2:])
        sizes = sizes[:-2] + [last]
    n1, n2 = sizes
    return comb(n1 + n2 - 1, n1 - 1)
