"""Cut-function evaluation: the largest pattern of each family induced
across a cut, plus the twin-class count.

All evaluators are exact.  The per-family searches are branch-and-bound
with deterministic ascending-index extension order, so the returned witness
is reproducible.  ``generic_pattern_value`` is the independent oracle: a
plain exhaustive search over ordered partner selections that shares nothing
with the optimized routes (no complement tricks, no incumbent pruning).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import SizeLimitError
from .families import (
    FAMILY_ORDER,
    PRIMAL_FAMILIES,
    Family,
    OrderedBipartiteGraph,
    classify_si,
    pattern_has_edge,
)
from .graph import BipartiteCutGraph, Graph, cut_graph, mask_of, set_of


@dataclass(frozen=True)
class FamilySelector:
    """Which pattern families define the cut function; ``ntc`` switches to
    the twin-class count instead (mutually exclusive with families)."""

    families: frozenset[Family] = frozenset()
    ntc: bool = False

    def __post_init__(self):
        if self.ntc and self.families:
            raise ValueError("ntc mode excludes pattern families")
        if not self.ntc and not self.families:
            raise ValueError("selector needs at least one family (or ntc)")

    @staticmethod
    def of(*families: Family) -> "FamilySelector":
        return FamilySelector(families=frozenset(families))

    @staticmethod
    def parse(text: str) -> "FamilySelector":
        text = text.strip().lower()
        if text == "ntc":
            return FamilySelector(ntc=True)
        if text == "all":
            return FamilySelector(families=frozenset(FAMILY_ORDER))
        if text == "primal":
            return FamilySelector(families=PRIMAL_FAMILIES)
        fams = set()
        for token in text.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                fams.add(Family(token))
            except ValueError:
                raise ValueError(f"unknown family {token!r}")
        return FamilySelector(families=frozenset(fams))

    def is_primal_union(self) -> bool:
        return not self.ntc and self.families <= PRIMAL_FAMILIES

    def name(self) -> str:
        if self.ntc:
            return "ntc"
        return ",".join(f.value for f in sorted(self.families, key=FAMILY_ORDER.index))

    def __str__(self) -> str:
        return self.name()


PRIMAL = FamilySelector(families=PRIMAL_FAMILIES)
ALL_FAMILIES = FamilySelector(families=frozenset(FAMILY_ORDER))
NTC = FamilySelector(ntc=True)


@dataclass(frozen=True)
class PatternWitness:
    """Partner pairs (x-side vertex, y-side vertex) realizing the pattern
    across a cut, in pattern order."""

    family: Family | None
    value: int
    pairs: tuple[tuple[int, int], ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.value if self.family else None,
            "value": self.value,
            "pairs": [[x, y] for x, y in self.pairs],
        }


EMPTY_WITNESS = PatternWitness(None, 0)


def witness_graph(b: BipartiteCutGraph, witness: PatternWitness) -> OrderedBipartiteGraph:
    """The ordered bipartite graph induced by the witness pairs inside the
    cut graph (the object a classifier validates)."""
    a_side = tuple(x for x, _ in witness.pairs)
    b_side = tuple(y for _, y in witness.pairs)
    q = len(witness.pairs)
    edges = frozenset((i, j) for i in range(q) for j in range(q)
                      if b.has_edge(a_side[i], b_side[j]))
    return OrderedBipartiteGraph(q, edges, a_side, b_side)


def validate_witness(b: BipartiteCutGraph, witness: PatternWitness) -> bool:
    """Re-check a witness: its value, sides and induced pattern must agree.

    Witnesses produced through the memoizing evaluator may be oriented by
    the opposite side of the cut; every family is closed under swapping the
    sides (up to reordering the pairs), so both orientations are accepted.
    """
    if witness.value != len(witness.pairs):
        return witness.value == 0 and not witness.pairs
    if witness.value == 0:
        return True
    xs = [x for x, _ in witness.pairs]
    ys = [y for _, y in witness.pairs]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        return False
    if set(xs) <= set(b.x_vertices) and set(ys) <= set(b.y_vertices):
        oriented = b
    elif set(xs) <= set(b.y_vertices) and set(ys) <= set(b.x_vertices):
        oriented = BipartiteCutGraph(b.y_vertices, b.x_vertices,
                                     [(y, x) for x, y in b.edges])
    else:
        return False
    return witness.family in classify_si(witness_graph(oriented, witness))


def _mim_search(x_vertices, y_vertices, adjacency) -> tuple[int, list[tuple[int, int]]]:
    """Maximum induced matching among crossing edges given by ``adjacency``
    (dict x -> set of y).  Branch and bound over edges in ascending order."""
    edges = [(x, y) for x in x_vertices for y in sorted(adjacency[x])]
    k = len(edges)
    conflict = [0] * k
    for a in range(k):
        xa, ya = edges[a]
        for c in range(a + 1, k):
            xb, yb = edges[c]
            if xa == xb or ya == yb or yb in adjacency[xa] or ya in adjacency[xb]:
                conflict[a] |= 1 << c
                conflict[c] |= 1 << a
    best = 0
    best_sel: list[int] = []
    sel: list[int] = []

    def extend(idx: int, banned: int):
        nonlocal best, best_sel
        if len(sel) > best:
            best = len(sel)
            best_sel = sel.copy()
        for a in range(idx, k):
            if banned >> a & 1:
                continue
            if len(sel) + (k - a) <= best:
                return
            sel.append(a)
            extend(a + 1, banned | conflict[a] | (1 << a))
            sel.pop()

    extend(0, 0)
    return best, [edges[a] for a in best_sel]


def mim_value(b: BipartiteCutGraph) -> tuple[int, PatternWitness]:
    """Largest induced matching among crossing edges."""
    n, pairs = _mim_search(b.x_vertices, b.y_vertices, b.x_adj)
    if n == 0:
        return 0, EMPTY_WITNESS
    return n, PatternWitness(Family.MATCH, n, tuple(pairs))


def antimatch_value(b: BipartiteCutGraph) -> tuple[int, PatternWitness]:
    """Largest anti-matching pattern; equals the induced matching of the
    bipartite complement, with partner pairs carried back unchanged."""
    comp = b.complement()
    n, pairs = _mim_search(comp.x_vertices, comp.y_vertices, comp.x_adj)
    if n == 0:
        return 0, EMPTY_WITNESS
    return n, PatternWitness(Family.ANTIMATCH, n, tuple(pairs))


def _biclique_search(x_vertices, y_vertices, adjacency) -> tuple[int, list[tuple[int, int]]]:
    """Largest balanced complete pattern: max over X-subsets A of
    min(|A|, |common neighborhood of A|), branch and bound ascending."""
    xs = list(x_vertices)
    all_y = set(y_vertices)
    best = 0
    best_pairs: list[tuple[int, int]] = []
    chosen: list[int] = []

    def extend(idx: int, common: frozenset[int]):
        nonlocal best, best_pairs
        value = min(len(chosen), len(common))
        if value > best:
            best = value
            ys = sorted(common)[:value]
            best_pairs = list(zip(chosen[:value], ys))
        if len(common) <= best:
            return
        for i in range(idx, len(xs)):
            if len(chosen) + (len(xs) - i) <= best:
                return
            nxt = common & adjacency[xs[i]]
            if len(nxt) <= best:
                continue
            chosen.append(xs[i])
            extend(i + 1, nxt)
            chosen.pop()

    extend(0, frozenset(all_y))
    return best, best_pairs


def complete_value(b: BipartiteCutGraph) -> tuple[int, PatternWitness]:
    """Largest balanced biclique among crossing edges."""
    n, pairs = _biclique_search(b.x_vertices, b.y_vertices, b.x_adj)
    if n == 0:
        return 0, EMPTY_WITNESS
    return n, PatternWitness(Family.COMPLETE, n, tuple(pairs))


def empty_value(b: BipartiteCutGraph) -> tuple[int, PatternWitness]:
    """Largest balanced edgeless pattern; the balanced biclique of the
    bipartite complement."""
    comp = b.complement()
    n, pairs = _biclique_search(comp.x_vertices, comp.y_vertices, comp.x_adj)
    if n == 0:
        return 0, EMPTY_WITNESS
    return n, PatternWitness(Family.EMPTY, n, tuple(pairs))


def _chain_search(b: BipartiteCutGraph, strict: bool) -> tuple[int, list[tuple[int, int]]]:
    """Longest chain (strict: without the matching) built pair by pair in
    pattern order; candidates extend in ascending vertex order and branches
    are cut once the remaining side sizes cannot beat the incumbent."""
    xs = b.x_vertices
    ys = b.y_vertices
    has = b.has_edge
    best = 0
    best_pairs: list[tuple[int, int]] = []
    pairs: list[tuple[int, int]] = []
    used_x: set[int] = set()
    used_y: set[int] = set()

    def feasible(x: int, y: int) -> bool:
        d = len(pairs)
        if has(x, y) != (not strict):
            return False
        for t, (xt, yt) in enumerate(pairs):
            # new pair is position d; earlier positions t < d
            if has(xt, y) != pattern_has_edge(Family.CHAINSTRICT if strict else Family.CHAIN, t, d):
                return False
            if has(x, yt) != pattern_has_edge(Family.CHAINSTRICT if strict else Family.CHAIN, d, t):
                return False
        return True

    def extend():
        nonlocal best, best_pairs
        if len(pairs) > best:
            best = len(pairs)
            best_pairs = pairs.copy()
        remaining = min(len(xs) - len(used_x), len(ys) - len(used_y))
        if len(pairs) + remaining <= best:
            return
        for x in xs:
            if x in used_x:
                continue
            for y in ys:
                if y in used_y or not feasible(x, y):
                    continue
                pairs.append((x, y))
                used_x.add(x)
                used_y.add(y)
                extend()
                pairs.pop()
                used_x.remove(x)
                used_y.remove(y)

    extend()
    return best, best_pairs


def chain_value(b: BipartiteCutGraph) -> tuple[int, PatternWitness]:
    """Largest chain pattern (edges a_i b_j exactly for i <= j)."""
    n, pairs = _chain_search(b, strict=False)
    if n == 0:
        return 0, EMPTY_WITNESS
    return n, PatternWitness(Family.CHAIN, n, tuple(pairs))


def strictchain_value(b: BipartiteCutGraph) -> tuple[int, PatternWitness]:
    """Largest strict chain pattern (edges a_i b_j exactly for i < j)."""
    n, pairs = _chain_search(b, strict=True)
    if n == 0:
        return 0, EMPTY_WITNESS
    return n, PatternWitness(Family.CHAINSTRICT, n, tuple(pairs))


_EVALUATORS = {
    Family.EMPTY: empty_value,
    Family.MATCH: mim_value,
    Family.CHAIN: chain_value,
    Family.CHAINSTRICT: strictchain_value,
    Family.ANTIMATCH: antimatch_value,
    Family.COMPLETE: complete_value,
}


def family_value(b: BipartiteCutGraph, family: Family) -> tuple[int, PatternWitness]:
    return _EVALUATORS[family](b)


def family_cut_value(g: Graph, side_x: Iterable[int],
                     sel: FamilySelector) -> tuple[int, PatternWitness]:
    """Maximum pattern value over the selected families for the cut
    (X, V - X); ties broken by family declaration order."""
    if sel.ntc:
        raise ValueError("family_cut_value needs pattern families; use ntc_value")
    b = cut_graph(g, side_x)
    best = -1
    best_w = EMPTY_WITNESS
    for family in FAMILY_ORDER:
        if family not in sel.families:
            continue
        n, w = family_value(b, family)
        if n > best:
            best, best_w = n, w
    return max(best, 0), best_w


def ntc_value(g: Graph, side_x: Iterable[int]) -> int:
    """Number of classes of X under equal neighborhood outside X."""
    xs = set(side_x)
    seen = set()
    for v in xs:
        seen.add(frozenset(g.adj[v] - xs))
    return len(seen)


def symmetric_ntc_value(g: Graph, side_x: Iterable[int]) -> int:
    """Orientation-free twin-class value of the cut: the larger of the two
    sides' counts.  Every rooted orientation of a decomposition edge has
    width at most this, so decomposition widths computed from it upper-bound
    the rooted variant regardless of root placement."""
    xs = frozenset(side_x)
    ys = frozenset(range(g.n)) - xs
    return max(ntc_value(g, xs), ntc_value(g, ys))


def generic_pattern_value(b: BipartiteCutGraph, family: Family,
                          limit: int = 24) -> int:
    """Ground-truth oracle: exhaustive depth-first search over ordered
    partner selections checking the family formula on every prefix."""
    if len(b.x_vertices) + len(b.y_vertices) > limit:
        raise SizeLimitError(
            f"oracle limited to {limit} cut-graph vertices, got "
            f"{len(b.x_vertices) + len(b.y_vertices)}")
    xs = b.x_vertices
    ys = b.y_vertices
    has = b.has_edge
    best = 0
    seq: list[tuple[int, int]] = []

    def consistent(x: int, y: int) -> bool:
        d = len(seq)
        if has(x, y) != pattern_has_edge(family, d, d):
            return False
        for t, (xt, yt) in enumerate(seq):
            if has(xt, y) != pattern_has_edge(family, t, d):
                return False
            if has(x, yt) != pattern_has_edge(family, d, t):
                return False
        return True

    def extend():
        nonlocal best
        best = max(best, len(seq))
        for x in xs:
            if any(x == px for px, _ in seq):
                continue
            for y in ys:
                if any(y == py for _, py in seq):
                    continue
                if consistent(x, y):
                    seq.append((x, y))
                    extend()
                    seq.pop()

    extend()
    return best


class CutEvaluator:
    """Memoizing cut evaluator for one graph.

    Values are cached per (cut, family), so queries under different
    selectors share the per-family work; cuts are keyed by the numerically
    smaller side mask (the cut function is symmetric).
    """

    def __init__(self, g: Graph):
        self.graph = g
        self._full = (1 << g.n) - 1
        self._family_cache: dict[tuple[int, Family], tuple[int, PatternWitness]] = {}
        self._ntc_cache: dict[int, int] = {}
        self._cut_graphs: dict[int, BipartiteCutGraph] = {}

    def _canonical(self, mask: int) -> int:
        return min(mask, self._full ^ mask)

    def _cut_graph(self, mask: int) -> BipartiteCutGraph:
        b = self._cut_graphs.get(mask)
        if b is None:
            b = cut_graph(self.graph, set_of(mask))
            self._cut_graphs[mask] = b
        return b

    def family_value_of_mask(self, mask: int, family: Family) -> tuple[int, PatternWitness]:
        mask = self._canonical(mask)
        hit = self._family_cache.get((mask, family))
        if hit is None:
            hit = family_value(self._cut_graph(mask), family)
            self._family_cache[(mask, family)] = hit
        return hit

    def value_of_mask(self, mask: int, sel: FamilySelector) -> tuple[int, PatternWitness]:
        mask = self._canonical(mask)
        if sel.ntc:
            v = self._ntc_cache.get(mask)
            if v is None:
                v = max(ntc_value(self.graph, set_of(mask)),
                        ntc_value(self.graph, set_of(self._full ^ mask)))
                self._ntc_cache[mask] = v
            return v, EMPTY_WITNESS
        best = -1
        best_w = EMPTY_WITNESS
        for family in FAMILY_ORDER:
            if family not in sel.families:
                continue
            hit = self.family_value_of_mask(mask, family)
            if hit[0] > best:
                best, best_w = hit
        return max(best, 0), best_w

    def value_of(self, side_x: Iterable[int], sel: FamilySelector) -> tuple[int, PatternWitness]:
        return self.value_of_mask(mask_of(side_x), sel)
