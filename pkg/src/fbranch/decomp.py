"""Branch decompositions: structure, width evaluation, solvers, and tree
utilities.

A branch decomposition of a graph is a subcubic tree whose leaves are
mapped bijectively onto the graph's vertices; removing a tree edge splits
the leaves, hence the vertices, into the cut evaluated by the cut function.
The exact solvers are a full enumerator over leaf-labeled binary shapes and
a subset-split dynamic program; they agree by construction on any symmetric
cut function and cross-check each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .cutfn import CutEvaluator, FamilySelector, PatternWitness
from .errors import DecompositionError, MalformedLineError, SizeLimitError
from .graph import Graph, connected_components, induced_subgraph, mask_of


class BranchDecomposition:
    """Subcubic tree plus a bijection from its leaves to graph vertices.

    A one-vertex graph is decomposed by a single (leaf) node; a two-vertex
    graph by a single edge.
    """

    __slots__ = ("num_nodes", "edges", "leaf_map", "adjacency")

    def __init__(self, num_nodes: int, edges: Iterable[tuple[int, int]],
                 leaf_map: dict[int, int]):
        self.num_nodes = num_nodes
        self.edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        self.leaf_map = dict(leaf_map)
        adjacency: dict[int, set[int]] = {v: set() for v in range(num_nodes)}
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        self.adjacency = adjacency

    def leaves(self) -> list[int]:
        return [v for v in range(self.num_nodes) if len(self.adjacency[v]) <= 1]

    def __repr__(self) -> str:
        return f"BranchDecomposition(nodes={self.num_nodes}, leaves={len(self.leaf_map)})"


def validate_decomposition(bd: BranchDecomposition, g: Graph) -> None:
    """Assert every structural invariant against ``g``; raises
    DecompositionError with a description of the first violation."""
    n_nodes = bd.num_nodes
    if g.n == 0:
        if n_nodes != 0 or bd.edges or bd.leaf_map:
            raise DecompositionError("empty graph takes an empty decomposition")
        return
    if n_nodes == 0:
        raise DecompositionError("no nodes")
    if len(bd.edges) != n_nodes - 1:
        raise DecompositionError(
            f"a tree on {n_nodes} nodes needs {n_nodes - 1} edges, got {len(bd.edges)}")
    # connectivity (with the right edge count this also implies acyclicity)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in bd.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n_nodes:
        raise DecompositionError("not connected, hence not a tree")
    for v in range(n_nodes):
        if len(bd.adjacency[v]) > 3:
            raise DecompositionError(f"node {v} has degree {len(bd.adjacency[v])} > 3")
    leaves = set(bd.leaves())
    mapped = set(bd.leaf_map)
    if mapped != leaves:
        raise DecompositionError("leaf map must cover exactly the leaves")
    values = sorted(bd.leaf_map.values())
    if values != list(range(g.n)):
        raise DecompositionError("leaf map must be a bijection onto the vertices")


def edge_cut(bd: BranchDecomposition, e: tuple[int, int]) -> frozenset[int]:
    """Vertices mapped into the component of ``bd - e`` that holds the leaf
    of the smallest graph vertex."""
    e = (min(e), max(e))
    if e not in bd.edges:
        raise DecompositionError(f"unknown tree edge {e}")
    u, v = e
    side: set[int] = set()
    stack = [u]
    seen = {u, v}
    while stack:
        x = stack.pop()
        if x in bd.leaf_map:
            side.add(bd.leaf_map[x])
        for w in bd.adjacency[x]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    other = frozenset(bd.leaf_map.values()) - side
    low = min(bd.leaf_map.values())
    return frozenset(side) if low in side else other


@dataclass
class WidthReport:
    width: int
    argmax_edge: tuple[int, int] | None
    per_edge: dict[tuple[int, int], tuple[int, PatternWitness]]
    selector: FamilySelector

    def to_json_dict(self) -> dict:
        return {
            "families": self.selector.name(),
            "width": self.width,
            "argmax_edge": list(self.argmax_edge) if self.argmax_edge else None,
            "edges": [
                {"edge": [u, v], "value": val, "witness": w.to_json_dict()}
                for (u, v), (val, w) in sorted(self.per_edge.items())
            ],
        }


def decomposition_width(bd: BranchDecomposition, g: Graph, sel: FamilySelector,
                        evaluator: CutEvaluator | None = None) -> WidthReport:
    """Evaluate the cut function on every tree edge; width is the maximum."""
    validate_decomposition(bd, g)
    ev = evaluator if evaluator is not None else CutEvaluator(g)
    per_edge: dict[tuple[int, int], tuple[int, PatternWitness]] = {}
    width = 0
    argmax = None
    for e in bd.edges:
        value, witness = ev.value_of(edge_cut(bd, e), sel)
        per_edge[e] = (value, witness)
        if value > width:
            width = value
            argmax = e
    if argmax is None and bd.edges:
        argmax = bd.edges[0]
    return WidthReport(width, argmax, per_edge, sel)


# ---------------------------------------------------------------------------
# enumeration of decomposition shapes


def enumerate_decompositions(n: int, limit: int = 9) -> Iterator[BranchDecomposition]:
    """All leaf-labeled unrooted binary trees on leaves 0..n-1, each exactly
    once, in a fixed insertion order; (2n-5)!! of them for n >= 3.

    Leaves are the nodes 0..n-1 (mapped identically to vertices); internal
    nodes are n..2n-3.
    """
    if n > limit:
        raise SizeLimitError(f"decomposition enumeration limited to n <= {limit}, got {n}")
    if n == 0:
        yield BranchDecomposition(0, [], {})
        return
    if n == 1:
        yield BranchDecomposition(1, [], {0: 0})
        return
    if n == 2:
        yield BranchDecomposition(2, [(0, 1)], {0: 0, 1: 1})
        return
    leaf_map = {i: i for i in range(n)}

    def insert(edges: list[tuple[int, int]], next_leaf: int) -> Iterator[list[tuple[int, int]]]:
        if next_leaf == n:
            yield edges
            return
        new_internal = n + next_leaf - 2
        for i in range(len(edges)):
            u, v = edges[i]
            grown = edges[:i] + edges[i + 1:] + [
                (u, new_internal), (v, new_internal), (next_leaf, new_internal)]
            yield from insert(grown, next_leaf + 1)

    star = [(0, n), (1, n), (2, n)]
    for edges in insert(star, 3):
        yield BranchDecomposition(2 * n - 2, edges, leaf_map)


@lru_cache(maxsize=32)
def _shape_cut_masks(n: int) -> tuple[tuple[tuple[int, ...], BranchDecomposition], ...]:
    """For each enumerated shape: the leaf-set masks of all its edge cuts.
    Shared by the enumeration solver across graphs of the same order."""
    shapes = []
    for bd in enumerate_decompositions(n, limit=max(n, 9)):
        masks = []
        for e in bd.edges:
            masks.append(mask_of(edge_cut(bd, e)))
        shapes.append((tuple(masks), bd))
    return tuple(shapes)


def exact_branchwidth_enum(g: Graph, sel: FamilySelector, limit: int = 9,
                           evaluator: CutEvaluator | None = None
                           ) -> tuple[int, BranchDecomposition]:
    """Global minimum width over all decomposition shapes; returns the first
    achiever in enumeration order."""
    n = g.n
    if n > limit:
        raise SizeLimitError(f"enumeration solver limited to n <= {limit}, got {n}")
    if n <= 2:
        bd = next(enumerate_decompositions(n))
        return (decomposition_width(bd, g, sel).width if n == 2 else 0), bd
    ev = evaluator if evaluator is not None else CutEvaluator(g)
    # shapes touch nearly every subset, so precompute the whole value table
    vals = [0] * (1 << n)
    for m in range(1 << n):
        vals[m] = ev.value_of_mask(m, sel)[0]
    best = None
    best_bd = None
    for masks, bd in _shape_cut_masks(n):
        width = 0
        for m in masks:
            v = vals[m]
            if v > width:
                width = v
            if best is not None and width >= best:
                break
        if best is None or width < best:
            best = width
            best_bd = bd
    assert best is not None and best_bd is not None
    return best, best_bd


# ---------------------------------------------------------------------------
# subset-split dynamic program


def _dp_solve(g: Graph, sel: FamilySelector, evaluator: CutEvaluator
              ) -> tuple[int, BranchDecomposition]:
    """Exact solver on the whole vertex set: best(S) is the minimum over
    unordered splits {S1, S2} of max(f(S1), f(S2), best(S1), best(S2)) with
    singleton base 0; the answer joins the two subtrees of the best root
    bipartition with a single edge."""
    n = g.n
    if n == 0:
        return 0, BranchDecomposition(0, [], {})
    if n == 1:
        return 0, BranchDecomposition(1, [], {0: 0})
    full = (1 << n) - 1

    # the recursion touches every subset, so build the whole value table
    # up front; vals is symmetric (vals[m] == vals[full ^ m])
    value_of_mask = evaluator.value_of_mask
    vals = [0] * (full + 1)
    for m in range(full + 1):
        vals[m] = value_of_mask(m, sel)[0]

    # combo[m] = max(best[m], vals[m]): the worst cut in or above a rooted
    # subtree with leaf set m, finalized before any superset reads it
    best = [0] * (full + 1)
    split = [0] * (full + 1)
    combo = list(vals)
    for s in range(3, full + 1):
        if s & (s - 1) == 0:
            continue  # singleton
        low = s & -s
        rest = s ^ low
        best_val = None
        best_s1 = 0
        # submasks t of rest ascending (t == rest excluded: s2 would be
        # empty); s1 = low | t keeps the splits unordered
        t = 0
        while t != rest:
            s1 = low | t
            s2 = s ^ s1
            val = combo[s1]
            v2 = combo[s2]
            if v2 > val:
                val = v2
            if best_val is None or val < best_val:
                best_val = val
                best_s1 = s1
            t = (t - rest) & rest
        assert best_val is not None
        best[s] = best_val
        split[s] = best_s1
        if best_val > vals[s]:
            combo[s] = best_val

    root_val = None
    root_a = 0
    for t in range(0, (full >> 1) + 1):
        a = (t << 1) | 1  # sides containing vertex 0, ascending
        bmask = full ^ a
        if bmask == 0:
            continue
        # vals[a] == vals[bmask], so both subtree combos cover the root cut
        val = max(combo[a], combo[bmask])
        if root_val is None or val < root_val:
            root_val = val
            root_a = a
    assert root_val is not None

    # reconstruct: leaves are vertex ids, internal ids allocated from n
    edges: list[tuple[int, int]] = []
    next_internal = n

    def build(mask: int) -> int:
        nonlocal next_internal
        if mask & (mask - 1) == 0:
            return mask.bit_length() - 1
        node = next_internal
        next_internal += 1
        s1 = split[mask]
        s2 = mask ^ s1
        edges.append((node, build(s1)))
        edges.append((node, build(s2)))
        return node

    left = build(root_a)
    right = build(full ^ root_a)
    edges.append((left, right))
    bd = BranchDecomposition(next_internal, edges, {i: i for i in range(n)})
    return root_val, bd


def _relabel(bd: BranchDecomposition, vertex_map: Sequence[int]) -> BranchDecomposition:
    """Rewrite leaf targets through ``vertex_map`` (new local -> original)."""
    return BranchDecomposition(
        bd.num_nodes, bd.edges,
        {leaf: vertex_map[v] for leaf, v in bd.leaf_map.items()})


def exact_branchwidth_dp(g: Graph, sel: FamilySelector, limit: int = 15,
                         evaluator: CutEvaluator | None = None
                         ) -> tuple[int, BranchDecomposition]:
    """Exact minimum width and a witness decomposition.

    Disconnected graphs are routed through their components and rejoined
    when the selector is a union of the matching, chain and anti-matching
    families; for those families a pattern never straddles two components
    (the degenerate one-pair anti-matching is the only cross-component
    pattern, and the rejoined decomposition stays optimal in that case
    too, since then every cut of every decomposition pays for it).  Other
    selectors run the dynamic program on the whole graph.
    """
    comps = connected_components(g)
    if len(comps) > 1 and sel.is_primal_union():
        for comp in comps:
            if len(comp) > limit:
                raise SizeLimitError(
                    f"component of size {len(comp)} exceeds solver limit {limit}")
        parts = []
        for comp in comps:
            sub, remap = induced_subgraph(g, comp)
            _, bd = exact_branchwidth_dp(sub, sel, limit)
            parts.append(_relabel(bd, remap))
        joined = parts[0]
        for nxt in parts[1:]:
            joined = join_components(joined, nxt)
        ev = evaluator if evaluator is not None else CutEvaluator(g)
        width = decomposition_width(joined, g, sel, evaluator=ev).width
        return width, joined
    if g.n > limit:
        raise SizeLimitError(f"dynamic program limited to n <= {limit}, got {g.n}")
    ev = evaluator if evaluator is not None else CutEvaluator(g)
    return _dp_solve(g, sel, ev)


# ---------------------------------------------------------------------------
# greedy upper-bound heuristic


def greedy_branchwidth(g: Graph, sel: FamilySelector
                       ) -> tuple[int, BranchDecomposition]:
    """Upper-bound heuristic: recursive balanced bipartitioning, improving
    each split by deterministic swap local search.  The returned width is
    that of a genuine decomposition, hence >= the exact optimum."""
    n = g.n
    if n == 0:
        return 0, BranchDecomposition(0, [], {})
    if n == 1:
        return 0, BranchDecomposition(1, [], {0: 0})
    ev = CutEvaluator(g)

    def split_cost(side: set[int]) -> int:
        return ev.value_of_mask(mask_of(side), sel)[0]

    def balanced_split(vertices: list[int]) -> tuple[list[int], list[int]]:
        half = len(vertices) // 2
        a = set(vertices[:half])
        b = set(vertices[half:])
        cost = split_cost(a)
        improved = True
        while improved:
            improved = False
            for u in sorted(a):
                for v in sorted(b):
                    a2 = (a - {u}) | {v}
                    c2 = split_cost(a2)
                    if c2 < cost:
                        a = a2
                        b = (b - {v}) | {u}
                        cost = c2
                        improved = True
                        break
                if improved:
                    break
        return sorted(a), sorted(b)

    edges: list[tuple[int, int]] = []
    next_internal = n

    def build(vertices: list[int]) -> int:
        nonlocal next_internal
        if len(vertices) == 1:
            return vertices[0]
        node = next_internal
        next_internal += 1
        a, b = balanced_split(vertices)
        edges.append((node, build(a)))
        edges.append((node, build(b)))
        return node

    top_a, top_b = balanced_split(list(range(n)))
    left = build(top_a)
    right = build(top_b)
    edges.append((left, right))
    bd = BranchDecomposition(next_internal, edges, {i: i for i in range(n)})
    return decomposition_width(bd, g, sel, evaluator=ev).width, bd


# ---------------------------------------------------------------------------
# tree utilities


def restrict_tree(adjacency: dict[int, set[int]], keep: Iterable[int]
                  ) -> tuple[dict[int, set[int]], dict[tuple[int, int], tuple[int, ...]]]:
    """Minimal subtree spanning ``keep`` with degree-2 nodes outside
    ``keep`` contracted away.

    Returns the restricted tree's adjacency and, for each of its edges,
    the corresponding original path (as a node tuple).
    """
    keep = set(keep)
    if not keep:
        raise ValueError("keep set must be nonempty")
    nodes = set(adjacency)
    if not keep <= nodes:
        raise ValueError("keep set must be tree nodes")
    # prune leaves not in keep until the minimal Steiner subtree remains
    adj = {v: set(ws) for v, ws in adjacency.items()}
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v not in keep and len(adj[v]) <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                changed = True
    # contract degree-2 nodes outside keep
    result: dict[int, set[int]] = {v: set() for v in adj
                                   if v in keep or len(adj[v]) != 2}
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    seen_edges = set()
    for start in sorted(result):
        for first in sorted(adj[start]):
            if (start, first) in seen_edges:
                continue
            path = [start, first]
            prev, cur = start, first
            while cur not in result:
                nxt = next(iter(adj[cur] - {prev}))
                prev, cur = cur, nxt
                path.append(cur)
            seen_edges.add((start, first))
            seen_edges.add((cur, prev))
            end = path[-1]
            result[start].add(end)
            result[end].add(start)
            key = (min(start, end), max(start, end))
            if key not in paths:
                paths[key] = tuple(path if start <= end else path[::-1])
    return result, paths


def find_balanced_edge(adjacency: dict[int, set[int]],
                       weights: dict[int, float]) -> tuple[int, int]:
    """The tree edge maximizing the lighter side's weight (ties broken by
    smallest edge).

    Whenever some edge splits the weight 1/3-to-2/3 -- guaranteed for the
    weightings this package uses, namely 0/1 markings of at least two
    leaves -- the returned edge is such a split.  With more skewed
    weightings (most of the mass on one node) no balanced edge need exist,
    and the best available split is returned instead.
    """
    total = sum(weights.get(v, 0) for v in adjacency)
    if total <= 0:
        raise ValueError("total weight must be positive")
    edges = sorted((min(u, v), max(u, v))
                   for u in adjacency for v in adjacency[u] if u < v)
    if not edges:
        raise ValueError("tree has no edges")
    for v in adjacency:
        if len(adjacency[v]) > 3:
            raise ValueError("tree must be subcubic")

    best_edge = None
    best_min = -1.0
    for u, v in edges:
        side = _side_weight(adjacency, weights, u, v)
        m = min(side, total - side)
        if m > best_min:
            best_min = m
            best_edge = (u, v)
    assert best_edge is not None
    return best_edge


def _side_weight(adjacency, weights, u, v) -> float:
    seen = {u, v}
    stack = [u]
    acc = weights.get(u, 0)
    while stack:
        x = stack.pop()
        for w in adjacency[x]:
            if w not in seen:
                seen.add(w)
                acc += weights.get(w, 0)
                stack.append(w)
    return acc


def is_balanced_edge(adjacency, weights, edge, alpha: float = 1 / 3) -> bool:
    total = sum(weights.get(v, 0) for v in adjacency)
    side = _side_weight(adjacency, weights, edge[0], edge[1])
    return alpha * total <= side <= (1 - alpha) * total


def join_components(bd1: BranchDecomposition, bd2: BranchDecomposition
                    ) -> BranchDecomposition:
    """Decomposition of the disjoint union: subdivide an edge of each part
    (or use the bare node of a one-leaf part) and bridge the two points.

    For selectors drawn from the matching and chain families the bridge cut
    crosses no edge and has value 0; a selected anti-matching family sees
    the degenerate one-pair pattern across the bridge, value 1.
    """
    verts1 = set(bd1.leaf_map.values())
    verts2 = set(bd2.leaf_map.values())
    if verts1 & verts2:
        raise ValueError("components must have disjoint vertex sets")
    if not verts1 or not verts2:
        raise ValueError("both parts must be nonempty")
    offset = bd1.num_nodes
    edges = list(bd1.edges)
    edges.extend((u + offset, v + offset) for u, v in bd2.edges)
    leaf_map = dict(bd1.leaf_map)
    leaf_map.update({node + offset: v for node, v in bd2.leaf_map.items()})
    total = bd1.num_nodes + bd2.num_nodes

    def attach_point(bd: BranchDecomposition, shift: int) -> int:
        nonlocal total, edges
        if not bd.edges:  # single-node part: the node itself is the hook
            return shift
        u, v = bd.edges[0]
        w = total
        total += 1
        edges.remove((u + shift, v + shift))
        edges.append((u + shift, w))
        edges.append((v + shift, w))
        return w

    w1 = attach_point(bd1, 0)
    w2 = attach_point(bd2, offset)
    edges.append((w1, w2))
    return BranchDecomposition(total, edges, leaf_map)


# ---------------------------------------------------------------------------
# text and JSON formats


def decomposition_to_text(bd: BranchDecomposition) -> str:
    lines = [f"tree {bd.num_nodes}"]
    lines.extend(f"t {u} {v}" for u, v in bd.edges)
    lines.extend(f"leaf {node} {vertex}" for node, vertex in sorted(bd.leaf_map.items()))
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> BranchDecomposition:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("tree"):
        raise MalformedLineError("decomposition must start with 'tree <#nodes>'")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedLineError(f"bad header {lines[0]!r}")
    try:
        num_nodes = int(head[1])
    except ValueError:
        raise MalformedLineError(f"bad node count in {lines[0]!r}")
    edges = []
    leaf_map = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "t" and len(parts) == 3:
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "leaf" and len(parts) == 3:
            leaf_map[int(parts[1])] = int(parts[2])
        else:
            raise MalformedLineError(f"bad decomposition line {ln!r}")
    for u, v in edges:
        if not (0 <= u < num_nodes and 0 <= v < num_nodes):
            raise MalformedLineError(f"tree edge ({u}, {v}) out of range")
    for node in leaf_map:
        if not (0 <= node < num_nodes):
            raise MalformedLineError(f"leaf node {node} out of range")
    return BranchDecomposition(num_nodes, edges, leaf_map)


def decomposition_to_json_dict(bd: BranchDecomposition) -> dict:
    return {
        "nodes": bd.num_nodes,
        "edges": [[u, v] for u, v in bd.edges],
        "leaves": {str(node): vertex for node, vertex in sorted(bd.leaf_map.items())},
    }
