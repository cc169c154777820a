"""Undirected simple graphs with 0-based vertex indices.

Graphs are immutable after construction, so every function here is pure and
safe to call concurrently.  Vertex subsets travel through the public API as
frozensets; internally most algorithms use Python ints as bitmasks, which
covers both the small fixed-width case and arbitrarily large vertex counts.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import (
    LoopEdgeError,
    MalformedLineError,
    SizeLimitError,
    VertexRangeError,
)


class Graph:
    """Simple undirected graph: vertex count plus symmetric adjacency sets."""

    __slots__ = ("n", "adj", "names", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 names: tuple[str, ...] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise LoopEdgeError(f"loop edge at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)
        self.names = names
        self._edges = tuple(sorted((u, v) for u in range(n) for v in adj[u] if u < v))

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def num_edges(self) -> int:
        return len(self._edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def key(self) -> tuple:
        """Hashable structural identity (used as a cache key)."""
        return (self.n, self._edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: first line ``n m``, then m lines ``u v``.

    Multi-edges are silently deduplicated; loops are rejected.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise MalformedLineError("empty document")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedLineError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise MalformedLineError(f"header must be two integers, got {lines[0]!r}")
    if n < 0 or m < 0:
        raise MalformedLineError("header counts must be nonnegative")
    if len(lines) - 1 != m:
        raise MalformedLineError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"edge line must be two integers, got {ln!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise LoopEdgeError(f"loop edge at vertex {u}")
        edges.append((u, v))
    return Graph(n, edges)


def graph_to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``s``; returns it with the new->old index map."""
    keep = sorted(set(s))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return Graph(len(keep), edges), tuple(keep)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, sorted by smallest member."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = {start}
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bridges(g: Graph) -> list[tuple[int, int]]:
    """Edges whose removal increases the component count, in sorted order."""
    disc = [-1] * g.n
    low = [0] * g.n
    out: list[tuple[int, int]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # iterative DFS; (vertex, parent, neighbor iterator)
        stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(sorted(g.adj[root])))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
                # w == parent: the unique tree edge back up, never a back edge
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        out.append((min(pv, v), max(pv, v)))
    return sorted(out)


class BipartiteCutGraph:
    """Crossing edges of a cut: only edges with one endpoint per side remain."""

    __slots__ = ("x_vertices", "y_vertices", "edges", "x_adj", "y_adj")

    def __init__(self, x_vertices: Iterable[int], y_vertices: Iterable[int],
                 edges: Iterable[tuple[int, int]]):
        self.x_vertices = tuple(sorted(x_vertices))
        self.y_vertices = tuple(sorted(y_vertices))
        self.edges = frozenset(edges)
        x_adj: dict[int, set[int]] = {x: set() for x in self.x_vertices}
        y_adj: dict[int, set[int]] = {y: set() for y in self.y_vertices}
        for x, y in self.edges:
            x_adj[x].add(y)
            y_adj[y].add(x)
        self.x_adj = {x: frozenset(s) for x, s in x_adj.items()}
        self.y_adj = {y: frozenset(s) for y, s in y_adj.items()}

    def unordered_pairs(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def has_edge(self, x: int, y: int) -> bool:
        return y in self.x_adj[x]

    def complement(self) -> "BipartiteCutGraph":
        """Bipartite complement: crossing pairs become edges iff absent here."""
        comp = [(x, y) for x in self.x_vertices for y in self.y_vertices
                if y not in self.x_adj[x]]
        return BipartiteCutGraph(self.x_vertices, self.y_vertices, comp)

    def __repr__(self) -> str:
        return (f"BipartiteCutGraph(|X|={len(self.x_vertices)}, "
                f"|Y|={len(self.y_vertices)}, m={len(self.edges)})")


def cut_graph(g: Graph, side_x: Iterable[int]) -> BipartiteCutGraph:
    """Bipartite graph of edges crossing the cut (X, V - X)."""
    xs = set(side_x)
    ys = [v for v in range(g.n) if v not in xs]
    edges = [(u, v) for u in sorted(xs) for v in g.adj[u] if v not in xs]
    return BipartiteCutGraph(sorted(xs), ys, edges)


def distance_neighborhood(g: Graph, s: Iterable[int], radius: int,
                          closed: bool = True) -> frozenset[int]:
    """Vertices at distance <= radius from ``s`` (closed), or the same minus
    ``s`` itself (open)."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    seed = set(s)
    reached = set(seed)
    frontier = set(seed)
    for _ in range(radius):
        nxt = set()
        for v in frontier:
            nxt.update(g.adj[v])
        nxt -= reached
        if not nxt:
            break
        reached |= nxt
        frontier = nxt
    return frozenset(reached if closed else reached - seed)


def exact_treewidth(g: Graph, limit: int = 15) -> int:
    """Exact treewidth via the elimination-ordering dynamic program over
    vertex subsets.

    ``tw[S]`` is the best width achievable when the vertices of ``S`` have
    already been eliminated; eliminating ``v`` next costs the number of
    vertices outside ``S + v`` reachable from ``v`` through ``S + v``.
    """
    n = g.n
    if n > limit:
        raise SizeLimitError(f"exact treewidth limited to n <= {limit}, got {n}")
    if n == 0:
        return -1
    adj_masks = [0] * n
    for u in range(n):
        for v in g.adj[u]:
            adj_masks[u] |= 1 << v

    def elim_cost(s_mask: int, v: int) -> int:
        # vertices outside s+v reachable from v via paths inside s+v
        inside = s_mask | (1 << v)
        seen = 1 << v
        stack = [v]
        reach = 0
        while stack:
            u = stack.pop()
            for w_mask in _iter_bits(adj_masks[u] & ~seen):
                w = w_mask.bit_length() - 1
                seen |= w_mask
                if (1 << w) & inside:
                    stack.append(w)
                else:
                    reach |= w_mask
        return reach.bit_count()

    full = (1 << n) - 1
    tw = [0] * (full + 1)
    for s in range(1, full + 1):
        best = n
        rest = s
        while rest:
            v_bit = rest & -rest
            rest ^= v_bit
            v = v_bit.bit_length() - 1
            prev = s ^ v_bit
            cand = max(tw[prev], elim_cost(prev, v))
            if cand < best:
                best = cand
        tw[s] = best
    return tw[full]


def _iter_bits(mask: int):
    while mask:
        bit = mask & -mask
        yield bit
        mask ^= bit


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return frozenset(out)
