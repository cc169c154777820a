"""Exhaustive catalogues of small graphs and trees up to isomorphism.

Classes on n vertices are produced by extending the classes on n - 1
vertices with one new vertex and deduplicating canonical forms; every graph
contains a vertex whose removal leaves a representative already catalogued
(for connected classes, a non-cut vertex), so the augmentation is complete.
Results are cached per session.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .canonical import canonical_form
from .graph import Graph


@lru_cache(maxsize=None)
def all_graph_classes(n: int) -> tuple[Graph, ...]:
    """All isomorphism classes of simple graphs on exactly n vertices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return (Graph(0),)
    if n == 1:
        return (Graph(1),)
    seen: dict[tuple, Graph] = {}
    for base in all_graph_classes(n - 1):
        base_edges = base.edges()
        for mask in range(1 << (n - 1)):
            edges = list(base_edges)
            for v in range(n - 1):
                if mask >> v & 1:
                    edges.append((v, n - 1))
            g = Graph(n, edges)
            seen.setdefault(canonical_form(g), g)
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def connected_graph_classes(n: int) -> tuple[Graph, ...]:
    """All isomorphism classes of connected graphs on exactly n vertices."""
    if n <= 1:
        return all_graph_classes(n)
    # every connected graph has a non-cut vertex, so extending connected
    # classes by a vertex with a nonempty neighborhood reaches everything
    seen: dict[tuple, Graph] = {}
    for base in connected_graph_classes(n - 1):
        base_edges = base.edges()
        for mask in range(1, 1 << (n - 1)):
            edges = list(base_edges)
            for v in range(n - 1):
                if mask >> v & 1:
                    edges.append((v, n - 1))
            g = Graph(n, edges)
            seen.setdefault(canonical_form(g), g)
    return tuple(seen[k] for k in sorted(seen))


def graph_classes_upto(n: int, connected: bool = False) -> list[Graph]:
    out: list[Graph] = []
    for k in range(1, n + 1):
        out.extend(connected_graph_classes(k) if connected else all_graph_classes(k))
    return out


@lru_cache(maxsize=None)
def tree_classes(n: int, max_degree: int | None = None) -> tuple[Graph, ...]:
    """All isomorphism classes of trees on n vertices, optionally bounded
    degree (``max_degree=3`` gives the subcubic trees)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (Graph(1),)
    seen: dict[tuple, Graph] = {}
    for base in tree_classes(n - 1, max_degree):
        for v in range(n - 1):
            if max_degree is not None and base.degree(v) >= max_degree:
                continue
            g = Graph(n, list(base.edges()) + [(v, n - 1)])
            seen.setdefault(canonical_form(g), g)
    return tuple(seen[k] for k in sorted(seen))


def brute_force_graph_classes(n: int) -> list[Graph]:
    """Independent oracle: enumerate all labeled graphs on n vertices and
    deduplicate by canonical form.  Only sensible for n <= 5 or so."""
    pairs = list(combinations(range(n), 2))
    seen: dict[tuple, Graph] = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = Graph(n, edges)
        seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]
