import itertools
import random

import pytest

from fbranch.atlas import connected_graph_classes, tree_classes
from fbranch.cutfn import ALL_FAMILIES, PRIMAL, CutEvaluator, FamilySelector
from fbranch.decomp import (
    BranchDecomposition,
    decomposition_to_json_dict,
    decomposition_to_text,
    decomposition_width,
    edge_cut,
    enumerate_decompositions,
    exact_branchwidth_dp,
    exact_branchwidth_enum,
    find_balanced_edge,
    greedy_branchwidth,
    is_balanced_edge,
    join_components,
    parse_decomposition,
    restrict_tree,
    validate_decomposition,
)
from fbranch.errors import DecompositionError, SizeLimitError
from fbranch.families import Family
from fbranch.graph import Graph, exact_treewidth, induced_subgraph

MATCH = FamilySelector.of(Family.MATCH)
CHAIN = FamilySelector.of(Family.CHAIN)
ANTIMATCH = FamilySelector.of(Family.ANTIMATCH)


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def caterpillar(n):
    """Spine nodes n..2n-3 in order, leaves 0..n-1 attached along it."""
    if n == 2:
        return BranchDecomposition(2, [(0, 1)], {0: 0, 1: 1})
    if n == 3:
        return BranchDecomposition(4, [(0, 3), (1, 3), (2, 3)], {i: i for i in range(3)})
    nodes = 2 * n - 2
    edges = [(0, n), (1, n), (n - 1, nodes - 1), (n - 2, nodes - 1)]
    for i in range(2, n - 2):
        edges.append((i, n + i - 1))
    for s in range(n, nodes - 1):
        edges.append((s, s + 1))
    return BranchDecomposition(nodes, edges, {i: i for i in range(n)})


def test_validate_examples():
    k2 = Graph(2, [(0, 1)])
    validate_decomposition(BranchDecomposition(2, [(0, 1)], {0: 0, 1: 1}), k2)

    deg4 = BranchDecomposition(5, [(0, 4), (1, 4), (2, 4), (3, 4)], {i: i for i in range(4)})
    with pytest.raises(DecompositionError):
        validate_decomposition(deg4, Graph(4))

    missing = BranchDecomposition(2, [(0, 1)], {0: 0, 1: 0})
    with pytest.raises(DecompositionError):
        validate_decomposition(missing, k2)

    cyclic = BranchDecomposition(3, [(0, 1), (1, 2), (0, 2)], {0: 0, 1: 1, 2: 2})
    with pytest.raises(DecompositionError):
        validate_decomposition(cyclic, Graph(3))


def test_caterpillars_validate():
    for n in range(2, 8):
        validate_decomposition(caterpillar(n), Graph(n))


def test_edge_cut():
    bd = caterpillar(6)
    assert edge_cut(bd, (0, 6)) == frozenset({0})
    # middle spine edge separates the first three leaves
    assert edge_cut(bd, (7, 8)) == frozenset({0, 1, 2})
    k2 = BranchDecomposition(2, [(0, 1)], {0: 0, 1: 1})
    assert edge_cut(k2, (0, 1)) == frozenset({0})
    with pytest.raises(DecompositionError):
        edge_cut(bd, (0, 9))


def test_decomposition_width_examples():
    one = BranchDecomposition(1, [], {0: 0})
    assert decomposition_width(one, Graph(1), MATCH).width == 0

    g = complete_bipartite(3, 3)
    rep = decomposition_width(caterpillar(6), g, FamilySelector.of(Family.COMPLETE))
    assert rep.width == 3

    rep = decomposition_width(caterpillar(6), cycle(6), MATCH)
    assert rep.width == 2
    assert rep.per_edge[rep.argmax_edge][0] == 2


def test_enumerate_counts():
    assert len(list(enumerate_decompositions(3))) == 1
    assert len(list(enumerate_decompositions(4))) == 3
    assert len(list(enumerate_decompositions(6))) == 105  # (2*6-5)!!

    def double_factorial(k):
        out = 1
        while k > 1:
            out *= k
            k -= 2
        return out

    for n in range(3, 8):
        assert len(list(enumerate_decompositions(n))) == double_factorial(2 * n - 5)


def test_enumerate_unique_and_valid():
    g = Graph(6)
    seen = set()
    for bd in enumerate_decompositions(6):
        validate_decomposition(bd, g)
        key = frozenset(bd.edges)
        assert key not in seen
        seen.add(key)
    with pytest.raises(SizeLimitError):
        list(enumerate_decompositions(10))


def test_exact_branchwidth_enum_examples():
    w, bd = exact_branchwidth_enum(path(4), MATCH)
    assert w == 1
    validate_decomposition(bd, path(4))
    assert exact_branchwidth_enum(cycle(6), MATCH)[0] == 2
    assert exact_branchwidth_enum(complete_bipartite(3, 3), MATCH)[0] == 1


def test_forests_have_width_one():
    primal_subsets = [MATCH, CHAIN, ANTIMATCH, PRIMAL,
                      FamilySelector.of(Family.MATCH, Family.CHAIN)]
    for g in [path(4), path(5), Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])]:
        for sel in primal_subsets:
            w, _ = exact_branchwidth_dp(g, sel)
            assert w == 1, (g, sel.name())


def test_dp_equals_enum_all_connected_n_le_5():
    selectors = [MATCH, CHAIN, ANTIMATCH, PRIMAL, ALL_FAMILIES]
    for n in range(1, 6):
        for g in connected_graph_classes(n):
            ev = CutEvaluator(g)
            for sel in selectors:
                w_enum, bd_e = exact_branchwidth_enum(g, sel, evaluator=ev)
                w_dp, bd_d = exact_branchwidth_dp(g, sel, evaluator=ev)
                assert w_enum == w_dp, (g, sel.name())
                validate_decomposition(bd_d, g)
                assert decomposition_width(bd_d, g, sel, evaluator=ev).width == w_dp
                assert decomposition_width(bd_e, g, sel, evaluator=ev).width == w_enum


def test_dp_equals_enum_with_ntc():
    ntc = FamilySelector.parse("ntc")
    for g in connected_graph_classes(4):
        assert exact_branchwidth_dp(g, ntc)[0] == exact_branchwidth_enum(g, ntc)[0]


def test_dp_routes_disconnected_through_components():
    rng = random.Random(3)
    for _ in range(20):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
        g1 = Graph(n1, [e for e in itertools.combinations(range(n1), 2) if rng.random() < 0.6])
        g2 = Graph(n2, [e for e in itertools.combinations(range(n2), 2) if rng.random() < 0.6])
        g = Graph(n1 + n2, list(g1.edges()) + [(u + n1, v + n1) for u, v in g2.edges()])
        for sel in (MATCH, CHAIN, PRIMAL, ANTIMATCH):
            w_dp, bd = exact_branchwidth_dp(g, sel)
            w_enum, _ = exact_branchwidth_enum(g, sel)
            assert w_dp == w_enum, (g, sel.name())
            validate_decomposition(bd, g)
            assert decomposition_width(bd, g, sel).width == w_dp


def test_component_law_match_chain_exact_max():
    # two disjoint triangles: widths equal the single-triangle width
    tri2 = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    for sel in (MATCH, CHAIN, FamilySelector.of(Family.MATCH, Family.CHAIN)):
        assert exact_branchwidth_dp(tri2, sel)[0] == exact_branchwidth_dp(tri, sel)[0]


def test_component_law_antimatch_degenerate():
    # the one-pair anti-matching pattern crosses components: two K2s have
    # component widths 0 but any cut of the union induces it
    two_k2 = Graph(4, [(0, 1), (2, 3)])
    assert exact_branchwidth_dp(Graph(2, [(0, 1)]), ANTIMATCH)[0] == 0
    assert exact_branchwidth_dp(two_k2, ANTIMATCH)[0] == 1
    assert exact_branchwidth_enum(two_k2, ANTIMATCH)[0] == 1


def test_greedy_upper_bounds_exact():
    rng = random.Random(5)
    for _ in range(15):
        n = rng.randint(2, 6)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        for sel in (MATCH, PRIMAL):
            w_greedy, bd = greedy_branchwidth(g, sel)
            validate_decomposition(bd, g)
            assert w_greedy >= exact_branchwidth_dp(g, sel)[0]
    assert greedy_branchwidth(Graph(2, [(0, 1)]), MATCH)[0] == 1
    w_forest, _ = greedy_branchwidth(path(6), MATCH)
    assert w_forest >= 1


def test_treewidth_bound_small():
    for n in range(2, 6):
        for g in connected_graph_classes(n):
            tw = exact_treewidth(g)
            for sel in (MATCH, CHAIN, ANTIMATCH, PRIMAL):
                assert exact_branchwidth_dp(g, sel)[0] <= tw + 1


def test_induced_subgraph_monotone():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(3, 6)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        whole = exact_branchwidth_dp(g, ALL_FAMILIES)[0]
        k = rng.randint(1, n)
        sub, _ = induced_subgraph(g, rng.sample(range(n), k))
        assert exact_branchwidth_dp(sub, ALL_FAMILIES)[0] <= whole


def test_restrict_tree():
    adj = {0: {1}, 1: {0, 2}, 2: {1}}
    r, paths = restrict_tree(adj, {0, 2})
    assert r == {0: {2}, 2: {0}}
    assert paths[(0, 2)] == (0, 1, 2)

    r, paths = restrict_tree(adj, {0, 1, 2})
    assert r == adj and all(len(p) == 2 for p in paths.values())

    star = {0: {1, 2, 3}, 1: {0}, 2: {0}, 3: {0}}
    r, _ = restrict_tree(star, {1, 2, 3})
    assert r == star  # center kept: degree 3

    with pytest.raises(ValueError):
        restrict_tree(adj, set())


def test_restrict_tree_prunes_outside():
    # path 0-1-2-3-4, keep {1,3}: ends pruned, middle contracted
    adj = {i: set() for i in range(5)}
    for i in range(4):
        adj[i].add(i + 1)
        adj[i + 1].add(i)
    r, paths = restrict_tree(adj, {1, 3})
    assert r == {1: {3}, 3: {1}}
    assert paths[(1, 3)] == (1, 2, 3)


def test_find_balanced_edge_examples():
    two = {0: {1}, 1: {0}}
    assert find_balanced_edge(two, {0: 1, 1: 1}) == (0, 1)

    bd = caterpillar(4)
    adj = bd.adjacency
    w = {v: (1 if v in bd.leaf_map else 0) for v in range(bd.num_nodes)}
    e = find_balanced_edge(adj, w)
    assert is_balanced_edge(adj, w, e)


def test_find_balanced_edge_leaf_markings_exhaustive():
    rng = random.Random(11)
    for n in range(2, 9):
        for tree in tree_classes(n, max_degree=3):
            adj = {v: set(tree.adj[v]) for v in range(n)}
            leaves = [v for v in range(n) if tree.degree(v) <= 1]
            if len(leaves) < 2:
                continue
            for _ in range(5):
                m = rng.randint(2, len(leaves))
                marked = set(rng.sample(leaves, m))
                w = {v: (1 if v in marked else 0) for v in range(n)}
                e = find_balanced_edge(adj, w)
                assert is_balanced_edge(adj, w, e), (tree, marked)


def test_join_components():
    k2a = BranchDecomposition(2, [(0, 1)], {0: 0, 1: 1})
    k2b = BranchDecomposition(2, [(0, 1)], {0: 2, 1: 3})
    joined = join_components(k2a, k2b)
    g = Graph(4, [(0, 1), (2, 3)])
    validate_decomposition(joined, g)
    rep = decomposition_width(joined, g, MATCH)
    assert rep.width == 1

    # bridge cut is the whole-component bipartition: value 0 for match/chain
    for sel in (MATCH, CHAIN, FamilySelector.of(Family.MATCH, Family.CHAIN)):
        rep = decomposition_width(joined, g, sel)
        bridge_values = [v for e, (v, _) in rep.per_edge.items()
                         if edge_cut(joined, e) in ({0, 1}, {2, 3})]
        assert bridge_values and all(v == 0 for v in bridge_values)

    single = BranchDecomposition(1, [], {0: 4})
    bigger = join_components(joined, single)
    validate_decomposition(bigger, Graph(5, [(0, 1), (2, 3)]))

    with pytest.raises(ValueError):
        join_components(k2a, BranchDecomposition(2, [(0, 1)], {0: 1, 1: 2}))


def test_join_width_is_max_of_parts_for_match_chain():
    rng = random.Random(13)
    for _ in range(10):
        n1, n2 = rng.randint(2, 4), rng.randint(2, 4)
        g1 = Graph(n1, [e for e in itertools.combinations(range(n1), 2) if rng.random() < 0.7])
        g2 = Graph(n2, [e for e in itertools.combinations(range(n2), 2) if rng.random() < 0.7])
        g = Graph(n1 + n2, list(g1.edges()) + [(u + n1, v + n1) for u, v in g2.edges()])
        sel = FamilySelector.of(Family.MATCH, Family.CHAIN)
        w1, bd1 = exact_branchwidth_dp(g1, sel)
        w2, bd2 = exact_branchwidth_dp(g2, sel)
        joined = join_components(bd1, _shift_leaves(bd2, n1))
        assert decomposition_width(joined, g, sel).width == max(w1, w2)


def _shift_leaves(bd, offset):
    return BranchDecomposition(bd.num_nodes, bd.edges,
                               {leaf: v + offset for leaf, v in bd.leaf_map.items()})


def test_text_roundtrip():
    _, bd = exact_branchwidth_dp(cycle(5), MATCH)
    text = decomposition_to_text(bd)
    back = parse_decomposition(text)
    assert back.edges == bd.edges and back.leaf_map == bd.leaf_map
    d = decomposition_to_json_dict(bd)
    assert d["nodes"] == bd.num_nodes


def test_dp_equals_enum_remaining_primal_pairs():
    pairs = [FamilySelector.of(Family.MATCH, Family.CHAIN),
             FamilySelector.of(Family.MATCH, Family.ANTIMATCH),
             FamilySelector.of(Family.CHAIN, Family.ANTIMATCH)]
    for n in range(1, 6):
        for g in connected_graph_classes(n):
            ev = CutEvaluator(g)
            for sel in pairs:
                assert (exact_branchwidth_dp(g, sel, evaluator=ev)[0]
                        == exact_branchwidth_enum(g, sel, evaluator=ev)[0])


def test_width_is_isomorphism_invariant():
    rng = random.Random(21)
    for _ in range(10):
        n = rng.randint(2, 6)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = Graph(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        h = Graph(n, [(perm[u], perm[v]) for u, v in edges])
        for sel in (MATCH, PRIMAL, ALL_FAMILIES):
            assert exact_branchwidth_dp(g, sel)[0] == exact_branchwidth_dp(h, sel)[0]


def test_hjoin_width_inequality():
    # complete graphs are joins of a single edge across every cut (both
    # sides collapse to one class each), so their primal width is at most 2
    k5 = Graph(5, list(itertools.combinations(range(5), 2)))
    assert exact_branchwidth_dp(k5, PRIMAL)[0] <= 2
    # complete bipartite graphs are joins of two disjoint edges: classes
    # (S & A, S & B) against ((V-S) & A, (V-S) & B) across any cut
    k33 = complete_bipartite(3, 3)
    assert exact_branchwidth_dp(k33, PRIMAL)[0] <= 4


def test_balanced_cut_corollaries_by_enumeration():
    from fbranch.cutfn import empty_value, complete_value
    from fbranch.graph import cut_graph as make_cut

    # a 3+3 bipartition inducing the edgeless pattern: two triangles; every
    # decomposition must have an edge whose cut shows a non-adjacent pair
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    for bd in enumerate_decompositions(6):
        assert any(empty_value(make_cut(two_triangles, edge_cut(bd, e)))[0] >= 1
                   for e in bd.edges)

    # a 3+3 bipartition inducing the complete pattern: every decomposition
    # must have an edge whose cut shows a crossing edge
    k33 = complete_bipartite(3, 3)
    for bd in enumerate_decompositions(6):
        assert any(complete_value(make_cut(k33, edge_cut(bd, e)))[0] >= 1
                   for e in bd.edges)


def test_width_report_argmax_witness_validates():
    from fbranch.cutfn import validate_witness
    from fbranch.graph import cut_graph as make_cut
    g = cycle(6)
    rep = decomposition_width(caterpillar(6), g, PRIMAL)
    value, witness = rep.per_edge[rep.argmax_edge]
    assert value == rep.width
    assert validate_witness(make_cut(g, edge_cut(caterpillar(6), rep.argmax_edge)), witness)
