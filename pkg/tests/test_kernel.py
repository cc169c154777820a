import itertools
import random

import pytest

from fbranch.cutfn import FamilySelector
from fbranch.decomp import exact_branchwidth_dp
from fbranch.families import Family
from fbranch.graph import Graph, bridges, connected_components
from fbranch.kernel import (
    ContractionStep,
    UnimportantPath,
    contract_path_edge,
    feedback_edge_set,
    find_unimportant_path,
    kernel_vertex_bound,
    kernelize_fes,
    reduce_bridges_isolated,
)

MATCH = FamilySelector.of(Family.MATCH)

PRIMAL_UNIONS = [FamilySelector(families=frozenset(fams))
                 for r in (1, 2, 3)
                 for fams in itertools.combinations(
                     (Family.MATCH, Family.CHAIN, Family.ANTIMATCH), r)]


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def test_feedback_edge_set_examples():
    assert feedback_edge_set(path(6)) == []
    assert len(feedback_edge_set(cycle(5))) == 1
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert len(feedback_edge_set(two_triangles)) == 2


def test_feedback_edge_set_minimum():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        g = Graph(n, edges)
        fes = feedback_edge_set(g)
        c = len(connected_components(g))
        assert len(fes) == g.num_edges() - (g.n - c)
        rest = Graph(n, [e for e in g.edges() if e not in set(fes)])
        assert len(feedback_edge_set(rest)) == 0  # acyclic remainder


def test_reduce_bridges_isolated_examples():
    out, _ = reduce_bridges_isolated(path(5))
    assert out.n == 0

    c4_pendant = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    out, step = reduce_bridges_isolated(c4_pendant)
    assert out == cycle(4)
    assert step.removed_bridges == ((0, 4),) and step.removed_vertices == (4,)

    out, _ = reduce_bridges_isolated(cycle(6))
    assert out == cycle(6)


def test_reduce_leaves_bridgeless_without_isolated():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 10)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.3])
        out, _ = reduce_bridges_isolated(g)
        assert bridges(out) == []
        assert all(out.degree(v) > 0 for v in range(out.n))


def test_find_unimportant_path():
    p = find_unimportant_path(cycle(12), 8)
    assert p is not None and p.vertices == tuple(range(9))
    p.validate(cycle(12))

    k4 = Graph(4, list(itertools.combinations(range(4), 2)))
    assert find_unimportant_path(k4, 1) is None

    # theta graph: hubs 0 and 1, one long subdivided arc
    theta = Graph(9, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (0, 7), (7, 8), (8, 1)])
    p = find_unimportant_path(theta, 3)
    assert p is not None
    assert set(p.vertices) <= {2, 3, 4, 5, 6, 7, 8}
    p.validate(theta)


def test_contract_path_edge():
    c12 = cycle(12)
    p = find_unimportant_path(c12, 8)
    out, step = contract_path_edge(c12, p)
    assert out.n == 11
    # still a single cycle
    assert all(out.degree(v) == 2 for v in range(out.n))
    assert len(connected_components(out)) == 1

    with pytest.raises(ValueError):
        contract_path_edge(c12, UnimportantPath(tuple(range(5))))


def test_contraction_preserves_interior_degrees():
    c12 = cycle(12)
    p = find_unimportant_path(c12, 8)
    out, _ = contract_path_edge(c12, p)
    # all remaining vertices keep degree two on a cycle
    assert all(out.degree(v) == 2 for v in range(out.n))


def test_kernelize_c12():
    trace = kernelize_fes(cycle(12))
    assert trace.k == 1
    assert trace.final_graph.n == 10  # 12 > 10 -> contract twice, stop at 10
    assert all(trace.final_graph.degree(v) == 2 for v in range(10))
    contractions = [s for s in trace.steps if isinstance(s, ContractionStep)]
    assert len(contractions) == 2


def test_kernelize_c9_unchanged():
    trace = kernelize_fes(cycle(9))
    assert trace.k == 1 and trace.final_graph.n == 9
    assert not [s for s in trace.steps if isinstance(s, ContractionStep)]


def test_kernelize_forest_shortcircuit():
    trace = kernelize_fes(path(7))
    assert trace.forest_shortcircuit and trace.forest_width == 1
    trace = kernelize_fes(Graph(4))
    assert trace.forest_shortcircuit and trace.forest_width == 0


def test_kernel_trace_replay():
    rng = random.Random(7)
    for _ in range(20):
        cyc_len = rng.randint(9, 12)
        g = _cycle_with_pendants(rng, cyc_len)
        trace = kernelize_fes(g)
        if trace.forest_shortcircuit:
            continue
        assert trace.replay() == trace.final_graph
        assert trace.final_graph.n <= max(kernel_vertex_bound(trace.k), cyc_len)


def _cycle_with_pendants(rng, cyc_len, extra_max=4):
    edges = [(i, (i + 1) % cyc_len) for i in range(cyc_len)]
    n = cyc_len
    for _ in range(rng.randint(0, extra_max)):
        anchor = rng.randrange(n)
        edges.append((anchor, n))
        n += 1
    return Graph(n, edges)


def test_kernel_bound_and_edge_count():
    rng = random.Random(11)
    for _ in range(25):
        g = _cycle_with_pendants(rng, rng.randint(9, 12))
        trace = kernelize_fes(g)
        k = trace.k
        assert k == 1
        final = trace.final_graph
        assert final.n <= kernel_vertex_bound(k)
        assert final.num_edges() <= (kernel_vertex_bound(k) - 1) + k


def rule_one_expected_width(g, w_out, sel):
    """Exact width of the input in terms of the cleaned graph's width.

    Bridge and isolated-vertex removal can only lose width-1 cuts: a
    crossing edge (when a matching or chain family is selected and the
    input has any edge) or a non-adjacent cross pair (when the
    anti-matching family is selected and the input is not complete).
    """
    floor = 0
    if sel.families & {Family.MATCH, Family.CHAIN} and g.num_edges():
        floor = 1
    if (Family.ANTIMATCH in sel.families and g.n >= 2
            and g.num_edges() < g.n * (g.n - 1) // 2):
        floor = 1
    return max(w_out, floor)


def test_rule_one_safety_small():
    rng = random.Random(13)
    for _ in range(12):
        n = rng.randint(2, 8)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.35])
        out, _ = reduce_bridges_isolated(g)
        for sel in PRIMAL_UNIONS:
            w_in = exact_branchwidth_dp(g, sel)[0]
            w_out = exact_branchwidth_dp(out, sel)[0] if out.n else 0
            assert w_in == rule_one_expected_width(g, w_out, sel), (g, sel.name())


def test_rule_two_safety_cycles():
    """One contraction preserves every primal-union width on the graphs in
    scope at this size (cycles of length 9 to 12)."""
    for m in (9, 10, 11, 12):
        g = cycle(m)
        p = find_unimportant_path(g, 8)
        out, _ = contract_path_edge(g, p)
        for sel in PRIMAL_UNIONS:
            assert exact_branchwidth_dp(g, sel)[0] == exact_branchwidth_dp(out, sel)[0], \
                (m, sel.name())


def test_bridgeless_with_induced_c6_has_match_width_2():
    c6 = cycle(6)
    assert exact_branchwidth_dp(c6, MATCH)[0] == 2
    # small bridgeless supergraphs keeping an induced six-cycle
    g7 = Graph(7, list(c6.edges()) + [(0, 6), (1, 6)])
    assert exact_branchwidth_dp(g7, MATCH)[0] >= 2
