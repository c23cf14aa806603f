import itertools
import math
import random

import pytest

from meqlab import (
    BipartiteRep,
    ColoringInstance,
    EdgeCollisionError,
    LinkTable,
    SearchBudgetError,
    TableProtocol,
    complexity,
    conflict_pairs,
    fooling_lower_bound,
    optimal_search,
    protocol_from_coloring,
    strong_edge_color,
    table36,
    to_bipartite,
    trivial_upper_bound,
    verify_ad,
)

from conftest import random_correct_protocol


def complete_grid(a: int, b: int) -> BipartiteRep:
    return BipartiteRep(a, b, tuple(itertools.product(range(1, a + 1), range(1, b + 1))))


def collision_protocol() -> TableProtocol:
    # inputs 1 and 2 send identical symbols on both of node 1's links
    return TableProtocol(3, 6, (
        LinkTable(1, 2, (1, 1, 2, 2, 3, 3)),
        LinkTable(1, 3, (1, 1, 2, 3, 3, 1)),
        LinkTable(2, 3, (1, 2, 3, 1, 2, 3)),
    ))


def test_to_bipartite_of_table36():
    g = to_bipartite(table36())
    assert (g.U_size, g.V_size, g.M) == (3, 3, 6)
    assert g.edges[0] == (1, 1)
    assert g.edges[5] == (3, 1)


def test_to_bipartite_diagonal():
    identity = tuple(range(1, 4))
    t = TableProtocol(3, 3, (
        LinkTable(1, 2, identity),
        LinkTable(1, 3, identity),
        LinkTable(2, 3, identity),
    ))
    g = to_bipartite(t)
    assert g.edges == ((1, 1), (2, 2), (3, 3))
    assert conflict_pairs(g) == frozenset()


def test_to_bipartite_requires_all_links():
    from meqlab import star_protocol

    with pytest.raises(ValueError):
        to_bipartite(star_protocol(3, 4))


def test_collision_raises_and_breaks_the_protocol():
    broken = collision_protocol()
    with pytest.raises(EdgeCollisionError) as info:
        to_bipartite(broken)
    assert info.value.pair == (1, 2)
    verdict = verify_ad(broken)
    assert not verdict.ok
    assert verdict.counterexample[0] == (1, 2, 2)


def test_conflicts_of_complete_2x2():
    assert len(conflict_pairs(complete_grid(2, 2))) == 6


def test_conflicts_of_disjoint_edges():
    g = BipartiteRep(2, 2, ((1, 1), (2, 2)))
    assert conflict_pairs(g) == frozenset()


def test_conflicts_of_table36_graph():
    g = to_bipartite(table36())
    pairs = conflict_pairs(g)
    assert len(pairs) == 12
    everything = {(x, y) for x in range(1, 7) for y in range(x + 1, 7)}
    assert everything - pairs == {(1, 4), (2, 5), (3, 6)}
    # the protocol's own third link separates every conflicting pair
    bc = table36().link(2, 3).symbols
    for x, y in pairs:
        assert bc[x - 1] != bc[y - 1]


def test_strong_coloring_of_table36_graph():
    g = to_bipartite(table36())
    inst = strong_edge_color(g, 3)
    assert inst is not None
    assert inst.colors == (1, 2, 3, 1, 2, 3)
    assert strong_edge_color(g, 2) is None


def test_strong_coloring_of_complete_grid():
    g = complete_grid(2, 2)
    assert strong_edge_color(g, 3) is None
    inst = strong_edge_color(g, 4)
    assert inst is not None and inst.W_size == 4


def test_complete_grids_need_one_color_per_edge():
    for a, b in ((2, 2), (2, 3), (1, 4)):
        g = complete_grid(a, b)
        assert strong_edge_color(g, a * b - 1) is None
        assert strong_edge_color(g, a * b) is not None


def test_single_edge_one_color():
    inst = strong_edge_color(BipartiteRep(1, 1, ((1, 1),)), 1)
    assert inst is not None and inst.colors == (1,)


def test_invalid_coloring_rejected():
    g = to_bipartite(table36())
    with pytest.raises(ValueError):
        ColoringInstance(g, (1, 1, 3, 1, 2, 3))  # edges 1,2 conflict
    with pytest.raises(ValueError):
        ColoringInstance(g, (1, 2, 3))


def test_protocol_from_coloring_round_trip():
    t = table36()
    inst = ColoringInstance(to_bipartite(t), t.link(2, 3).symbols)
    assert protocol_from_coloring(inst) == t


def test_protocol_from_complete_grid_coloring():
    inst = strong_edge_color(complete_grid(2, 2), 4)
    p = protocol_from_coloring(inst)
    verdict = verify_ad(p)
    assert verdict.ok and verdict.vectors_checked == 64


def test_valid_instances_from_random_correct_protocols():
    rng = random.Random(31)
    for _ in range(10):
        t = random_correct_protocol(rng, 6)
        inst = ColoringInstance(to_bipartite(t), t.link(2, 3).symbols)
        assert verify_ad(protocol_from_coloring(inst)).ok


def test_optimal_search_m4():
    result = optimal_search(4)
    assert result.product == 16
    assert result.bits == pytest.approx(4.0, abs=1e-12)
    assert result.infeasible == ((2, 2, 2), (2, 2, 3))
    assert verify_ad(protocol_from_coloring(result.witness)).ok


def test_optimal_search_m6():
    result = optimal_search(6)
    assert (result.U_size, result.V_size, result.W_size) == (3, 3, 3)
    assert result.product == 27
    assert result.infeasible == ((2, 3, 3), (2, 3, 4))


def test_optimal_search_trivial_sizes():
    assert optimal_search(1).product == 1
    assert optimal_search(1).bits == 0.0
    assert optimal_search(2).product == 4


def test_optimal_search_bounds_sandwich():
    for M in range(1, 9):
        result = optimal_search(M)
        assert fooling_lower_bound(3, M) <= result.bits + 1e-12
        assert result.bits <= trivial_upper_bound(3, M) + 1e-12


def test_optimal_search_budget():
    with pytest.raises(SearchBudgetError) as info:
        optimal_search(6, graph_budget=1)
    assert len(info.value.frontier) > 0


def test_optimal_search_size_guard():
    with pytest.raises(ValueError):
        optimal_search(9)


def test_witness_protocol_matches_reported_product():
    for M in (4, 6, 7):
        result = optimal_search(M)
        assert complexity(protocol_from_coloring(result.witness)).product == result.product
        assert result.bits == pytest.approx(math.log2(result.product), abs=1e-12)
