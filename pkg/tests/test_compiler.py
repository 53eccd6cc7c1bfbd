#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from belieftree.compiler import (
    Edge,
    Heuristic,
    JunctionTree,
    TreeStatus,
    UndirectedGraph,
    build_junction_tree,
    check_junction_property,
    compile_network,
    extract_cliques,
    initialize,
    is_chordal,
    maximum_cardinality_order,
    moralize,
    stats_dataframe,
    tree_stats,
    triangulate,
)
from belieftree.engine import Case, propagate_case
from belieftree.network import NetworkSpec, NodeSpec, SyntheticParameters, generate_synthetic
from belieftree.utils import JunctionPropertyError, NetworkValidationError, UnknownNodeError

CYCLE_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3)]


def test_moralize_marries_parents():
    net = NetworkSpec(
        [
            NodeSpec("A", ["t", "f"], [], [0.5, 0.5]),
            NodeSpec("B", ["t", "f"], [], [0.5, 0.5]),
            NodeSpec("C", ["t", "f"], ["A", "B"], [0.5] * 8),
        ]
    )
    assert moralize(net).edges() == {(0, 1), (0, 2), (1, 2)}


def test_moralize_chain(chain3):
    graph = moralize(chain3)
    assert graph.edges() == {(0, 1), (1, 2)}
    assert graph.to_networkx().number_of_nodes() == 3


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        UndirectedGraph(2, [(1, 1)])


def test_triangle_needs_no_fill_in():
    graph = UndirectedGraph(3, [(0, 1), (1, 2), (0, 2)])
    for heuristic in Heuristic:
        result = triangulate(graph, (2, 2, 2), heuristic)
        assert result.fill_in == frozenset()
        assert extract_cliques(result, graph) == [(0, 1, 2)]


def test_four_cycle_heuristics():
    graph = UndirectedGraph(4, CYCLE_EDGES)
    counts = (2, 10, 2, 10)
    assert triangulate(graph, counts, Heuristic.MIN_WEIGHT).fill_in == frozenset({(0, 2)})
    assert triangulate(graph, counts, Heuristic.MIN_SIZE).fill_in == frozenset({(1, 3)})
    assert triangulate(graph, counts, Heuristic.MAX_CARD).fill_in == frozenset({(0, 2)})


def test_four_cycle_cliques_after_min_weight():
    graph = UndirectedGraph(4, CYCLE_EDGES)
    result = triangulate(graph, (2, 10, 2, 10), Heuristic.MIN_WEIGHT)
    assert extract_cliques(result, graph) == [(0, 1, 2), (0, 2, 3)]


def test_maximum_cardinality_order():
    graph = UndirectedGraph(4, CYCLE_EDGES)
    assert maximum_cardinality_order(graph) == [0, 1, 2, 3]
    assert maximum_cardinality_order(graph, start_node=2) == [2, 1, 0, 3]
    with pytest.raises(UnknownNodeError):
        maximum_cardinality_order(graph, start_node=4)


def test_chain_cliques(chain3):
    graph = moralize(chain3)
    result = triangulate(graph, chain3.state_counts)
    assert result.elimination_order == (0, 1, 2)
    assert extract_cliques(result, graph) == [(0, 1), (1, 2)]


def test_build_junction_tree_path():
    jt = build_junction_tree([(0, 1), (1, 2), (2, 3)], (2, 2, 2, 2))
    assert jt.edges == [Edge(0, 1, (1,)), Edge(1, 2, (2,))]
    assert jt.status == TreeStatus.INCONSISTENT
    assert all(t.dense_values().tolist() == [1.0] * 4 for t in jt.tables)


def test_disconnected_cliques_get_empty_separators():
    jt = build_junction_tree([(0, 1), (2,), (3, 4)], (2, 2, 2, 2, 2))
    assert len(jt.edges) == 2
    assert all(e.separator == () for e in jt.edges)
    assert all(t.scope == () for t in jt.separator_tables)


def test_junction_property_violation_detected():
    cliques = [(0, 1), (1, 2), (0, 2)]
    with pytest.raises(JunctionPropertyError):
        check_junction_property(cliques, [Edge(0, 1, (1,)), Edge(1, 2, (2,))])
    with pytest.raises(JunctionPropertyError):
        check_junction_property(cliques, [Edge(0, 1, (1,))])
    with pytest.raises(JunctionPropertyError):
        check_junction_property(cliques, [Edge(0, 1, ()), Edge(0, 2, (0,))])


def test_home_clique_prefers_smallest_state_space():
    jt = JunctionTree([(0, 1, 2), (1, 2)], [Edge(0, 1, (1, 2))], (3, 2, 2))
    assert jt.get_home_clique({1}) == 1
    assert jt.get_home_clique({0}) == 0
    with pytest.raises(JunctionPropertyError):
        JunctionTree([(0,), (1,)], [Edge(0, 1, ())], (2, 2)).get_home_clique({0, 1})


def test_compile_chain(chain_tree):
    assert chain_tree.cliques == [(0, 1)]
    assert chain_tree.status == TreeStatus.CONSISTENT
    assert chain_tree.total_mass == 1.0
    assert chain_tree.tables[0].dense_values() == pytest.approx([0.27, 0.03, 0.14, 0.56], abs=1e-12)
    assert chain_tree.ids == ("A", "B")
    assert chain_tree.labels == (("t", "f"), ("t", "f"))


def test_initialize_restores_the_prior(chain, chain_tree):
    jt, _ = propagate_case(chain_tree, Case.from_evidence(chain_tree.ids, chain_tree.labels, ["A=t"]))
    assert jt.has_evidence
    initialize(jt, chain)
    assert not jt.has_evidence
    assert jt.status == TreeStatus.CONSISTENT
    assert jt.tables[0].dense_values() == pytest.approx([0.27, 0.03, 0.14, 0.56], abs=1e-12)
    assert jt.separator_tables == []


def test_compile_rejects_invalid_network():
    net = NetworkSpec([NodeSpec("A", ["t", "f"], [], [0.5, 0.6])])
    with pytest.raises(NetworkValidationError):
        compile_network(net)


def test_compile_single_node():
    jt = compile_network(NetworkSpec([NodeSpec("A", ["t", "f", "u"], [], [0.2, 0.3, 0.5])]))
    assert jt.cliques == [(0,)]
    assert jt.edges == []
    assert jt.tables[0].dense_values() == pytest.approx([0.2, 0.3, 0.5])


def test_tree_stats_chain(chain_tree, chain):
    stats = tree_stats(chain_tree)
    assert stats.clique_count == 1
    assert stats.size_histogram == {2: 1}
    assert stats.total_state_space == 4
    assert stats.max_clique_state_space == 4
    assert stats.zero_fraction == 0.0
    assert stats.format_histogram() == "2:1"
    assert "heuristic=min-size" in stats.to_record()

    evidenced, _ = propagate_case(chain_tree, Case.from_evidence(chain.ids, chain_tree.labels, ["A=t"]))
    assert tree_stats(evidenced).zero_fraction == 0.5


def test_stats_dataframe(chain3):
    frame = stats_dataframe([tree_stats(compile_network(chain3, h)) for h in Heuristic])
    assert list(frame["heuristic"]) == ["max-card", "min-size", "min-weight"]
    assert list(frame["clique_count"]) == [2, 2, 2]


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    counts = tuple(draw(st.lists(st.integers(2, 5), min_size=n, max_size=n)))
    return UndirectedGraph(n, edges), counts


@settings(max_examples=150, deadline=None)
@given(random_graphs(), st.sampled_from(list(Heuristic)), st.data())
def test_triangulation_yields_junction_tree(pair, heuristic, data):
    graph, counts = pair
    start = data.draw(st.integers(0, graph.vertex_count - 1))
    result = triangulate(graph, counts, heuristic, start)
    filled = result.filled_graph(graph)
    assert nx.is_chordal(filled.to_networkx())
    assert is_chordal(filled)
    assert is_chordal(graph) == nx.is_chordal(graph.to_networkx())

    cliques = extract_cliques(result, graph)
    expected = {tuple(sorted(c)) for c in nx.find_cliques(filled.to_networkx())}
    assert set(cliques) == expected
    assert len(cliques) == len(expected)

    jt = build_junction_tree(cliques, counts)
    tree = nx.Graph()
    tree.add_nodes_from(range(len(cliques)))
    tree.add_edges_from((e.u, e.v) for e in jt.edges)
    assert nx.is_tree(tree)

    # Every clique on the path between two cliques holds their intersection
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            shared = set(cliques[i]) & set(cliques[j])
            for k in nx.shortest_path(tree, i, j):
                assert shared <= set(cliques[k])


def test_compiled_family_fits_a_clique():
    net = generate_synthetic(SyntheticParameters(node_count=25, max_parents=3, seed=9))
    for heuristic in Heuristic:
        jt = compile_network(net, heuristic)
        assert jt.heuristic == heuristic.value
        for index in range(len(net)):
            family = set(net.get_parent_indices(index)) | {index}
            assert any(family <= set(c) for c in jt.cliques)
