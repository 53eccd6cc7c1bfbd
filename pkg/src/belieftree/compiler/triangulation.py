#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module triangulates moral graphs. All three heuristics produce an
elimination order and the fill-in edges of the elimination game played in
that order. Ties are always broken towards the lowest node index, so the
same graph always gives the same triangulation.
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
import math
from ..utils import UnknownNodeError, printer
from .graph import UndirectedGraph


class Heuristic(str, Enum):
    """
    The triangulation heuristics.
    """

    MAX_CARD = "max-card"
    """Maximum-cardinality search; the elimination order is the reversed visit order."""

    MIN_SIZE = "min-size"
    """Greedy elimination of the vertex with the fewest nodes in its elimination clique."""

    MIN_WEIGHT = "min-weight"
    """Greedy elimination of the vertex with the smallest elimination-clique state space."""


@dataclass(frozen=True)
class TriangulationResult:
    """
    The outcome of a triangulation: the edges added to the moral graph and
    the elimination order that produced them.
    """

    fill_in: frozenset
    """Defines the added edges, each as a pair (u, v) with u < v."""

    elimination_order: tuple
    """Defines the order in which the vertices were eliminated."""

    heuristic: Heuristic
    """Defines the heuristic that produced the order."""

    def filled_graph(self, graph: UndirectedGraph) -> UndirectedGraph:
        """
        Returns a copy of the graph with the fill-in edges added.

        :param graph:   The triangulated graph
        :type graph:    UndirectedGraph

        :returns:       The chordal graph
        :rtype:         UndirectedGraph
        """

        filled = graph.copy()
        for u, v in self.fill_in:
            filled.add_edge(u, v)
        return filled


def maximum_cardinality_order(graph: UndirectedGraph, start_node: int = 0) -> list:
    """
    Visits the vertices by maximum-cardinality search: starting from the
    start node, the next vertex is always the unvisited one with the most
    visited neighbours.

    :param graph:       The graph to search
    :type graph:        UndirectedGraph
    :param start_node:  The vertex visited first
    :type start_node:   int

    :returns:           The vertices in visit order
    :rtype:             list
    """

    if graph.vertex_count == 0:
        return []
    if not 0 <= start_node < graph.vertex_count:
        raise UnknownNodeError(f"Start node {start_node} is not a vertex of the graph.")

    weight = [0] * graph.vertex_count
    visited = [False] * graph.vertex_count
    order = []
    current = start_node
    while True:
        visited[current] = True
        order.append(current)
        for n in graph.neighbors(current):
            if not visited[n]:
                weight[n] += 1
        remaining = [v for v in range(graph.vertex_count) if not visited[v]]
        if not remaining:
            return order
        current = min(remaining, key=lambda v: (-weight[v], v))


def eliminate(graph: UndirectedGraph, order) -> frozenset:
    """
    Plays the elimination game in the given order and returns the fill-in:
    each eliminated vertex has its remaining neighbours pairwise linked.

    :param graph:   The graph to eliminate
    :type graph:    UndirectedGraph
    :param order:   The elimination order, a permutation of the vertices
    :type order:    Sequence[int]

    :returns:       The fill-in edges
    :rtype:         frozenset
    """

    working = graph.copy()
    fill_in = set()
    for v in order:
        for a, b in combinations(sorted(working.neighbors(v)), 2):
            if not working.has_edge(a, b):
                working.add_edge(a, b)
                fill_in.add((a, b))
        for n in list(working.neighbors(v)):
            working.adjacency[n].discard(v)
        working.adjacency[v] = set()
    return frozenset(fill_in)


def _greedy_order(graph: UndirectedGraph, score) -> list:
    working = graph.copy()
    remaining = set(range(graph.vertex_count))
    order = []
    while remaining:
        # Pick the lowest scoring vertex, lowest index on ties
        v = min(remaining, key=lambda u: (score(u, working.neighbors(u)), u))
        for a, b in combinations(working.neighbors(v), 2):
            working.add_edge(a, b)
        for n in list(working.neighbors(v)):
            working.adjacency[n].discard(v)
        working.adjacency[v] = set()
        remaining.discard(v)
        order.append(v)
    return order


def triangulate(
    graph: UndirectedGraph,
    state_counts,
    heuristic: Heuristic = Heuristic.MIN_SIZE,
    start_node: int = 0,
) -> TriangulationResult:
    """
    Triangulates a moral graph with one of the heuristics. The graph plus the
    returned fill-in is always chordal.

    :param graph:           The moral graph
    :type graph:            UndirectedGraph
    :param state_counts:    The number of states of each vertex
    :type state_counts:     Sequence[int]
    :param heuristic:       The heuristic to use
    :type heuristic:        Heuristic
    :param start_node:      The first vertex of a maximum-cardinality search
    :type start_node:       int

    :returns:               The triangulation
    :rtype:                 TriangulationResult
    """

    heuristic = Heuristic(heuristic)
    if heuristic == Heuristic.MAX_CARD:
        order = list(reversed(maximum_cardinality_order(graph, start_node)))
    elif heuristic == Heuristic.MIN_SIZE:
        order = _greedy_order(graph, lambda v, nbrs: len(nbrs) + 1)
    else:
        order = _greedy_order(
            graph,
            lambda v, nbrs: state_counts[v] * math.prod(state_counts[n] for n in nbrs),
        )

    fill_in = eliminate(graph, order)
    printer.log(
        f"Triangulated {graph.vertex_count} vertices with {heuristic.value}: "
        f"{len(fill_in)} fill-in edges."
    )
    return TriangulationResult(fill_in, tuple(order), heuristic)


def is_chordal(graph: UndirectedGraph) -> bool:
    """
    Checks whether every cycle longer than three has a chord, by eliminating
    the vertices in reversed maximum-cardinality order: the graph is chordal
    exactly when that elimination needs no fill-in.

    :param graph:   The graph to check
    :type graph:    UndirectedGraph

    :returns:       A flag whether the graph is chordal
    :rtype:         bool
    """

    order = list(reversed(maximum_cardinality_order(graph)))
    return len(eliminate(graph, order)) == 0


def extract_cliques(result: TriangulationResult, graph: UndirectedGraph) -> list:
    """
    Returns the maximal cliques of the triangulated graph. The elimination
    clique of each vertex is the vertex plus its neighbours eliminated after
    it; the maximal ones are kept, in elimination order.

    :param result:  The triangulation of the graph
    :type result:   TriangulationResult
    :param graph:   The moral graph
    :type graph:    UndirectedGraph

    :returns:       The cliques, each a sorted tuple of vertices
    :rtype:         list
    """

    filled = result.filled_graph(graph)
    position = {v: k for k, v in enumerate(result.elimination_order)}
    candidates = [
        frozenset([v] + [n for n in filled.neighbors(v) if position[n] > position[v]])
        for v in result.elimination_order
    ]

    cliques = []
    for k, clique in enumerate(candidates):
        if not any(clique < other for j, other in enumerate(candidates) if j != k):
            cliques.append(tuple(sorted(clique)))
    return cliques
