#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from itertools import combinations
import networkx as nx
from ..network import NetworkSpec


class UndirectedGraph:
    """
    A simple undirected graph over the node indices 0..n-1, stored as a
    list of neighbour sets. The graph has no self-loops and every edge is
    stored in both directions.
    """

    vertex_count: int = 0
    """Defines the number of vertices."""

    adjacency: list = None
    """Defines the neighbour set of each vertex."""

    def __init__(self, vertex_count: int, edges=()) -> None:
        """
        Initialises the graph with an optional list of edges.

        :param vertex_count:    The number of vertices
        :type vertex_count:     int
        :param edges:           The edges to add, as vertex pairs
        :type edges:            Iterable[tuple]
        """

        self.vertex_count = vertex_count
        self.adjacency = [set() for _ in range(vertex_count)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        """
        Adds an undirected edge between two distinct vertices.

        :param u:   The first vertex
        :type u:    int
        :param v:   The second vertex
        :type v:    int
        """

        if u == v:
            raise ValueError(f"Self-loop on vertex {u} is not allowed.")
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbors(self, v: int) -> set:
        return self.adjacency[v]

    def edges(self) -> set:
        """
        Returns the edge set, each edge as an ordered pair (u, v) with u < v.

        :returns:   The edges of the graph
        :rtype:     set
        """

        return {(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v}

    def copy(self) -> UndirectedGraph:
        graph = UndirectedGraph(self.vertex_count)
        graph.adjacency = [set(n) for n in self.adjacency]
        return graph

    def to_networkx(self) -> nx.Graph:
        """
        Returns the graph as a networkx graph over the same vertex indices.

        :returns:   The networkx graph
        :rtype:     nx.Graph
        """

        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return graph


def moralize(net: NetworkSpec) -> UndirectedGraph:
    """
    Forms the moral graph of a network: every arc without its direction,
    plus an edge between every pair of parents of a common child.

    :param net:     The network
    :type net:      NetworkSpec

    :returns:       The moral graph over the node indices
    :rtype:         UndirectedGraph
    """

    graph = UndirectedGraph(len(net))
    for index in range(len(net)):
        parents = net.get_parent_indices(index)
        for parent in parents:
            graph.add_edge(parent, index)
        for u, v in combinations(parents, 2):
            graph.add_edge(u, v)
    return graph
