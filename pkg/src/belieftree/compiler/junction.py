#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
import math
from ..tables import BeliefTable
from ..utils import JunctionPropertyError, UnknownNodeError, printer


class TreeStatus(str, Enum):
    """
    The propagation status of a junction tree.
    """

    INCONSISTENT = "inconsistent"
    CONSISTENT = "consistent"


@dataclass(frozen=True)
class Edge:
    """
    A junction tree edge between two cliques and the separator they share.
    """

    u: int
    """Defines the index of the first clique."""

    v: int
    """Defines the index of the second clique."""

    separator: tuple
    """Defines the sorted nodes shared by the two cliques, empty between components."""

    def other(self, clique: int) -> int:
        return self.v if clique == self.u else self.u


class _DisjointSets:
    # Union-find over clique indices with path halving
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        self.parent[max(x, y)] = min(x, y)
        return True


class JunctionTree:
    """
    The JunctionTree class holds the belief universes of a compiled network:
    the cliques with their belief tables and the tree edges with their
    separator tables. Propagation replaces the tables in place, so a tree
    must not be queried while it is being propagated. Use copy() to enter
    a new case on the same compiled tree.
    """

    name: str = ""
    """Defines the name of the compiled network."""

    ids: tuple = ()
    """Defines the node identifiers in index order."""

    labels: tuple = ()
    """Defines the state labels of each node in index order."""

    cliques: list = None
    """Defines the cliques, each a sorted tuple of node indices."""

    tables: list = None
    """Defines the belief table of each clique."""

    edges: list = None
    """Defines the tree edges."""

    separator_tables: list = None
    """Defines the belief table of each edge's separator."""

    status: TreeStatus = TreeStatus.INCONSISTENT
    """Defines whether the tables agree on all shared nodes."""

    total_mass: float = 0.0
    """Defines the sum over any clique table when the tree is consistent."""

    normalized: bool = True
    """Defines whether the last propagation normalized the tables."""

    has_evidence: bool = False
    """Defines whether a case has been entered into the tree."""

    heuristic: str = ""
    """Defines the triangulation heuristic the tree was compiled with."""

    start_node: int = 0
    """Defines the start node of a maximum-cardinality triangulation."""

    approximation = None
    """Defines the report of the approximation applied to the tree, if any."""

    def __init__(
        self,
        cliques: list,
        edges: list,
        state_counts,
        ids=None,
        labels=None,
        name: str = "",
    ) -> None:
        """
        Initialises the tree with all-ones clique and separator tables.

        :param cliques:         The cliques, each a sorted tuple of node indices
        :type cliques:          list
        :param edges:           The tree edges
        :type edges:            list
        :param state_counts:    The number of states of each node
        :type state_counts:     Sequence[int]
        :param ids:             The node identifiers, defaulting to the indices
        :type ids:              Sequence[str]
        :param labels:          The state labels of each node, defaulting to the state indices
        :type labels:           Sequence[Sequence[str]]
        :param name:            The name of the compiled network
        :type name:             str
        """

        self.state_counts = tuple(int(s) for s in state_counts)
        self.ids = tuple(ids) if ids is not None else tuple(str(i) for i in range(len(self.state_counts)))
        self.labels = (
            tuple(tuple(l) for l in labels)
            if labels is not None
            else tuple(tuple(str(s) for s in range(c)) for c in self.state_counts)
        )
        self.name = name
        self.cliques = [tuple(c) for c in cliques]
        self.edges = list(edges)
        self.tables = [self.ones(c) for c in self.cliques]
        self.separator_tables = [self.ones(e.separator) for e in self.edges]
        self.status = TreeStatus.INCONSISTENT
        self.total_mass = 0.0
        self.normalized = True
        self.has_evidence = False
        self.heuristic = ""
        self.start_node = 0
        self.approximation = None

    def ones(self, nodes) -> BeliefTable:
        """
        Returns the all-ones table over a sorted set of nodes of the tree.

        :param nodes:   The nodes of the table
        :type nodes:    Sequence[int]

        :returns:       The all-ones table
        :rtype:         BeliefTable
        """

        return BeliefTable.ones(nodes, [self.state_counts[n] for n in nodes])

    @property
    def node_count(self) -> int:
        return len(self.state_counts)

    def get_index(self, node) -> int:
        """
        Returns the index of a node given either its index or its identifier.

        :param node:    The node index or identifier
        :type node:     int | str

        :returns:       The node index
        :rtype:         int
        """

        if isinstance(node, str):
            if node not in self.ids:
                raise UnknownNodeError(f"Unknown node '{node}' in tree '{self.name}'.")
            return self.ids.index(node)
        if not 0 <= node < self.node_count:
            raise UnknownNodeError(f"Unknown node index {node} in tree '{self.name}'.")
        return int(node)

    def get_state_space(self, clique: int) -> int:
        """
        Returns the number of joint states of a clique.

        :param clique:  The clique index
        :type clique:   int

        :returns:       The state-space size
        :rtype:         int
        """

        return math.prod(self.state_counts[n] for n in self.cliques[clique])

    def get_home_clique(self, nodes) -> int:
        """
        Returns the clique with the smallest state space containing all the
        nodes, lowest index on ties.

        :param nodes:   The nodes that must be contained
        :type nodes:    Iterable[int]

        :returns:       The clique index
        :rtype:         int
        """

        nodes = set(nodes)
        candidates = [k for k, c in enumerate(self.cliques) if nodes.issubset(c)]
        if not candidates:
            raise JunctionPropertyError(f"No clique contains the nodes {sorted(nodes)}.")
        return min(candidates, key=lambda k: (self.get_state_space(k), k))

    def get_neighbors(self, clique: int) -> list:
        """
        Returns the (neighbour clique, edge index) pairs of a clique, in edge order.

        :param clique:  The clique index
        :type clique:   int

        :returns:       The neighbours with the connecting edge
        :rtype:         list
        """

        return [
            (edge.other(clique), k)
            for k, edge in enumerate(self.edges)
            if clique in (edge.u, edge.v)
        ]

    def copy(self) -> JunctionTree:
        """
        Returns an independent copy of the tree. Tables are immutable values,
        so the copy shares them until either tree replaces one.

        :returns:   The copied tree
        :rtype:     JunctionTree
        """

        tree = JunctionTree.__new__(JunctionTree)
        tree.__dict__.update(self.__dict__)
        tree.cliques = list(self.cliques)
        tree.edges = list(self.edges)
        tree.tables = list(self.tables)
        tree.separator_tables = list(self.separator_tables)
        return tree


def build_junction_tree(
    cliques: list, state_counts, ids=None, labels=None, name: str = ""
) -> JunctionTree:
    """
    Connects the cliques by a maximal spanning tree over all clique pairs,
    weighted by separator size. Ties are broken by the smaller separator
    state space, then by the lowest clique indices. Cliques of different
    connected components end up linked by edges with an empty separator.

    :param cliques:         The maximal cliques of a triangulated graph
    :type cliques:          list
    :param state_counts:    The number of states of each node
    :type state_counts:     Sequence[int]
    :param ids:             The node identifiers
    :type ids:              Sequence[str]
    :param labels:          The state labels of each node
    :type labels:           Sequence[Sequence[str]]
    :param name:            The name of the compiled network
    :type name:             str

    :returns:               The tree with all-ones tables
    :rtype:                 JunctionTree
    """

    def space(nodes) -> int:
        return math.prod(state_counts[n] for n in nodes)

    candidates = []
    for i, j in combinations(range(len(cliques)), 2):
        separator = tuple(sorted(set(cliques[i]) & set(cliques[j])))
        candidates.append((-len(separator), space(separator), i, j, separator))
    candidates.sort(key=lambda c: c[:4])

    # Kruskal: add the heaviest edges that join two subtrees
    sets = _DisjointSets(len(cliques))
    edges = []
    for _, _, i, j, separator in candidates:
        if sets.union(i, j):
            edges.append(Edge(i, j, separator))
        if len(edges) == len(cliques) - 1:
            break

    check_junction_property(cliques, edges)
    printer.log(f"Built junction tree with {len(cliques)} cliques and {len(edges)} edges.")
    return JunctionTree(cliques, edges, state_counts, ids, labels, name)


def check_junction_property(cliques: list, edges: list) -> None:
    """
    Checks that the edges form a tree over the cliques and that the cliques
    containing any node form a connected subtree, which is equivalent to
    every clique on the path between two cliques containing their
    intersection.

    :param cliques:     The cliques
    :type cliques:      list
    :param edges:       The tree edges
    :type edges:        list
    """

    if len(edges) != max(len(cliques) - 1, 0):
        raise JunctionPropertyError(
            f"{len(edges)} edges cannot span {len(cliques)} cliques as a tree."
        )
    sets = _DisjointSets(len(cliques))
    for edge in edges:
        if not sets.union(edge.u, edge.v):
            raise JunctionPropertyError(f"Edge {edge.u}-{edge.v} closes a cycle.")
        if set(edge.separator) != set(cliques[edge.u]) & set(cliques[edge.v]):
            raise JunctionPropertyError(f"Edge {edge.u}-{edge.v} has a wrong separator.")

    # In a tree, a node's cliques are connected iff they are linked by one fewer edges
    nodes = set(n for c in cliques for n in c)
    for node in nodes:
        holders = sum(1 for c in cliques if node in c)
        links = sum(1 for e in edges if node in e.separator)
        if links != holders - 1:
            raise JunctionPropertyError(
                f"The cliques containing node {node} do not form a connected subtree."
            )
