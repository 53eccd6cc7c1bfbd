#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from ..engine import propagation
from ..network import NetworkSpec, require_valid
from ..tables import BeliefTable, multiply
from ..utils import printer
from .graph import moralize
from .junction import JunctionTree, build_junction_tree
from .triangulation import Heuristic, triangulate, extract_cliques


def initialize(jt: JunctionTree, net: NetworkSpec) -> JunctionTree:
    """
    Multiplies each node's conditional probability table into the smallest
    clique containing its family, resets the separators to all-ones and
    propagates, leaving the tree consistent and normalized.

    :param jt:      The junction tree compiled from the network
    :type jt:       JunctionTree
    :param net:     The network
    :type net:      NetworkSpec

    :returns:       The initialized tree
    :rtype:         JunctionTree
    """

    jt.tables = [jt.ones(c) for c in jt.cliques]
    jt.separator_tables = [jt.ones(e.separator) for e in jt.edges]
    for index in range(len(net)):
        family = net.get_parent_indices(index) + [index]
        home = jt.get_home_clique(family)
        cpt = BeliefTable(family, net.get_family_shape(index), net.nodes[index].cpt)
        jt.tables[home] = multiply(jt.tables[home], cpt)

    jt.has_evidence = False
    propagation.global_propagate(jt, root=0, normalize=True)
    return jt


def compile_network(
    net: NetworkSpec,
    heuristic: Heuristic = Heuristic.MIN_SIZE,
    start_node: int = 0,
) -> JunctionTree:
    """
    Compiles a valid network into an initialized junction tree: moral graph,
    triangulation, cliques, maximal spanning tree and initialization.

    :param net:         The network to compile
    :type net:          NetworkSpec
    :param heuristic:   The triangulation heuristic
    :type heuristic:    Heuristic
    :param start_node:  The first vertex of a maximum-cardinality triangulation
    :type start_node:   int

    :returns:           The consistent, normalized tree
    :rtype:             JunctionTree
    """

    require_valid(net)
    heuristic = Heuristic(heuristic)
    graph = moralize(net)
    result = triangulate(graph, net.state_counts, heuristic, start_node)
    cliques = extract_cliques(result, graph)
    jt = build_junction_tree(
        cliques,
        net.state_counts,
        ids=net.ids,
        labels=[node.states for node in net.nodes],
        name=net.name,
    )
    jt.heuristic = heuristic.value
    jt.start_node = start_node
    initialize(jt, net)

    printer.info(
        f"Compiled '{net.name}' with {heuristic.value}: {len(cliques)} cliques, "
        f"{len(result.fill_in)} fill-in edges."
    )
    return jt
