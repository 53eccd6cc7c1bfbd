#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module propagates evidence through a junction tree. A clique absorbs
from a neighbour by rescaling its table with the ratio of the neighbour's
new separator marginal to the stored separator table, which then takes the
new marginal. The stored separator always equals the clique's own marginal
as of the last time the two cliques agreed, so ratios never depend on
other absorptions into the same clique.
"""

from __future__ import annotations
import numpy as np
from ..tables import enter_finding, marginalize, multiply, divide, table_sum, scale
from ..utils import ExcludedCaseError, InconsistencyError, printer
from ..compiler.junction import JunctionTree, TreeStatus
from .case import Case, PropagationOutcome


def enter_case(jt: JunctionTree, case: Case) -> JunctionTree:
    """
    Enters every finding of the case into the smallest clique containing its
    node and marks the tree inconsistent. An empty case leaves the tree as it is.

    :param jt:      The consistent junction tree
    :type jt:       JunctionTree
    :param case:    The case to enter
    :type case:     Case

    :returns:       The same tree, with the case entered
    :rtype:         JunctionTree
    """

    if len(case) == 0:
        return jt
    for finding in case:
        home = jt.get_home_clique([jt.get_index(finding.node)])
        jt.tables[home] = enter_finding(jt.tables[home], finding)
    jt.status = TreeStatus.INCONSISTENT
    jt.has_evidence = True
    printer.log(f"Entered {len(case)} findings into '{jt.name}'.")
    return jt


def _find_edge(jt: JunctionTree, u: int, v: int) -> int:
    for k, edge in enumerate(jt.edges):
        if {edge.u, edge.v} == {u, v}:
            return k
    raise InconsistencyError(f"Cliques {u} and {v} are not adjacent.")


def absorb(jt: JunctionTree, u: int, v: int, edge: int = None) -> None:
    """
    Lets clique u absorb from the adjacent clique v: u's table is multiplied
    by the ratio of v's separator marginal to the stored separator table,
    which is then replaced by v's marginal. A clique absorbing from several
    neighbours gets the same result in any order.

    :param jt:      The junction tree
    :type jt:       JunctionTree
    :param u:       The absorbing clique
    :type u:        int
    :param v:       The clique absorbed from
    :type v:        int
    :param edge:    The index of the edge between them, looked up if not given
    :type edge:     int
    """

    if edge is None:
        edge = _find_edge(jt, u, v)
    separator = jt.edges[edge].separator
    marginal = marginalize(jt.tables[v], separator)
    ratio = divide(marginal, jt.separator_tables[edge])
    jt.tables[u] = multiply(jt.tables[u], ratio)
    jt.separator_tables[edge] = marginal


def _traversal(jt: JunctionTree, root: int) -> list:
    # (parent, child, edge) triples in depth-first pre-order from the root
    order = []
    stack = [root]
    seen = {root}
    while stack:
        clique = stack.pop()
        for neighbour, edge in reversed(jt.get_neighbors(clique)):
            if neighbour not in seen:
                seen.add(neighbour)
                order.append((clique, neighbour, edge))
                stack.append(neighbour)
    return order


def collect_evidence(jt: JunctionTree, root: int = 0) -> None:
    """
    Lets every clique absorb from its children, deepest first, so that the
    root ends up holding the evidence of the whole tree.

    :param jt:      The junction tree
    :type jt:       JunctionTree
    :param root:    The root clique
    :type root:     int
    """

    for parent, child, edge in reversed(_traversal(jt, root)):
        absorb(jt, parent, child, edge)


def distribute_evidence(jt: JunctionTree, root: int = 0) -> None:
    """
    Lets every clique absorb from its parent, starting at the root.

    :param jt:      The junction tree
    :type jt:       JunctionTree
    :param root:    The root clique
    :type root:     int
    """

    for parent, child, edge in _traversal(jt, root):
        absorb(jt, child, parent, edge)


def global_propagate(jt: JunctionTree, root: int = 0, normalize: bool = True) -> PropagationOutcome:
    """
    Makes the tree consistent by a collect followed by a distribute from the
    root. The normalization constant is the root's total after the collect,
    which is the probability of the entered evidence. In normalized mode all
    tables are then divided by it; a zero constant marks the case excluded
    and leaves every table zero.

    :param jt:          The junction tree
    :type jt:           JunctionTree
    :param root:        The root clique
    :type root:         int
    :param normalize:   Whether to normalize the tables to total mass one
    :type normalize:    bool

    :returns:           The normalization constant and the exclusion flag
    :rtype:             PropagationOutcome
    """

    if not 0 <= root < len(jt.cliques):
        raise InconsistencyError(f"Root clique {root} does not exist.")

    collect_evidence(jt, root)
    mu = table_sum(jt.tables[root])
    distribute_evidence(jt, root)

    if mu == 0.0:
        printer.warning(f"Zero normalization constant in '{jt.name}': the case is excluded.")
    elif normalize:
        factor = 1.0 / mu
        jt.tables = [scale(t, factor) for t in jt.tables]
        jt.separator_tables = [scale(t, factor) for t in jt.separator_tables]

    jt.status = TreeStatus.CONSISTENT
    jt.normalized = normalize
    jt.total_mass = (1.0 if normalize else mu) if mu > 0.0 else 0.0
    printer.log(f"Propagated '{jt.name}' from clique {root}: mu={mu!r}.")
    return PropagationOutcome(mu, mu == 0.0)


def query_marginal(jt: JunctionTree, node) -> np.ndarray:
    """
    Returns the normalized posterior of a node, computed from the smallest
    clique containing it.

    :param jt:      The consistent junction tree
    :type jt:       JunctionTree
    :param node:    The node index or identifier
    :type node:     int | str

    :returns:       The probability of each state of the node
    :rtype:         np.ndarray
    """

    index = jt.get_index(node)
    if jt.status != TreeStatus.CONSISTENT:
        raise InconsistencyError(f"Tree '{jt.name}' must be propagated before querying.")
    if jt.total_mass == 0.0:
        raise ExcludedCaseError(
            f"The case has a zero normalization constant in '{jt.name}' and is excluded."
        )
    marginal = marginalize(jt.tables[jt.get_home_clique([index])], [index])
    values = np.array(marginal.dense_values())
    return values / table_sum(marginal)


def query_all(jt: JunctionTree) -> dict:
    """
    Returns the posterior of every node, keyed by node identifier.

    :param jt:  The consistent junction tree
    :type jt:   JunctionTree

    :returns:   The posterior of each node
    :rtype:     dict
    """

    return {jt.ids[i]: query_marginal(jt, i) for i in range(jt.node_count)}


def unnormalized_marginal(jt: JunctionTree, node: int) -> np.ndarray:
    """
    Returns the marginal of a node as held by the tree, without normalizing.

    :param jt:      The consistent junction tree
    :type jt:       JunctionTree
    :param node:    The node index
    :type node:     int

    :returns:       The belief of each state of the node
    :rtype:         np.ndarray
    """

    table = jt.tables[jt.get_home_clique([node])]
    return np.array(marginalize(table, [node]).dense_values())


def propagate_case(
    jt: JunctionTree, case: Case, root: int = 0, normalize: bool = True
) -> tuple:
    """
    Enters a case into a copy of the tree and propagates it. The given tree
    is left untouched.

    :param jt:          The consistent junction tree
    :type jt:           JunctionTree
    :param case:        The case to propagate
    :type case:         Case
    :param root:        The root clique
    :type root:         int
    :param normalize:   Whether to normalize the tables
    :type normalize:    bool

    :returns:           The propagated copy and the outcome
    :rtype:             tuple[JunctionTree, PropagationOutcome]
    """

    tree = jt.copy()
    enter_case(tree, case)
    outcome = global_propagate(tree, root, normalize)
    return tree, outcome
