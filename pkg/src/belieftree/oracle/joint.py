#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module is a brute-force reference for small networks: the full joint
distribution is enumerated as a single dense belief table over all nodes
in index order, using the same linear layout as every other table.
"""

from __future__ import annotations
import math
import numpy as np
from ..compiler.junction import JunctionTree
from ..engine.case import Case
from ..network import NetworkSpec
from ..tables import BeliefTable, enter_finding, marginalize, project_indices, table_sum
from ..utils import StateSpaceTooLargeError, UndefinedPosteriorError

MAX_JOINT_STATES: int = 2**24
"""Defines the largest joint state space that will be enumerated."""


def enumerate_joint(net: NetworkSpec) -> BeliefTable:
    """
    Returns the joint distribution of the network: each entry is the product
    over the nodes of the conditional probability of the node's state given
    its parents' states.

    :param net:     The network
    :type net:      NetworkSpec

    :returns:       The joint table over all nodes
    :rtype:         BeliefTable
    """

    counts = net.state_counts
    if math.prod(counts) > MAX_JOINT_STATES:
        raise StateSpaceTooLargeError(
            f"The joint state space of '{net.name}' exceeds {MAX_JOINT_STATES} states."
        )

    joint = np.ones(counts, dtype=np.float64)
    for index in range(len(net)):
        family = net.get_parent_indices(index) + [index]
        cpt = net.get_cpt_array(index).transpose(np.argsort(family))
        shape = [counts[n] if n in family else 1 for n in range(len(net))]
        joint = joint * cpt.reshape(shape)
    return BeliefTable(range(len(net)), counts, joint.reshape(-1))


def _mask(joint: BeliefTable, case: Case) -> BeliefTable:
    for finding in case:
        joint = enter_finding(joint, finding)
    return joint


def oracle_evidence_prob(joint: BeliefTable, case: Case) -> float:
    """
    Returns the probability of a case.

    :param joint:   The joint table
    :type joint:    BeliefTable
    :param case:    The case
    :type case:     Case

    :returns:       The probability of the evidence
    :rtype:         float
    """

    return table_sum(_mask(joint, case))


def oracle_posterior(joint: BeliefTable, case: Case, node: int) -> np.ndarray:
    """
    Returns the posterior of a node given a case.

    :param joint:   The joint table
    :type joint:    BeliefTable
    :param case:    The case
    :type case:     Case
    :param node:    The node index
    :type node:     int

    :returns:       The probability of each state of the node
    :rtype:         np.ndarray
    """

    masked = _mask(joint, case)
    total = table_sum(masked)
    if total == 0.0:
        raise UndefinedPosteriorError(f"The case {case!r} has probability zero.")
    return np.array(marginalize(masked, [node]).dense_values()) / total


def surviving_mask(joint: BeliefTable, jt: JunctionTree) -> np.ndarray:
    """
    Returns which joint states survive an approximated tree: those whose
    projection onto every clique is positive in that clique's table.

    :param joint:   The joint table
    :type joint:    BeliefTable
    :param jt:      The approximated tree over the same nodes
    :type jt:       JunctionTree

    :returns:       A flag for each joint state
    :rtype:         np.ndarray
    """

    linear = np.arange(joint.size, dtype=np.int64)
    survives = np.ones(joint.size, dtype=bool)
    for clique, table in zip(jt.cliques, jt.tables):
        target = project_indices(linear, joint.scope, joint.shape, clique)
        survives &= table.dense_values()[target] > 0.0
    return survives


def oracle_surviving_mass(joint: BeliefTable, jt: JunctionTree, case: Case = None) -> float:
    """
    Returns the prior probability of the joint states that survive an
    approximated tree, restricted to a case if one is given.

    :param joint:   The joint table
    :type joint:    BeliefTable
    :param jt:      The approximated tree over the same nodes
    :type jt:       JunctionTree
    :param case:    The case to restrict to
    :type case:     Case

    :returns:       The surviving probability
    :rtype:         float
    """

    masked = _mask(joint, case) if case is not None else joint
    values = np.where(surviving_mask(joint, jt), masked.dense_values(), 0.0)
    return math.fsum(values.tolist())
