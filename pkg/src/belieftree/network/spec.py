#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
import numpy as np
from ..utils import UnknownNodeError


@dataclass(frozen=True)
class NodeSpec:
    """
    A single node of a causal probabilistic network. The conditional
    probability table is flattened row-major over the parent configurations,
    with the last parent varying fastest, and each row lists the node's own
    states in declared order.
    """

    id: str
    """Defines the unique identifier of the node."""

    states: tuple
    """Defines the ordered state labels of the node."""

    parents: tuple = ()
    """Defines the ordered identifiers of the parent nodes."""

    cpt: tuple = ()
    """Defines the flat conditional probability table."""

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "cpt", tuple(float(p) for p in self.cpt))

    def get_state_index(self, label: str) -> int:
        """
        Returns the index of a state label of the node.

        :param label:   The state label
        :type label:    str

        :returns:       The index of the state
        :rtype:         int
        """

        if label not in self.states:
            raise UnknownNodeError(f"Node '{self.id}' has no state '{label}'.")
        return self.states.index(label)

    def export(self) -> dict:
        """
        Exports the node into the dictionary used by network files.

        :returns:   The exported node
        :rtype:     dict
        """

        return {
            "id": self.id,
            "states": list(self.states),
            "parents": list(self.parents),
            "cpt": list(self.cpt),
        }


@dataclass(frozen=True)
class NetworkSpec:
    """
    The NetworkSpec class holds a complete causal probabilistic network. Nodes
    are addressed by their declaration index everywhere inside the engine; the
    identifiers only appear at the boundaries. The network is an immutable
    value and is safe to share between threads.
    """

    nodes: tuple
    """Defines the nodes of the network in declaration order."""

    name: str = "network"
    """Defines the name of the network."""

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @cached_property
    def index_of(self) -> dict:
        """Defines the mapping from node identifiers to node indices."""
        return {node.id: i for i, node in enumerate(self.nodes)}

    @property
    def ids(self) -> list:
        """Defines the node identifiers in index order."""
        return [node.id for node in self.nodes]

    @property
    def state_counts(self) -> tuple:
        """Defines the number of states of each node in index order."""
        return tuple(len(node.states) for node in self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def get_index(self, id: str) -> int:
        """
        Returns the index of the node with the identifier.

        :param id:  The node identifier
        :type id:   str

        :returns:   The index of the node
        :rtype:     int
        """

        if id not in self.index_of:
            raise UnknownNodeError(f"Unknown node '{id}' in network '{self.name}'.")
        return self.index_of[id]

    def get_node(self, id: str) -> NodeSpec:
        """
        Returns the node with the identifier.

        :param id:  The node identifier
        :type id:   str

        :returns:   The node
        :rtype:     NodeSpec
        """

        return self.nodes[self.get_index(id)]

    def get_parent_indices(self, index: int) -> list:
        """
        Returns the indices of the parents of a node, in declared order.

        :param index:   The index of the node
        :type index:    int

        :returns:       The parent indices
        :rtype:         list
        """

        return [self.index_of[p] for p in self.nodes[index].parents]

    def get_family_shape(self, index: int) -> tuple:
        """
        Returns the state counts of the parents followed by the node itself,
        which is the shape of its conditional probability table.

        :param index:   The index of the node
        :type index:    int

        :returns:       The shape of the family
        :rtype:         tuple
        """

        counts = self.state_counts
        return tuple(counts[p] for p in self.get_parent_indices(index)) + (counts[index],)

    def get_cpt_array(self, index: int) -> np.ndarray:
        """
        Returns the conditional probability table of a node as an array
        indexed by the parent states followed by the node's state.

        :param index:   The index of the node
        :type index:    int

        :returns:       The conditional probability array
        :rtype:         np.ndarray
        """

        return np.array(self.nodes[index].cpt, dtype=np.float64).reshape(
            self.get_family_shape(index)
        )

    def export(self) -> dict:
        """
        Exports the network into the dictionary used by network files.

        :returns:   The exported network
        :rtype:     dict
        """

        return {"name": self.name, "nodes": [node.export() for node in self.nodes]}
