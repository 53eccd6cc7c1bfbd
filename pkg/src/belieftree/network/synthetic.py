#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module generates seeded random networks with skewed and sparse
conditional probability tables, used to benchmark the approximation.
"""

from __future__ import annotations
from dataclasses import dataclass
import math
import numpy as np
from ..utils import GeneratorParameterError, printer
from .spec import NodeSpec, NetworkSpec


@dataclass(frozen=True)
class SyntheticParameters:
    """
    The parameters of the synthetic network generator. Node indices are a
    topological order and the parents of each node are drawn from the nodes
    in the window directly before it, which bounds the clique sizes.
    """

    node_count: int = 50
    """Defines the number of nodes."""

    max_parents: int = 2
    """Defines the largest number of parents of a node."""

    min_states: int = 3
    """Defines the smallest number of states of a node."""

    max_states: int = 4
    """Defines the largest number of states of a node."""

    skew: float = 0.3
    """Defines the Dirichlet concentration of each CPT row; small values give skewed rows."""

    zero_fraction: float = 0.0
    """Defines the expected fraction of CPT entries that are exactly zero."""

    parent_window: int = 5
    """Defines how many preceding nodes are candidate parents."""

    seed: int = 0
    """Defines the seed of the random generator."""

    def validate(self) -> None:
        """
        Checks the parameters and raises a GeneratorParameterError on the
        first violation.
        """

        if self.node_count < 1:
            raise GeneratorParameterError("The node count must be at least 1.")
        if self.max_parents < 0 or self.max_parents >= self.node_count:
            raise GeneratorParameterError(
                "The maximum parent count must be nonnegative and less than the node count."
            )
        if self.min_states < 2 or self.max_states < self.min_states:
            raise GeneratorParameterError("State counts must be at least 2 and form a range.")
        if not self.skew > 0 or not math.isfinite(self.skew):
            raise GeneratorParameterError("The skew concentration must be positive.")
        if not 0.0 <= self.zero_fraction < 1.0:
            raise GeneratorParameterError("The zero fraction must be in [0, 1).")
        if self.parent_window < 1:
            raise GeneratorParameterError("The parent window must be at least 1.")
        if self.seed < 0:
            raise GeneratorParameterError("The seed must be nonnegative.")


def _draw_row(rng: np.random.Generator, states: int, params: SyntheticParameters) -> np.ndarray:
    # Draw a skewed distribution and then force the zeros
    row = rng.dirichlet(np.full(states, params.skew))
    zeros = min(int(math.floor(params.zero_fraction * states + rng.random())), states - 1)
    if zeros > 0:
        row[rng.choice(states, size=zeros, replace=False)] = 0.0

    # Fall back to uniform over the survivors if all the mass was removed
    total = row.sum()
    if not np.isfinite(total) or total <= 0.0:
        survivors = np.ones(states, dtype=bool)
        if zeros > 0:
            survivors[rng.choice(states, size=zeros, replace=False)] = False
        row = survivors.astype(np.float64)
        total = row.sum()
    return row / total


def generate_synthetic(params: SyntheticParameters = None, name: str = None) -> NetworkSpec:
    """
    Generates a random network. The same parameters always give the same
    network, and every generated network passes validation.

    :param params:  The generator parameters
    :type params:   SyntheticParameters
    :param name:    The name of the network, derived from the seed if not given
    :type name:     str

    :returns:       The generated network
    :rtype:         NetworkSpec
    """

    params = params or SyntheticParameters()
    params.validate()
    rng = np.random.default_rng(params.seed)
    width = len(str(params.node_count - 1))

    nodes = []
    counts = []
    for index in range(params.node_count):
        states = int(rng.integers(params.min_states, params.max_states + 1))
        counts.append(states)

        # Sample the parents from the window of predecessors
        candidates = np.arange(max(0, index - params.parent_window), index)
        parent_count = int(rng.integers(0, min(params.max_parents, len(candidates)) + 1))
        parents = sorted(int(p) for p in rng.choice(candidates, size=parent_count, replace=False))

        # Draw one conditional distribution per parent configuration
        rows = math.prod(counts[p] for p in parents)
        cpt = np.concatenate([_draw_row(rng, states, params) for _ in range(rows)])

        nodes.append(
            NodeSpec(
                f"X{index:0{width}d}",
                [f"s{s}" for s in range(states)],
                [f"X{p:0{width}d}" for p in parents],
                cpt.tolist(),
            )
        )

    net = NetworkSpec(nodes, name or f"synthetic-{params.seed}")
    printer.info(f"Generated network '{net.name}' with {len(nodes)} nodes.")
    return net
