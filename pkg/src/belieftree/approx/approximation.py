#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module runs the approximation and compression of a consistent junction
tree. Small entries of every clique table are annihilated, the tree is made
consistent again without normalizing so the removed mass can be read off,
and every table is finally compressed. Alongside, the removed mass is
recorded for every single-state finding so that posterior error bounds can
be given for any later case.
"""

from __future__ import annotations
from dataclasses import dataclass, asdict
from enum import Enum
import math
import numpy as np
import pandas as pd
from ..compiler.junction import JunctionTree, TreeStatus
from ..engine import propagation
from ..tables import annihilate_below, annihilate_indices, compress, scale
from ..utils import ApproximationError, NetworkParseError, helper, printer
from .threshold import select_threshold_halving, select_threshold_sort


class ApproximationMethod(str, Enum):
    """
    The methods for selecting the entries to annihilate.
    """

    HALVING = "halving"
    """Halve a threshold until the mass below it is small enough."""

    SORT = "sort"
    """Remove the smallest equal-value groups while the mass stays small enough."""


@dataclass(frozen=True)
class ApproximationConfig:
    """
    The configuration of an approximation.
    """

    epsilon: float = 0.0
    """Defines the fraction of each clique table's mass that may be removed."""

    method: ApproximationMethod = ApproximationMethod.HALVING
    """Defines how the entries to annihilate are selected."""

    def __post_init__(self):
        object.__setattr__(self, "method", ApproximationMethod(self.method))
        if not (0.0 <= self.epsilon < 1.0):
            raise ApproximationError(f"Epsilon must be in [0, 1), got {self.epsilon!r}.")


@dataclass(frozen=True)
class CliqueApproximation:
    """
    The annihilation applied to a single clique table.
    """

    clique: int
    """Defines the clique index."""

    delta: float
    """Defines the threshold; entries strictly below it were annihilated."""

    removed_mass: float
    """Defines the exact sum of the annihilated entries."""

    table_mass: float
    """Defines the exact sum of the table before annihilation."""

    removed_entries: int
    """Defines the number of positive entries annihilated."""


class ApproximationReport:
    """
    The ApproximationReport class holds the outcome of an approximation: the
    annihilation of each clique, the global error e (the prior probability of
    the annihilated joint states) and, for every node and state, the prior
    probability of that state together with an annihilated joint state.
    """

    epsilon: float = 0.0
    """Defines the fraction of each table's mass that was allowed to be removed."""

    method: ApproximationMethod = ApproximationMethod.HALVING
    """Defines the selection method used."""

    cliques: list = None
    """Defines the per-clique annihilation records."""

    error: float = 0.0
    """Defines the global error e, one minus the mass surviving the annihilation."""

    ids: tuple = ()
    """Defines the node identifiers in index order."""

    labels: tuple = ()
    """Defines the state labels of each node in index order."""

    finding_errors: list = None
    """Defines, per node, the array of P(f and not A) for each of its states."""

    def __init__(
        self,
        config: ApproximationConfig,
        cliques: list,
        error: float,
        ids,
        labels,
        finding_errors: list,
    ) -> None:
        self.epsilon = config.epsilon
        self.method = config.method
        self.cliques = list(cliques)
        self.error = error
        self.ids = tuple(ids)
        self.labels = tuple(tuple(l) for l in labels)
        self.finding_errors = [np.asarray(f, dtype=np.float64) for f in finding_errors]

    def get_finding_error(self, node: int, state: int) -> float:
        """
        Returns the prior probability that the node is in the state and the
        joint state was annihilated.

        :param node:    The node index
        :type node:     int
        :param state:   The state index
        :type state:    int

        :returns:       The finding error
        :rtype:         float
        """

        return float(self.finding_errors[node][state])

    def get_removed_mass(self) -> float:
        """
        Returns the total mass removed over all clique tables, before propagation.

        :returns:   The sum of the local removed masses
        :rtype:     float
        """

        return math.fsum(c.removed_mass for c in self.cliques)

    def export(self) -> dict:
        """
        Exports the report into a dictionary.

        :returns:   The exported report
        :rtype:     dict
        """

        return {
            "epsilon": self.epsilon,
            "method": self.method.value,
            "e": self.error,
            "cliques": [asdict(c) for c in self.cliques],
            "nodes": [{"id": id, "states": list(s)} for id, s in zip(self.ids, self.labels)],
            "finding_errors": helper.serialize(self.finding_errors),
        }

    @classmethod
    def load(cls, data: dict) -> ApproximationReport:
        """
        Creates a report from an exported dictionary.

        :param data:    The exported report
        :type data:     dict

        :returns:       The report
        :rtype:         ApproximationReport
        """

        try:
            return cls(
                ApproximationConfig(data["epsilon"], data["method"]),
                [CliqueApproximation(**c) for c in data["cliques"]],
                float(data["e"]),
                [n["id"] for n in data["nodes"]],
                [n["states"] for n in data["nodes"]],
                [helper.deserialize(f) for f in data["finding_errors"]],
            )
        except ApproximationError as e:
            raise NetworkParseError(f"Invalid approximation report: {e.message}")
        except (KeyError, TypeError, ValueError) as e:
            raise NetworkParseError(f"Invalid approximation report: {e}")

    def save(self, path: str) -> None:
        """
        Saves the report as a JSON document.

        :param path:    The path of the document
        :type path:     str
        """

        helper.write_json(path, self.export(), indent=2)

    def to_dataframe(self) -> pd.DataFrame:
        """
        Returns the finding error table with the columns node_id, state_label
        and p_f_and_not_A.

        :returns:   The finding error table
        :rtype:     pd.DataFrame
        """

        rows = [
            (id, label, float(value))
            for id, labels, errors in zip(self.ids, self.labels, self.finding_errors)
            for label, value in zip(labels, errors)
        ]
        return pd.DataFrame(rows, columns=["node_id", "state_label", "p_f_and_not_A"])

    def cliques_dataframe(self) -> pd.DataFrame:
        """
        Returns the per-clique annihilation records as a data frame.

        :returns:   The clique table
        :rtype:     pd.DataFrame
        """

        columns = ["clique", "delta", "removed_mass", "table_mass", "removed_entries"]
        return pd.DataFrame([asdict(c) for c in self.cliques], columns=columns)

    def save_finding_errors(self, path: str) -> None:
        """
        Writes the finding error table as CSV.

        :param path:    The path of the CSV file
        :type path:     str
        """

        self.to_dataframe().to_csv(path, index=False, float_format="%.17g")

    def __str__(self) -> str:
        return helper.dumps(self.export(), indent=4)


def _annihilate(jt: JunctionTree, clique: int, config: ApproximationConfig) -> CliqueApproximation:
    table = jt.tables[clique]
    values = table.stored_values()
    before = math.fsum(values.tolist())

    # Select the entries and remember which ones go
    if config.method == ApproximationMethod.HALVING:
        delta = select_threshold_halving(table, config.epsilon)
        hit = values < delta
        result, _ = annihilate_below(table, delta)
    else:
        indices = select_threshold_sort(table, config.epsilon)
        hit = np.isin(table.stored_indices(), indices)
        result, _ = annihilate_indices(table, indices)
        survivors = values[~hit & (values > 0)]
        delta = float(survivors.min()) if len(survivors) else 0.0

    removed = values[hit]
    jt.tables[clique] = result
    return CliqueApproximation(
        clique=clique,
        delta=float(delta),
        removed_mass=math.fsum(removed.tolist()),
        table_mass=before,
        removed_entries=int(np.count_nonzero(removed)),
    )


def approximate(jt: JunctionTree, config: ApproximationConfig) -> tuple:
    """
    Approximates and compresses a consistent, normalized, evidence-free tree.
    The given tree is left untouched.

    The prior of every node is recorded first. Each clique table then has
    its small entries annihilated, removing at most epsilon of its mass.
    An unnormalized propagation gives the surviving mass, so the global
    error is one minus it, and the surviving marginals give the finding
    errors as the prior minus the surviving part. Finally the tables are
    normalized and compressed.

    :param jt:      The tree to approximate
    :type jt:       JunctionTree
    :param config:  The approximation configuration
    :type config:   ApproximationConfig

    :returns:       The approximated tree and the report
    :rtype:         tuple[JunctionTree, ApproximationReport]
    """

    if jt.has_evidence:
        raise ApproximationError("Only a tree without evidence can be approximated.")
    if jt.status != TreeStatus.CONSISTENT or not jt.normalized or jt.total_mass != 1.0:
        raise ApproximationError("Only a consistent, normalized tree can be approximated.")

    tree = jt.copy()
    priors = [propagation.unnormalized_marginal(tree, n) for n in range(tree.node_count)]

    # Annihilate the small entries of every clique
    records = [_annihilate(tree, k, config) for k in range(len(tree.cliques))]

    if all(r.removed_entries == 0 for r in records):
        error = 0.0
        finding_errors = [np.zeros(len(p)) for p in priors]
    else:
        # Make the tree consistent again, keeping the surviving mass
        outcome = propagation.global_propagate(tree, root=0, normalize=False)
        error = min(1.0, max(0.0, 1.0 - outcome.mu))
        finding_errors = [
            np.maximum(0.0, prior - propagation.unnormalized_marginal(tree, n))
            for n, prior in enumerate(priors)
        ]
        if not outcome.excluded:
            factor = 1.0 / outcome.mu
            tree.tables = [scale(t, factor) for t in tree.tables]
            tree.separator_tables = [scale(t, factor) for t in tree.separator_tables]
            tree.total_mass = 1.0
        tree.normalized = True

    # Compress every table
    tree.tables = [compress(t) for t in tree.tables]
    tree.separator_tables = [compress(t) for t in tree.separator_tables]

    report = ApproximationReport(config, records, error, tree.ids, tree.labels, finding_errors)
    tree.approximation = report
    printer.info(
        f"Approximated '{tree.name}' with epsilon={config.epsilon!r} ({config.method.value}): "
        f"e={error!r}, {sum(r.removed_entries for r in records)} entries annihilated."
    )
    return tree, report
