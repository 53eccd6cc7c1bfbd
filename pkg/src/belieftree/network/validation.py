#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from dataclasses import dataclass, field, asdict
import math
import networkx as nx
import pandas as pd
from ..utils import NetworkValidationError, helper, printer
from .spec import NetworkSpec

ROW_SUM_TOLERANCE: float = 1e-9
"""Defines the allowed deviation of a conditional distribution's sum from one."""


@dataclass(frozen=True)
class Violation:
    """
    A single violation of the network invariants.
    """

    kind: str
    """Defines the kind of violation: 'empty', 'cycle', 'states', 'unknown-parent', 'cpt-length', 'row-sum' or 'range'."""

    node: str
    """Defines the identifier of the offending node."""

    message: str
    """Defines the readable description of the violation."""

    row: int = None
    """Defines the parent configuration index of a row-sum violation."""

    cycle: tuple = None
    """Defines the node identifiers along a directed cycle, first node repeated at the end."""


@dataclass
class ValidationReport:
    """
    The ValidationReport class lists every violation found in a network,
    together with the parameter statistics of its conditional probability
    tables. An empty violation list means that the network is valid.
    """

    violations: list = field(default_factory=list)
    """Defines the violations found, in node order."""

    parameter_count: int = 0
    """Defines the total number of conditional probability entries."""

    zero_count: int = 0
    """Defines the number of conditional probability entries that are exactly zero."""

    @property
    def is_valid(self) -> bool:
        """Defines whether the network has no violations."""
        return len(self.violations) == 0

    @property
    def zero_fraction(self) -> float:
        """Defines the fraction of conditional probability entries that are exactly zero."""
        return self.zero_count / self.parameter_count if self.parameter_count else 0.0

    def export(self) -> dict:
        """
        Exports the report into a dictionary.

        :returns:   The exported report
        :rtype:     dict
        """

        return {
            "valid": self.is_valid,
            "parameter_count": self.parameter_count,
            "zero_count": self.zero_count,
            "zero_fraction": self.zero_fraction,
            "violations": [asdict(v) for v in self.violations],
        }

    def to_dataframe(self) -> pd.DataFrame:
        """
        Returns the violations as a data frame with one row per violation.

        :returns:   The violation table
        :rtype:     pd.DataFrame
        """

        columns = ["kind", "node", "message", "row", "cycle"]
        return pd.DataFrame([asdict(v) for v in self.violations], columns=columns)

    def __str__(self) -> str:
        return helper.dumps(self.export(), indent=4)


def validate_network(net: NetworkSpec) -> ValidationReport:
    """
    Checks a network against its invariants: distinct state labels, the CPT
    length, the entry range, row sums and acyclicity. Violations are returned
    as data, never raised.

    :param net:     The network to validate
    :type net:      NetworkSpec

    :returns:       The validation report
    :rtype:         ValidationReport
    """

    report = ValidationReport()
    counts = net.state_counts
    if len(net) == 0:
        report.violations.append(Violation("empty", "", f"Network '{net.name}' has no nodes."))
    for index, node in enumerate(net.nodes):
        report.parameter_count += len(node.cpt)
        report.zero_count += sum(1 for p in node.cpt if p == 0)

        # Check the state labels
        if len(node.states) < 2 or len(set(node.states)) != len(node.states):
            report.violations.append(
                Violation("states", node.id, f"Node '{node.id}' needs at least two distinct states.")
            )

        # Parents must be declared before the table can be sized
        missing = [p for p in node.parents if p not in net.index_of]
        for parent in missing:
            report.violations.append(
                Violation(
                    "unknown-parent",
                    node.id,
                    f"Node '{node.id}' has an undeclared parent '{parent}'.",
                )
            )
        if missing:
            continue

        # Check the table length before looking at the rows
        expected = math.prod(counts[net.index_of[p]] for p in node.parents) * len(node.states)
        if len(node.cpt) != expected:
            report.violations.append(
                Violation(
                    "cpt-length",
                    node.id,
                    f"CPT of node '{node.id}' has {len(node.cpt)} entries, expected {expected}.",
                )
            )
            continue

        # Check the entry range
        if any(not (0.0 <= p <= 1.0) for p in node.cpt):
            report.violations.append(
                Violation("range", node.id, f"CPT of node '{node.id}' has entries outside [0, 1].")
            )

        # Check each conditional distribution
        width = len(node.states)
        for row in range(len(node.cpt) // width):
            total = math.fsum(node.cpt[row * width : (row + 1) * width])
            if abs(total - 1.0) > ROW_SUM_TOLERANCE:
                report.violations.append(
                    Violation(
                        "row-sum",
                        node.id,
                        f"Row {row} of the CPT of node '{node.id}' sums to {total!r}.",
                        row=row,
                    )
                )

    # Check for a directed cycle
    graph = nx.DiGraph()
    graph.add_nodes_from(net.ids)
    for node in net.nodes:
        graph.add_edges_from((parent, node.id) for parent in node.parents if parent in net.index_of)
    try:
        edges = nx.find_cycle(graph, orientation="original")
        cycle = tuple(e[0] for e in edges) + (edges[0][0],)
        report.violations.append(
            Violation(
                "cycle",
                cycle[0],
                "Directed cycle " + " -> ".join(cycle) + ".",
                cycle=cycle,
            )
        )
    except nx.NetworkXNoCycle:
        pass

    printer.log(
        f"Validated network '{net.name}': {len(report.violations)} violations, "
        f"{report.parameter_count} parameters, {report.zero_count} zeros."
    )
    return report


def require_valid(net: NetworkSpec) -> ValidationReport:
    """
    Validates a network and raises a NetworkValidationError listing the
    violations if it is not valid.

    :param net:     The network to validate
    :type net:      NetworkSpec

    :returns:       The validation report of the valid network
    :rtype:         ValidationReport
    """

    report = validate_network(net)
    if not report.is_valid:
        lines = "\n".join(f"  - {v.message}" for v in report.violations)
        raise NetworkValidationError(f"Network '{net.name}' is invalid:\n{lines}", report)
    return report
