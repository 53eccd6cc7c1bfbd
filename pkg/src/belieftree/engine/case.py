#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from dataclasses import dataclass
from ..tables import Finding
from ..utils import NetworkParseError, UnknownNodeError, helper


class Case:
    """
    A case is the set of findings entered together. There is at most one
    finding per node: findings on the same node are intersected.
    """

    findings: dict = None
    """Defines the finding of each node, keyed by node index."""

    def __init__(self, findings=()) -> None:
        """
        Initialises the case, intersecting findings on the same node.

        :param findings:    The findings of the case
        :type findings:     Iterable[Finding]
        """

        self.findings = {}
        for finding in findings:
            self.add(finding)

    def add(self, finding: Finding) -> None:
        """
        Adds a finding to the case. If the node already has a finding, only
        the states allowed by both remain.

        :param finding:     The finding to add
        :type finding:      Finding
        """

        if finding.node in self.findings:
            finding = self.findings[finding.node].intersect(finding)
        self.findings[finding.node] = finding

    @classmethod
    def from_labels(cls, ids, labels, findings) -> Case:
        """
        Creates a case from findings given as node identifiers and state labels.

        :param ids:         The node identifiers in index order
        :type ids:          Sequence[str]
        :param labels:      The state labels of each node in index order
        :type labels:       Sequence[Sequence[str]]
        :param findings:    The (node identifier, state labels) pairs
        :type findings:     Iterable[tuple]

        :returns:           The case
        :rtype:             Case
        """

        ids = list(ids)
        case = cls()
        for id, states in findings:
            if id not in ids:
                raise UnknownNodeError(f"Unknown node '{id}' in the evidence.")
            node = ids.index(id)
            if len(states) == 0:
                raise NetworkParseError(f"The finding on node '{id}' allows no state.")
            allowed = []
            for state in states:
                if state not in labels[node]:
                    raise UnknownNodeError(f"Node '{id}' has no state '{state}'.")
                allowed.append(list(labels[node]).index(state))
            case.add(Finding(node, frozenset(allowed)))
        return case

    @classmethod
    def from_evidence(cls, ids, labels, evidence) -> Case:
        """
        Creates a case from 'node=state' strings, each a single-state finding.

        :param ids:         The node identifiers in index order
        :type ids:          Sequence[str]
        :param labels:      The state labels of each node in index order
        :type labels:       Sequence[Sequence[str]]
        :param evidence:    The 'node=state' strings
        :type evidence:     Iterable[str]

        :returns:           The case
        :rtype:             Case
        """

        pairs = []
        for item in evidence:
            if "=" not in item:
                raise NetworkParseError(f"Evidence '{item}' is not of the form node=state.")
            id, state = item.split("=", 1)
            pairs.append((id.strip(), [state.strip()]))
        return cls.from_labels(ids, labels, pairs)

    @classmethod
    def load(cls, path: str, ids, labels) -> Case:
        """
        Loads a case file of the form {"findings": [{"node": id, "states": [labels]}]}.

        :param path:    The path of the case file
        :type path:     str
        :param ids:     The node identifiers in index order
        :type ids:      Sequence[str]
        :param labels:  The state labels of each node in index order
        :type labels:   Sequence[Sequence[str]]

        :returns:       The case
        :rtype:         Case
        """

        document = helper.read_json(path)
        helper.require_fields(document, {"findings": list}, f"case file '{path}'")
        pairs = []
        for position, finding in enumerate(document["findings"]):
            helper.require_fields(
                finding, {"node": str, "states": list}, f"finding {position} of '{path}'"
            )
            pairs.append((finding["node"], finding["states"]))
        return cls.from_labels(ids, labels, pairs)

    def is_single_state(self) -> bool:
        """
        Returns whether every finding names exactly one state.

        :returns:   A flag whether the case is a conjunction of single-state findings
        :rtype:     bool
        """

        return all(len(f.allowed) == 1 for f in self.findings.values())

    def export(self, ids, labels) -> dict:
        """
        Exports the case into the case file format.

        :param ids:     The node identifiers in index order
        :type ids:      Sequence[str]
        :param labels:  The state labels of each node in index order
        :type labels:   Sequence[Sequence[str]]

        :returns:       The exported case
        :rtype:         dict
        """

        return {
            "findings": [
                {"node": ids[f.node], "states": [labels[f.node][s] for s in sorted(f.allowed)]}
                for f in self
            ]
        }

    def __iter__(self):
        return iter(self.findings[node] for node in sorted(self.findings))

    def __len__(self) -> int:
        return len(self.findings)

    def __repr__(self) -> str:
        return "Case(%s)" % ", ".join(f"{f.node}:{sorted(f.allowed)}" for f in self)


@dataclass(frozen=True)
class PropagationOutcome:
    """
    The outcome of a global propagation.
    """

    mu: float
    """Defines the normalization constant, the probability of the entered evidence."""

    excluded: bool
    """Defines whether the normalization constant is zero."""
