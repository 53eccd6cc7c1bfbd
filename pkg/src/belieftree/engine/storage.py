#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module saves and loads junction-tree files and accounts for the
storage of the belief tables. A tree file is a JSON document with a header,
the nodes, the cliques with their tables and the edges with their
separator tables. Floats are written in their shortest exact form, so a
saved tree loads back bit for bit.
"""

from __future__ import annotations
from dataclasses import dataclass
from ..approx.approximation import ApproximationReport
from ..compiler.junction import JunctionTree, Edge, TreeStatus, check_junction_property
from ..tables import BeliefTable
from ..utils import JunctionPropertyError, NetworkParseError, helper, printer

TREE_FORMAT: str = "belieftree-tree"
"""Defines the format tag written in the header of every tree file."""

TREE_VERSION: int = 1
"""Defines the version of the tree file format."""


@dataclass(frozen=True)
class StorageSummary:
    """
    The storage needed by the belief tables of a junction tree.
    """

    payload_bytes: int
    """Defines the bytes of the table payloads as stored."""

    structure_bytes: int
    """Defines the bytes describing the table scopes, shapes and representations."""

    dense_bytes: int
    """Defines the payload bytes if every table were stored dense."""

    @property
    def total_bytes(self) -> int:
        """Defines the payload and structure bytes together."""
        return self.payload_bytes + self.structure_bytes


def tree_storage(jt: JunctionTree) -> StorageSummary:
    """
    Returns the storage of all clique and separator tables of a tree.

    :param jt:  The junction tree
    :type jt:   JunctionTree

    :returns:   The storage summary
    :rtype:     StorageSummary
    """

    tables = list(jt.tables) + list(jt.separator_tables)
    return StorageSummary(
        payload_bytes=sum(t.payload_size() for t in tables),
        structure_bytes=sum(t.structure_size() for t in tables),
        dense_bytes=sum(t.dense_size() for t in tables),
    )


def tree_to_document(jt: JunctionTree) -> dict:
    """
    Exports a tree into the tree file document.

    :param jt:  The junction tree
    :type jt:   JunctionTree

    :returns:   The tree document
    :rtype:     dict
    """

    report = jt.approximation
    header = {
        "format": TREE_FORMAT,
        "version": TREE_VERSION,
        "name": jt.name,
        "heuristic": jt.heuristic,
        "start_node": jt.start_node,
        "epsilon": report.epsilon if report is not None else None,
        "method": report.method.value if report is not None else None,
        "e": report.error if report is not None else None,
        "mode": "normalized" if jt.normalized else "unnormalized",
        "status": jt.status.value,
        "mass": jt.total_mass,
        "evidence": jt.has_evidence,
    }
    return {
        "header": header,
        "nodes": [{"id": id, "states": list(s)} for id, s in zip(jt.ids, jt.labels)],
        "cliques": [
            {"nodes": [jt.ids[n] for n in c], "table": t.export(jt.ids)}
            for c, t in zip(jt.cliques, jt.tables)
        ],
        "edges": [
            {"cliques": [e.u, e.v], "separator": t.export(jt.ids)}
            for e, t in zip(jt.edges, jt.separator_tables)
        ],
        "approximation": report.export() if report is not None else None,
    }


def tree_from_document(document: dict, source: str = "<tree>") -> JunctionTree:
    """
    Creates a tree from a tree file document.

    :param document:    The tree document
    :type document:     dict
    :param source:      The name of the document, used in error messages
    :type source:       str

    :returns:           The junction tree
    :rtype:             JunctionTree
    """

    helper.require_fields(
        document, {"header": dict, "nodes": list, "cliques": list, "edges": list}, source
    )
    header = document["header"]
    if header.get("format") != TREE_FORMAT:
        raise NetworkParseError(f"'{source}' is not a junction tree file.")

    try:
        ids = [n["id"] for n in document["nodes"]]
        labels = [n["states"] for n in document["nodes"]]
        index_of = {id: i for i, id in enumerate(ids)}
        cliques = [tuple(sorted(index_of[n] for n in c["nodes"])) for c in document["cliques"]]
        edges = []
        for edge in document["edges"]:
            u, v = edge["cliques"]
            separator = tuple(sorted(set(cliques[u]) & set(cliques[v])))
            edges.append(Edge(int(u), int(v), separator))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise NetworkParseError(f"Invalid tree structure in '{source}': {e}")
    try:
        check_junction_property(cliques, edges)
    except JunctionPropertyError as e:
        raise NetworkParseError(f"Invalid tree structure in '{source}': {e.message}")

    jt = JunctionTree(cliques, edges, [len(s) for s in labels], ids, labels, header.get("name", ""))
    try:
        jt.tables = [BeliefTable.load(c["table"], index_of) for c in document["cliques"]]
        jt.separator_tables = [BeliefTable.load(e["separator"], index_of) for e in document["edges"]]
        jt.status = TreeStatus(header.get("status", TreeStatus.INCONSISTENT.value))
        jt.total_mass = float(header.get("mass", 0.0))
    except (KeyError, TypeError, ValueError) as e:
        raise NetworkParseError(f"Invalid tables or header in '{source}': {e}")
    for clique, table in zip(jt.cliques + [e.separator for e in jt.edges], jt.tables + jt.separator_tables):
        if table.scope != tuple(clique):
            raise NetworkParseError(f"Table scope does not match its clique in '{source}'.")

    jt.heuristic = header.get("heuristic", "")
    jt.start_node = header.get("start_node", 0)
    jt.normalized = header.get("mode", "normalized") == "normalized"
    jt.has_evidence = bool(header.get("evidence", False))
    if document.get("approximation") is not None:
        jt.approximation = ApproximationReport.load(document["approximation"])
    return jt


def save_tree(jt: JunctionTree, path: str) -> int:
    """
    Saves a tree into a tree file.

    :param jt:      The junction tree
    :type jt:       JunctionTree
    :param path:    The path of the tree file
    :type path:     str

    :returns:       The number of bytes written
    :rtype:         int
    """

    size = helper.write_json(path, tree_to_document(jt))
    printer.success(f"Saved junction tree '{jt.name}' to '{path}' ({size} bytes).")
    return size


def load_tree(path: str) -> JunctionTree:
    """
    Loads a tree from a tree file.

    :param path:    The path of the tree file
    :type path:     str

    :returns:       The junction tree
    :rtype:         JunctionTree
    """

    return tree_from_document(helper.read_json(path), source=path)
