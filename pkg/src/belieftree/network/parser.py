#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module reads and writes network files. A network file is a JSON
document with a name and a list of node objects; probabilities are kept
exactly as written and never renormalized.
"""

from __future__ import annotations
import os
from ..utils import NetworkParseError, helper, printer
from .spec import NodeSpec, NetworkSpec

NODE_FIELDS: dict = {"id": str, "states": list, "parents": list, "cpt": list}
"""Defines the fields required on every node object, with their types."""


def parse_network(text: str, source: str = "<string>") -> NetworkSpec:
    """
    Parses the content of a network file into a network. Node order is the
    declaration order and the probabilities are preserved exactly.

    :param text:    The content of the network file
    :type text:     str
    :param source:  The name of the document, used in error messages
    :type source:   str

    :returns:       The parsed network
    :rtype:         NetworkSpec
    """

    document = helper.loads(text, source=source)
    helper.require_fields(document, {"name": str, "nodes": list}, f"network '{source}'")

    # Parse each of the nodes in order
    nodes = []
    seen = set()
    for position, data in enumerate(document["nodes"]):
        helper.require_fields(data, NODE_FIELDS, f"node {position} of '{source}'")
        id = data["id"]
        if id in seen:
            raise NetworkParseError(f"Duplicate node id '{id}' in '{source}'.")
        seen.add(id)

        # Check the element types of the lists
        if not all(isinstance(s, str) for s in data["states"]):
            raise NetworkParseError(f"States of node '{id}' must be strings.")
        if not all(isinstance(p, str) for p in data["parents"]):
            raise NetworkParseError(f"Parents of node '{id}' must be node ids.")
        if not all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in data["cpt"]
        ):
            raise NetworkParseError(f"CPT of node '{id}' must only contain numbers.")

        nodes.append(NodeSpec(id, data["states"], data["parents"], data["cpt"]))

    # Check that every parent has been declared
    for node in nodes:
        for parent in node.parents:
            if parent not in seen:
                raise NetworkParseError(
                    f"Unknown parent '{parent}' of node '{node.id}' in '{source}'."
                )

    printer.log(f"Parsed network '{document['name']}' with {len(nodes)} nodes.")
    return NetworkSpec(nodes, document["name"])


def serialize_network(net: NetworkSpec, indent: int = None) -> str:
    """
    Serializes the network into the content of a network file. Parsing the
    result reproduces the network exactly.

    :param net:     The network to serialize
    :type net:      NetworkSpec
    :param indent:  The optional indentation of the document
    :type indent:   int

    :returns:       The content of the network file
    :rtype:         str
    """

    return helper.dumps(net.export(), indent=indent)


def load_network(path: str) -> NetworkSpec:
    """
    Loads a network from a network file.

    :param path:    The path of the network file
    :type path:     str

    :returns:       The parsed network
    :rtype:         NetworkSpec
    """

    # Check if the path is not valid and throw exception
    if not path or not os.path.exists(path):
        raise NetworkParseError(f"Invalid path '{path}' provided to load a network.")
    with open(path, "r", encoding="utf-8") as f:
        return parse_network(f.read(), source=path)


def save_network(net: NetworkSpec, path: str) -> None:
    """
    Saves a network into a network file.

    :param net:     The network to save
    :type net:      NetworkSpec
    :param path:    The path of the network file
    :type path:     str
    """

    helper.write_json(path, net.export(), indent=2)
    printer.success(f"Saved network '{net.name}' to '{path}'.")
