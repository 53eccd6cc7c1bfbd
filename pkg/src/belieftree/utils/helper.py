#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module converts numpy values to plain JSON data and reads and writes
the JSON documents that hold networks, cases and junction trees. Floats
are written in the shortest form that reads back to the same 64-bit value.
"""

import json
import os
import numpy as np
from .exception import NetworkParseError


def serialize(value: any) -> any:
    """
    Converts a value into plain JSON data. Numpy arrays become lists, numpy
    scalars become Python scalars, and containers are converted item by item.

    :param value:   The value to convert
    :type value:    any

    :returns:       The plain JSON value
    :rtype:         any
    """

    # Arrays
    if isinstance(value, np.ndarray):
        return [serialize(v) for v in value.tolist()]

    # Scalars
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)

    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}

    # Report objects
    if hasattr(value, "export"):
        return serialize(value.export())

    return value


def deserialize(value: any) -> any:
    """
    Converts plain JSON data back into numpy values: a list of numbers
    becomes a float64 array and dictionaries are converted value by value. Lists of other values are returned as is.

    :param value:   The JSON value
    :type value:    any

    :returns:       The value with numeric lists as arrays
    :rtype:         any
    """

    if isinstance(value, list):
        if len(value) > 0 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        ):
            return np.array(value, dtype=np.float64)
        return value

    if isinstance(value, dict):
        return {key: deserialize(val) for key, val in value.items()}

    return value


def dumps(data: any, indent: int = None) -> str:
    """
    Converts the data into a JSON string. The float representation used by
    the json module is the shortest one that reads back exactly, which is
    never more than 17 significant digits.

    :param data:    The data to convert
    :type data:     any
    :param indent:  The optional indentation of the document
    :type indent:   int

    :returns:       The JSON document
    :rtype:         str
    """

    return json.dumps(serialize(data), indent=indent, allow_nan=False)


def loads(text: str, source: str = "<string>") -> any:
    """
    Parses a JSON document. Syntax errors are reported as a
    NetworkParseError with the position of the offending character.

    :param text:    The JSON text to parse
    :type text:     str
    :param source:  The name of the document, used in error messages
    :type source:   str

    :returns:       The parsed document
    :rtype:         any
    """

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(
            f"Syntax error in '{source}': {e.msg}", line=e.lineno, column=e.colno
        )


def read_json(path: str) -> any:
    """
    Reads and parses the JSON document at the path. Missing files are
    reported as a NetworkParseError.

    :param path:    The path of the document
    :type path:     str

    :returns:       The parsed document
    :rtype:         any
    """

    if not path or not os.path.exists(path):
        raise NetworkParseError(f"Invalid path '{path}' provided to read a document.")
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read(), source=path)


def write_json(path: str, data: any, indent: int = None) -> int:
    """
    Writes the data as a JSON document to the path.

    :param path:    The path of the document
    :type path:     str
    :param data:    The data to write
    :type data:     any
    :param indent:  The optional indentation of the document
    :type indent:   int

    :returns:       The number of bytes written
    :rtype:         int
    """

    content = dumps(data, indent=indent).encode("utf-8")
    with open(path, "wb") as f:
        f.write(content)
    return len(content)


def require_fields(document: dict, fields: dict, context: str) -> None:
    """
    Ensures that the dictionary holds the fields with the expected types.

    :param document:    The document to check
    :type document:     dict
    :param fields:      The field names mapped to the accepted type or tuple of types
    :type fields:       dict
    :param context:     A description of the document for the error messages
    :type context:      str
    """

    if not isinstance(document, dict):
        raise NetworkParseError(f"Expected an object for {context}.")
    for name, kind in fields.items():
        if name not in document:
            raise NetworkParseError(f"Missing field '{name}' in {context}.")
        if not isinstance(document[name], kind) or isinstance(document[name], bool):
            raise NetworkParseError(f"Field '{name}' in {context} has the wrong type.")
