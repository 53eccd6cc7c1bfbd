#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module defines the belief table algebra. A belief table holds the
(possibly unnormalized) joint beliefs over the state space of an ordered
set of nodes, either as a dense array or as a sorted list of the nonzero
entries. Every operation returns a new table and both representations give
bitwise identical results: all sums run sequentially in linear-index order
through the same accumulation kernel, whether or not the zeros are stored.

Tables are linearized row-major over their scope order, with the last node
varying fastest.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, Sequence
import numpy as np
from ..utils import ScopeError, InconsistencyError, NetworkParseError

DENSE: str = "dense"
"""Defines the representation tag of a table storing every entry."""

SPARSE: str = "sparse"
"""Defines the representation tag of a table storing only the nonzero entries."""

SPARSE_DENSITY_CUTOFF: float = 0.5
"""Defines the largest nonzero fraction for which a compressed table is stored sparse."""

WORD_BYTES: int = 8
"""Defines the size of a stored index or value."""


@dataclass(frozen=True)
class Finding:
    """
    A finding on a single node: the subset of its states that are still
    possible. Entering the finding annihilates every other state combination.
    """

    node: int
    """Defines the index of the node that the finding is about."""

    allowed: frozenset
    """Defines the indices of the states that remain possible."""

    def __post_init__(self):
        object.__setattr__(self, "allowed", frozenset(int(s) for s in self.allowed))

    def intersect(self, other: Finding) -> Finding:
        """
        Combines two findings on the same node into the finding that allows
        only the states allowed by both.

        :param other:   The other finding on the same node
        :type other:    Finding

        :returns:       The intersected finding
        :rtype:         Finding
        """

        if other.node != self.node:
            raise ScopeError(
                f"Cannot intersect findings on nodes {self.node} and {other.node}."
            )
        return Finding(self.node, self.allowed & other.allowed)


def strides(shape: Sequence[int]) -> np.ndarray:
    """
    Returns the row-major strides for a shape, with the last axis varying
    fastest. The strides of an empty shape are empty.

    :param shape:   The number of states of each node
    :type shape:    Sequence[int]

    :returns:       The strides of each axis
    :rtype:         np.ndarray
    """

    result = np.ones(len(shape), dtype=np.int64)
    for k in range(len(shape) - 2, -1, -1):
        result[k] = result[k + 1] * shape[k + 1]
    return result


def project_indices(
    linear: np.ndarray,
    scope: Sequence[int],
    shape: Sequence[int],
    target_scope: Sequence[int],
) -> np.ndarray:
    """
    Maps linear indices of a table over the scope onto the linear indices of
    a table over the target scope, which must be a subset of the scope in any
    order.

    :param linear:          The linear indices in the source table
    :type linear:           np.ndarray
    :param scope:           The scope of the source table
    :type scope:            Sequence[int]
    :param shape:           The shape of the source table
    :type shape:            Sequence[int]
    :param target_scope:    The scope of the target table
    :type target_scope:     Sequence[int]

    :returns:               The linear indices in the target table
    :rtype:                 np.ndarray
    """

    source_strides = strides(shape)
    position = {node: k for k, node in enumerate(scope)}
    target_shape = [shape[position[node]] for node in target_scope]
    target_strides = strides(target_shape)

    result = np.zeros(len(linear), dtype=np.int64)
    for node, stride in zip(target_scope, target_strides):
        k = position[node]
        result += ((linear // source_strides[k]) % shape[k]) * stride
    return result


def _accumulate(target: np.ndarray, values: np.ndarray, size: int) -> np.ndarray:
    # bincount adds the weights one after another in input order
    return np.bincount(target, weights=values, minlength=size).astype(np.float64)


class BeliefTable:
    """
    The BeliefTable class holds nonnegative beliefs over the joint state space
    of an ordered scope of nodes. A table is an immutable value: the arrays are
    read-only and every operation returns a new table.
    """

    scope: tuple = ()
    """Defines the ordered node indices of the table."""

    shape: tuple = ()
    """Defines the number of states of each node in the scope."""

    representation: str = DENSE
    """Defines whether the table is stored dense or sparse."""

    def __init__(
        self,
        scope: Sequence[int],
        shape: Sequence[int],
        values: Iterable[float],
        indices: Iterable[int] = None,
    ) -> None:
        """
        Initialises the table. Without indices the values are the dense entries
        in linear order. With indices the table is sparse: the indices must be
        strictly increasing and the values must be nonzero.

        :param scope:       The ordered node indices
        :type scope:        Sequence[int]
        :param shape:       The number of states of each node
        :type shape:        Sequence[int]
        :param values:      The dense entries or the nonzero entries
        :type values:       Iterable[float]
        :param indices:     The linear indices of the nonzero entries, for sparse tables
        :type indices:      Iterable[int]
        """

        self.scope = tuple(int(n) for n in scope)
        self.shape = tuple(int(s) for s in shape)
        if len(self.scope) != len(self.shape):
            raise ScopeError("A table needs exactly one state count per scope node.")
        if len(set(self.scope)) != len(self.scope):
            raise ScopeError(f"Duplicate node in table scope {self.scope}.")
        if any(s < 1 for s in self.shape):
            raise ScopeError(f"Invalid table shape {self.shape}.")
        self.size = int(np.prod(self.shape, dtype=np.int64)) if self.shape else 1

        values = np.array(values, dtype=np.float64).reshape(-1)
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ScopeError("Belief table entries must be finite and nonnegative.")

        if indices is None:
            if len(values) != self.size:
                raise ScopeError(
                    f"A dense table over shape {self.shape} needs {self.size} values, got {len(values)}."
                )
            self.representation = DENSE
            self.__indices = None
        else:
            indices = np.array(indices, dtype=np.int64).reshape(-1)
            if len(indices) != len(values):
                raise ScopeError("A sparse table needs one value per index.")
            if len(indices) > 0 and (
                np.any(np.diff(indices) <= 0) or indices[0] < 0 or indices[-1] >= self.size
            ):
                raise ScopeError("Sparse table indices must be strictly increasing and in range.")
            if np.any(values == 0):
                raise ScopeError("Sparse tables never store zero entries.")
            self.representation = SPARSE
            indices.setflags(write=False)
            self.__indices = indices

        values.setflags(write=False)
        self.__values = values

    @classmethod
    def ones(cls, scope: Sequence[int], shape: Sequence[int]) -> BeliefTable:
        """
        Creates the dense all-ones table over the scope, which is the neutral
        element of the multiplication.

        :param scope:   The ordered node indices
        :type scope:    Sequence[int]
        :param shape:   The number of states of each node
        :type shape:    Sequence[int]

        :returns:       The all-ones table
        :rtype:         BeliefTable
        """

        size = int(np.prod(shape, dtype=np.int64)) if len(shape) > 0 else 1
        return cls(scope, shape, np.ones(size))

    @classmethod
    def scalar(cls, value: float) -> BeliefTable:
        """
        Creates a table with an empty scope holding a single value.

        :param value:   The value of the table
        :type value:    float

        :returns:       The scalar table
        :rtype:         BeliefTable
        """

        return cls((), (), [value])

    @classmethod
    def from_dense(
        cls, scope: Sequence[int], shape: Sequence[int], values: np.ndarray, sparse: bool
    ) -> BeliefTable:
        """
        Creates a table from dense entries, stored in the requested representation.

        :param scope:   The ordered node indices
        :type scope:    Sequence[int]
        :param shape:   The number of states of each node
        :type shape:    Sequence[int]
        :param values:  The dense entries in linear order
        :type values:   np.ndarray
        :param sparse:  Whether to store only the nonzero entries
        :type sparse:   bool

        :returns:       The created table
        :rtype:         BeliefTable
        """

        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if not sparse:
            return cls(scope, shape, values)
        indices = np.flatnonzero(values)
        return cls(scope, shape, values[indices], indices=indices)

    def is_sparse(self) -> bool:
        """
        Returns whether the table only stores its nonzero entries.

        :returns:   A flag whether the table is sparse
        :rtype:     bool
        """

        return self.representation == SPARSE

    def stored_indices(self) -> np.ndarray:
        """
        Returns the linear indices of the stored entries, which is every index
        for a dense table and the nonzero indices for a sparse one.

        :returns:   The stored linear indices
        :rtype:     np.ndarray
        """

        if self.__indices is None:
            return np.arange(self.size, dtype=np.int64)
        return self.__indices

    def stored_values(self) -> np.ndarray:
        """
        Returns the stored entries, matching the stored indices.

        :returns:   The stored values
        :rtype:     np.ndarray
        """

        return self.__values

    def dense_values(self) -> np.ndarray:
        """
        Returns every entry of the table in linear order.

        :returns:   The dense values
        :rtype:     np.ndarray
        """

        if self.__indices is None:
            return self.__values
        values = np.zeros(self.size, dtype=np.float64)
        values[self.__indices] = self.__values
        values.setflags(write=False)
        return values

    def nonzero_count(self) -> int:
        """
        Returns the number of entries that are not exactly zero.

        :returns:   The number of nonzero entries
        :rtype:     int
        """

        return int(np.count_nonzero(self.__values))

    def zero_count(self) -> int:
        """
        Returns the number of entries that are exactly zero.

        :returns:   The number of zero entries
        :rtype:     int
        """

        return self.size - self.nonzero_count()

    def payload(self) -> bytes:
        """
        Returns the binary payload that stores the table: the float64 entries
        for a dense table, or the int64 indices followed by the float64 values
        for a sparse table. Both are little endian.

        :returns:   The payload of the table
        :rtype:     bytes
        """

        if self.__indices is None:
            return self.__values.astype("<f8").tobytes()
        return self.__indices.astype("<i8").tobytes() + self.__values.astype("<f8").tobytes()

    def payload_size(self) -> int:
        """
        Returns the number of bytes of the payload, without building it.

        :returns:   The payload size in bytes
        :rtype:     int
        """

        if self.__indices is None:
            return WORD_BYTES * self.size
        return 2 * WORD_BYTES * len(self.__indices)

    def dense_size(self) -> int:
        """
        Returns the number of bytes the table would need when stored dense.

        :returns:   The dense payload size in bytes
        :rtype:     int
        """

        return WORD_BYTES * self.size

    def structure_size(self) -> int:
        """
        Returns the number of bytes for the structural description of the table:
        one word per scope node, one per state count and one representation tag.

        :returns:   The structure size in bytes
        :rtype:     int
        """

        return WORD_BYTES * (2 * len(self.scope) + 1)

    def export(self, names: Sequence[str] = None) -> dict:
        """
        Exports the table into a dictionary. Sparse values are a flat list of
        alternating index and value.

        :param names:   The node identifiers used in place of node indices, if given
        :type names:    Sequence[str]

        :returns:       The exported table
        :rtype:         dict
        """

        scope = [names[n] for n in self.scope] if names is not None else list(self.scope)
        if self.__indices is None:
            values = [float(v) for v in self.__values]
        else:
            values = []
            for index, value in zip(self.__indices.tolist(), self.__values.tolist()):
                values.extend((int(index), float(value)))
        return {
            "scope": scope,
            "shape": list(self.shape),
            "repr": self.representation,
            "values": values,
        }

    @classmethod
    def load(cls, data: dict, index_of: dict = None) -> BeliefTable:
        """
        Creates a table from an exported dictionary.

        :param data:        The exported table
        :type data:         dict
        :param index_of:    The mapping from node identifiers to node indices, if the scope holds identifiers
        :type index_of:     dict

        :returns:           The loaded table
        :rtype:             BeliefTable
        """

        try:
            scope = [index_of[n] for n in data["scope"]] if index_of is not None else data["scope"]
            shape = data["shape"]
            values = list(data["values"])
            if data["repr"] == DENSE:
                return cls(scope, shape, values)
            if data["repr"] == SPARSE:
                return cls(scope, shape, values[1::2], indices=values[0::2])
        except ScopeError as e:
            raise NetworkParseError(f"Invalid belief table: {e.message}")
        except (KeyError, TypeError, ValueError) as e:
            raise NetworkParseError(f"Invalid belief table: {e}")
        raise NetworkParseError(f"Unknown table representation '{data['repr']}'.")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BeliefTable):
            return NotImplemented
        return (
            self.scope == other.scope
            and self.shape == other.shape
            and np.array_equal(self.dense_values(), other.dense_values())
        )

    def __repr__(self) -> str:
        return "BeliefTable(scope=%s, shape=%s, %s, %d/%d nonzero)" % (
            self.scope,
            self.shape,
            self.representation,
            self.nonzero_count(),
            self.size,
        )


def _rebuild(t: BeliefTable, indices: np.ndarray, values: np.ndarray) -> BeliefTable:
    # Builds a table in t's representation from stored indices and values
    if t.is_sparse():
        keep = values != 0
        return BeliefTable(t.scope, t.shape, values[keep], indices=indices[keep])
    return BeliefTable(t.scope, t.shape, values)


def table_sum(t: BeliefTable) -> float:
    """
    Returns the sum of all entries, accumulated sequentially in linear-index order.

    :param t:   The table to sum
    :type t:    BeliefTable

    :returns:   The total belief of the table
    :rtype:     float
    """

    values = t.stored_values()
    return float(_accumulate(np.zeros(len(values), dtype=np.int64), values, 1)[0])


def marginalize(t: BeliefTable, keep: Iterable[int]) -> BeliefTable:
    """
    Sums out every node of the table that is not kept. The result scope holds
    the kept nodes in the order of the table's scope, and keeps the table's
    representation.

    :param t:       The table to marginalize
    :type t:        BeliefTable
    :param keep:    The nodes to keep, a subset of the table's scope
    :type keep:     Iterable[int]

    :returns:       The marginal table
    :rtype:         BeliefTable
    """

    keep = set(int(n) for n in keep)
    if not keep.issubset(t.scope):
        raise ScopeError(f"Cannot marginalize {t.scope} onto {sorted(keep)}.")
    scope = tuple(n for n in t.scope if n in keep)
    shape = tuple(s for n, s in zip(t.scope, t.shape) if n in keep)
    if scope == t.scope:
        return t

    size = int(np.prod(shape, dtype=np.int64)) if shape else 1
    target = project_indices(t.stored_indices(), t.scope, t.shape, scope)
    values = _accumulate(target, t.stored_values(), size)
    return BeliefTable.from_dense(scope, shape, values, sparse=t.is_sparse())


def multiply(t: BeliefTable, u: BeliefTable) -> BeliefTable:
    """
    Multiplies every entry of the table by the entry of the second table with
    matching states. The second table's scope must be a subset of the first,
    and is broadcast over the remaining nodes.

    :param t:   The table to multiply
    :type t:    BeliefTable
    :param u:   The table to multiply by
    :type u:    BeliefTable

    :returns:   The product over t's scope
    :rtype:     BeliefTable
    """

    if not set(u.scope).issubset(t.scope):
        raise ScopeError(f"Cannot multiply a table over {t.scope} by one over {u.scope}.")
    for node, states in zip(u.scope, u.shape):
        if t.shape[t.scope.index(node)] != states:
            raise ScopeError(f"Node {node} has different state counts in the two tables.")

    indices = t.stored_indices()
    factors = u.dense_values()[project_indices(indices, t.scope, t.shape, u.scope)]
    return _rebuild(t, indices, t.stored_values() * factors)


def divide(num: BeliefTable, den: BeliefTable) -> BeliefTable:
    """
    Divides two tables with identical scopes entry by entry, with the
    convention 0/0 = 0. A nonzero entry over a zero entry means that the
    propagation state is corrupted.

    :param num:     The numerator table
    :type num:      BeliefTable
    :param den:     The denominator table
    :type den:      BeliefTable

    :returns:       The ratio table, in the numerator's representation
    :rtype:         BeliefTable
    """

    if num.scope != den.scope or num.shape != den.shape:
        raise ScopeError(f"Cannot divide a table over {num.scope} by one over {den.scope}.")

    indices = num.stored_indices()
    numerator = num.stored_values()
    denominator = den.dense_values()[indices]
    if np.any((denominator == 0) & (numerator != 0)):
        raise InconsistencyError(
            f"Division of a nonzero belief by zero in a table over {num.scope}."
        )
    ratio = np.divide(
        numerator, denominator, out=np.zeros(len(indices)), where=denominator != 0
    )
    return _rebuild(num, indices, ratio)


def enter_finding(t: BeliefTable, finding: Finding) -> BeliefTable:
    """
    Enters a finding into the table by annihilating every entry whose state of
    the finding's node is not allowed.

    :param t:           The table to enter the finding into
    :type t:            BeliefTable
    :param finding:     The finding to enter
    :type finding:      Finding

    :returns:           The table with the finding entered
    :rtype:             BeliefTable
    """

    if finding.node not in t.scope:
        raise ScopeError(f"Node {finding.node} is not in the table scope {t.scope}.")
    k = t.scope.index(finding.node)
    if any(s < 0 or s >= t.shape[k] for s in finding.allowed):
        raise ScopeError(f"Finding on node {finding.node} names an unknown state.")

    indices = t.stored_indices()
    states = (indices // strides(t.shape)[k]) % t.shape[k]
    allowed = np.isin(states, np.fromiter(finding.allowed, dtype=np.int64, count=len(finding.allowed)))
    return _rebuild(t, indices, np.where(allowed, t.stored_values(), 0.0))


def compress(t: BeliefTable) -> BeliefTable:
    """
    Stores the table sparse when at most half of its entries are nonzero, and
    dense otherwise. The values are unchanged.

    :param t:   The table to compress
    :type t:    BeliefTable

    :returns:   The table in the cheaper representation
    :rtype:     BeliefTable
    """

    sparse = t.nonzero_count() <= SPARSE_DENSITY_CUTOFF * t.size
    if sparse == t.is_sparse():
        return t
    return BeliefTable.from_dense(t.scope, t.shape, t.dense_values(), sparse=sparse)


def decompress(t: BeliefTable) -> BeliefTable:
    """
    Returns the table stored dense.

    :param t:   The table to decompress
    :type t:    BeliefTable

    :returns:   The dense table
    :rtype:     BeliefTable
    """

    if not t.is_sparse():
        return t
    return BeliefTable(t.scope, t.shape, t.dense_values())


def annihilate_below(t: BeliefTable, delta: float) -> tuple:
    """
    Sets every entry strictly less than the threshold to zero. Entries with
    equal values are therefore either all removed or all kept.

    :param t:       The table to approximate
    :type t:        BeliefTable
    :param delta:   The threshold, at least zero
    :type delta:    float

    :returns:       The approximated table and the removed mass
    :rtype:         tuple[BeliefTable, float]
    """

    if delta < 0:
        raise ScopeError("The annihilation threshold must be nonnegative.")
    values = t.stored_values()
    below = values < delta
    removed = values[below]
    mass = float(_accumulate(np.zeros(len(removed), dtype=np.int64), removed, 1)[0])
    return _rebuild(t, t.stored_indices(), np.where(below, 0.0, values)), mass


def annihilate_indices(t: BeliefTable, indices: np.ndarray) -> tuple:
    """
    Sets the entries at the given linear indices to zero.

    :param t:       The table to approximate
    :type t:        BeliefTable
    :param indices: The linear indices of the entries to annihilate
    :type indices:  np.ndarray

    :returns:       The approximated table and the removed mass
    :rtype:         tuple[BeliefTable, float]
    """

    stored = t.stored_indices()
    values = t.stored_values()
    hit = np.isin(stored, np.asarray(indices, dtype=np.int64))
    removed = values[hit]
    mass = float(_accumulate(np.zeros(len(removed), dtype=np.int64), removed, 1)[0])
    return _rebuild(t, stored, np.where(hit, 0.0, values)), mass


def scale(t: BeliefTable, factor: float) -> BeliefTable:
    """
    Multiplies every entry by a nonnegative constant.

    :param t:       The table to scale
    :type t:        BeliefTable
    :param factor:  The constant factor
    :type factor:   float

    :returns:       The scaled table
    :rtype:         BeliefTable
    """

    return _rebuild(t, t.stored_indices(), t.stored_values() * factor)
