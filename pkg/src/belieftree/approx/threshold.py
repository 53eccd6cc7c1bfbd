#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module selects which entries of a belief table to annihilate so that
at most a fraction epsilon of the table's mass is removed. All mass
comparisons use exactly rounded sums, so the bound is never broken by
summation order.
"""

from __future__ import annotations
import math
import numpy as np
from ..tables import BeliefTable


def _exact_sum(values: np.ndarray) -> float:
    return math.fsum(values.tolist())


def select_threshold_halving(t: BeliefTable, epsilon: float) -> float:
    """
    Selects a threshold by halving: starting from epsilon times the table
    mass, the threshold is halved until the entries below it sum to at most
    epsilon times the table mass. Zero is returned when the halving runs
    out of positive values, which removes nothing.

    :param t:           The table to approximate
    :type t:            BeliefTable
    :param epsilon:     The fraction of the table mass that may be removed
    :type epsilon:      float

    :returns:           The threshold; entries strictly below it are annihilated
    :rtype:             float
    """

    values = t.stored_values()
    limit = epsilon * _exact_sum(values)
    delta = limit
    while delta > 0.0:
        if _exact_sum(values[values < delta]) <= limit:
            return delta
        delta /= 2.0
    return 0.0


def select_threshold_sort(t: BeliefTable, epsilon: float) -> np.ndarray:
    """
    Selects entries by sorting: the smallest values are removed first, each
    group of equal values all at once, for as long as the removed mass stays
    within epsilon times the table mass.

    :param t:           The table to approximate
    :type t:            BeliefTable
    :param epsilon:     The fraction of the table mass that may be removed
    :type epsilon:      float

    :returns:           The sorted linear indices of the entries to annihilate
    :rtype:             np.ndarray
    """

    values = t.stored_values()
    indices = t.stored_indices()
    limit = epsilon * _exact_sum(values)
    positive = values > 0
    order = np.argsort(values[positive], kind="stable")
    ranked = values[positive][order]
    if len(ranked) == 0 or limit <= 0.0:
        return np.zeros(0, dtype=np.int64)

    # Candidate cut points are the ends of the equal-value groups
    _, starts = np.unique(ranked, return_index=True)
    ends = np.append(starts[1:], len(ranked))

    # Removed mass grows with the number of groups, so search for the last cut
    low, high = 0, len(ends)
    while low < high:
        middle = (low + high + 1) // 2
        if _exact_sum(ranked[: ends[middle - 1]]) <= limit:
            low = middle
        else:
            high = middle - 1
    if low == 0:
        return np.zeros(0, dtype=np.int64)
    return np.sort(indices[positive][order][: ends[low - 1]])
