#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from __future__ import annotations
from collections import Counter
from dataclasses import dataclass
import pandas as pd
from ..utils import helper
from .junction import JunctionTree


@dataclass(frozen=True)
class TreeStatistics:
    """
    The size statistics of a junction tree.
    """

    clique_count: int
    """Defines the number of cliques."""

    size_histogram: dict
    """Defines the number of cliques of each node count."""

    total_state_space: int
    """Defines the sum over the cliques of their joint state counts."""

    max_clique_state_space: int
    """Defines the largest joint state count of a clique."""

    zero_fraction: float
    """Defines the fraction of exactly-zero entries over all clique tables."""

    heuristic: str = ""
    """Defines the heuristic the tree was compiled with."""

    def export(self) -> dict:
        return {
            "heuristic": self.heuristic,
            "clique_count": self.clique_count,
            "size_histogram": self.format_histogram(),
            "total_state_space": self.total_state_space,
            "max_clique_state_space": self.max_clique_state_space,
            "zero_fraction": self.zero_fraction,
        }

    def format_histogram(self) -> str:
        """
        Returns the histogram as 'size:count' pairs joined by semicolons, in
        increasing size, which can be embedded in a CSV field.

        :returns:   The formatted histogram
        :rtype:     str
        """

        return ";".join(f"{size}:{count}" for size, count in sorted(self.size_histogram.items()))

    def to_record(self) -> str:
        """
        Returns the statistics as a flat key=value text record, one key per line.

        :returns:   The text record
        :rtype:     str
        """

        data = self.export()
        if not self.heuristic:
            del data["heuristic"]
        return "\n".join(f"{key}={value}" for key, value in data.items())

    def __str__(self) -> str:
        return helper.dumps(self.export(), indent=4)


def tree_stats(jt: JunctionTree) -> TreeStatistics:
    """
    Returns the size statistics of a junction tree.

    :param jt:  The junction tree
    :type jt:   JunctionTree

    :returns:   The statistics
    :rtype:     TreeStatistics
    """

    spaces = [jt.get_state_space(k) for k in range(len(jt.cliques))]
    entries = sum(t.size for t in jt.tables)
    zeros = sum(t.zero_count() for t in jt.tables)
    return TreeStatistics(
        clique_count=len(jt.cliques),
        size_histogram=dict(sorted(Counter(len(c) for c in jt.cliques).items())),
        total_state_space=sum(spaces),
        max_clique_state_space=max(spaces, default=0),
        zero_fraction=zeros / entries if entries else 0.0,
        heuristic=jt.heuristic,
    )


def stats_dataframe(statistics: list) -> pd.DataFrame:
    """
    Returns a list of statistics as a data frame with one row per tree.

    :param statistics:  The statistics of each tree
    :type statistics:   list[TreeStatistics]

    :returns:           The statistics table
    :rtype:             pd.DataFrame
    """

    return pd.DataFrame([s.export() for s in statistics])
