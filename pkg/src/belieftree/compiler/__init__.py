from .graph import UndirectedGraph, moralize
from .triangulation import (
    Heuristic,
    TriangulationResult,
    triangulate,
    maximum_cardinality_order,
    eliminate,
    is_chordal,
    extract_cliques,
)
from .junction import (
    JunctionTree,
    TreeStatus,
    Edge,
    build_junction_tree,
    check_junction_property,
)
from .statistics import TreeStatistics, tree_stats, stats_dataframe
from .pipeline import initialize, compile_network
