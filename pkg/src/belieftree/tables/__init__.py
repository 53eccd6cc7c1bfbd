from .table import (
    BeliefTable,
    Finding,
    DENSE,
    SPARSE,
    SPARSE_DENSITY_CUTOFF,
    strides,
    project_indices,
    table_sum,
    marginalize,
    multiply,
    divide,
    enter_finding,
    compress,
    decompress,
    annihilate_below,
    annihilate_indices,
    scale,
)
