from .threshold import select_threshold_halving, select_threshold_sort
from .approximation import (
    ApproximationMethod,
    ApproximationConfig,
    CliqueApproximation,
    ApproximationReport,
    approximate,
)
from .bounds import BoundReport, worst_case_bound, check_case_admissible
