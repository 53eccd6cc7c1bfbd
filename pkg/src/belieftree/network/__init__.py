from .spec import NodeSpec, NetworkSpec
from .parser import parse_network, serialize_network, load_network, save_network
from .validation import (
    Violation,
    ValidationReport,
    validate_network,
    require_valid,
    ROW_SUM_TOLERANCE,
)
from .synthetic import SyntheticParameters, generate_synthetic
