from .case import Case, PropagationOutcome
from .propagation import (
    enter_case,
    absorb,
    collect_evidence,
    distribute_evidence,
    global_propagate,
    query_marginal,
    query_all,
    unnormalized_marginal,
    propagate_case,
)
from .storage import (
    StorageSummary,
    tree_storage,
    tree_to_document,
    tree_from_document,
    save_tree,
    load_tree,
)
