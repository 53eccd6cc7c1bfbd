#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module is the benchmark harness. For every epsilon of a sweep it
approximates the compiled tree once, measures the storage of the compressed
tables and the propagation time of a set of random cases, and compares the
posteriors of every case with the exact tree. Rows are emitted in a fixed
order, so a run is reproducible from its seed; with timing disabled the CSV
is byte for byte identical between runs.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import io
import math
import statistics
import time
import numpy as np
import pandas as pd
from ..approx import ApproximationConfig, ApproximationMethod, approximate, worst_case_bound
from ..compiler import Heuristic, JunctionTree, compile_network
from ..engine import Case, enter_case, global_propagate, propagate_case, query_marginal, tree_storage
from ..network import NetworkSpec
from ..oracle import MAX_JOINT_STATES, enumerate_joint, oracle_posterior
from ..tables import Finding
from ..utils import GeneratorParameterError, printer, runner

BENCH_HEADER: str = "# belieftree bench v1"
"""Defines the versioned comment row written before the CSV header."""

BENCH_COLUMNS: list = [
    "record",
    "network",
    "heuristic",
    "method",
    "epsilon",
    "e",
    "payload_bytes",
    "total_bytes",
    "dense_bytes",
    "time_s",
    "time_ratio",
    "case",
    "mu_case",
    "excluded",
    "coarse_bound",
    "refined_bound",
    "max_error",
    "mean_error",
    "max_oracle_error",
]
"""Defines the columns of the bench CSV, in order."""

DEFAULT_EPSILONS: tuple = (0.0, 1e-5, 1e-4, 1e-3, 1e-2)
"""Defines the default epsilon sweep."""

CASE_ATTEMPTS: int = 100
"""Defines how often a case is redrawn when it is impossible on the exact tree."""


@dataclass
class BenchSettings:
    """
    The settings of a bench run.
    """

    epsilons: list = field(default_factory=lambda: list(DEFAULT_EPSILONS))
    """Defines the epsilon sweep."""

    method: ApproximationMethod = ApproximationMethod.HALVING
    """Defines the selection method of the approximation."""

    heuristic: Heuristic = Heuristic.MIN_SIZE
    """Defines the triangulation heuristic."""

    start_node: int = 0
    """Defines the start node of a maximum-cardinality triangulation."""

    case_count: int = 18
    """Defines the number of random cases."""

    findings_per_case: int = 3
    """Defines the number of single-state findings in each case."""

    observable: list = None
    """Defines the node indices findings are drawn on, the leaf nodes if not given."""

    seed: int = 0
    """Defines the seed of the case generator."""

    repetitions: int = 5
    """Defines how often each propagation is timed; the median is used."""

    timing: bool = True
    """Defines whether the propagation time is measured."""

    concurrent: bool = True
    """Defines whether the case accuracy is evaluated concurrently."""

    def validate(self) -> None:
        if self.case_count < 0 or self.findings_per_case < 1:
            raise GeneratorParameterError("Case count and findings per case must be positive.")
        if self.repetitions < 5:
            raise GeneratorParameterError("At least 5 timing repetitions are required.")
        if any(not 0.0 <= e < 1.0 for e in self.epsilons):
            raise GeneratorParameterError("Every epsilon must be in [0, 1).")


def leaf_nodes(net: NetworkSpec) -> list:
    """
    Returns the indices of the nodes without children.

    :param net:     The network
    :type net:      NetworkSpec

    :returns:       The leaf node indices
    :rtype:         list
    """

    parents = {p for i in range(len(net)) for p in net.get_parent_indices(i)}
    return [i for i in range(len(net)) if i not in parents]


def generate_cases(jt: JunctionTree, settings: BenchSettings, observable: list) -> list:
    """
    Draws random cases of single-state findings on distinct observable nodes,
    each state uniform. A case that is impossible on the exact tree is drawn
    again, up to a fixed number of attempts.

    :param jt:          The exact tree
    :type jt:           JunctionTree
    :param settings:    The bench settings
    :type settings:     BenchSettings
    :param observable:  The node indices findings are drawn on
    :type observable:   list

    :returns:           The cases
    :rtype:             list[Case]
    """

    rng = np.random.default_rng(settings.seed)
    size = min(settings.findings_per_case, len(observable))
    cases = []
    for _ in range(settings.case_count):
        for _ in range(CASE_ATTEMPTS):
            nodes = sorted(int(n) for n in rng.choice(observable, size=size, replace=False))
            case = Case(
                Finding(n, frozenset([int(rng.integers(jt.state_counts[n]))])) for n in nodes
            )
            _, outcome = propagate_case(jt, case)
            if not outcome.excluded:
                break
        cases.append(case)
    return cases


def time_propagation(jt: JunctionTree, cases: list, repetitions: int) -> float:
    """
    Returns the mean over the cases of the median time needed to enter the
    case and propagate it. Tree copies are made before the clock starts.

    :param jt:              The tree to time
    :type jt:               JunctionTree
    :param cases:           The cases
    :type cases:            list[Case]
    :param repetitions:     The number of timed repetitions per case
    :type repetitions:      int

    :returns:               The mean propagation time in seconds
    :rtype:                 float
    """

    medians = []
    for case in cases or [Case()]:
        copies = [jt.copy() for _ in range(repetitions)]
        durations = []
        for tree in copies:
            start = time.perf_counter()
            enter_case(tree, case)
            global_propagate(tree)
            durations.append(time.perf_counter() - start)
        medians.append(statistics.median(durations))
    return statistics.fmean(medians)


def _evaluate_case(item: tuple) -> dict:
    # Compare the posteriors of one case on an approximated tree with the exact ones
    tree, case, exact, oracle = item
    approximated, outcome = propagate_case(tree, case)
    bound = worst_case_bound(tree.approximation, case, outcome.mu)
    row = {
        "mu_case": outcome.mu,
        "excluded": outcome.excluded,
        "coarse_bound": bound.coarse_bound,
        "refined_bound": bound.refined_bound,
    }
    if outcome.excluded or exact is None:
        return row

    errors = np.concatenate(
        [np.abs(query_marginal(approximated, n) - exact[n]) for n in range(tree.node_count)]
    )
    row["max_error"] = float(errors.max())
    row["mean_error"] = float(errors.mean())
    if oracle is not None:
        row["max_oracle_error"] = max(
            float(np.abs(query_marginal(approximated, n) - oracle[n]).max())
            for n in range(tree.node_count)
        )
    return row


def run_bench(net: NetworkSpec, settings: BenchSettings = None) -> pd.DataFrame:
    """
    Runs the epsilon sweep on a network and returns one 'tree' row per
    epsilon, each followed by one 'case' row per case.

    :param net:         The network to benchmark
    :type net:          NetworkSpec
    :param settings:    The bench settings
    :type settings:     BenchSettings

    :returns:           The bench records
    :rtype:             pd.DataFrame
    """

    settings = settings or BenchSettings()
    settings.validate()
    jt = compile_network(net, settings.heuristic, settings.start_node)
    observable = settings.observable if settings.observable is not None else leaf_nodes(net)
    cases = generate_cases(jt, settings, observable)

    # Exact posteriors from the tree and, for small networks, from the joint
    exact = []
    oracle = []
    joint = enumerate_joint(net) if math.prod(net.state_counts) <= MAX_JOINT_STATES else None
    for case in cases:
        tree, outcome = propagate_case(jt, case)
        exact.append(None if outcome.excluded else [query_marginal(tree, n) for n in range(len(net))])
        oracle.append(
            [oracle_posterior(joint, case, n) for n in range(len(net))]
            if joint is not None and not outcome.excluded
            else None
        )
    baseline = time_propagation(jt, cases, settings.repetitions) if settings.timing else None

    rows = []
    for epsilon in sorted(settings.epsilons):
        printer.info(f"Benchmarking '{net.name}' at epsilon={epsilon!r}.")
        tree, report = approximate(jt, ApproximationConfig(epsilon, settings.method))
        payload = sum(len(t.payload()) for t in tree.tables + tree.separator_tables)
        storage = tree_storage(tree)
        elapsed = time_propagation(tree, cases, settings.repetitions) if settings.timing else None
        rows.append(
            {
                "record": "tree",
                "network": net.name,
                "heuristic": jt.heuristic,
                "method": settings.method.value,
                "epsilon": epsilon,
                "e": report.error,
                "payload_bytes": payload,
                "total_bytes": payload + storage.structure_bytes,
                "dense_bytes": storage.dense_bytes,
                "time_s": elapsed,
                "time_ratio": elapsed / baseline if settings.timing and baseline > 0 else None,
            }
        )

        # Accuracy evaluations are independent, so they may run concurrently
        items = [(tree, case, exact[k], oracle[k]) for k, case in enumerate(cases)]
        if settings.concurrent:
            results = runner.run_concurrently(_evaluate_case, items)
        else:
            results = [_evaluate_case(item) for item in items]
        for k, result in enumerate(results):
            rows.append(
                {
                    "record": "case",
                    "network": net.name,
                    "heuristic": jt.heuristic,
                    "method": settings.method.value,
                    "epsilon": epsilon,
                    "e": report.error,
                    "case": k,
                    **result,
                }
            )

    frame = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    for column in ["payload_bytes", "total_bytes", "dense_bytes", "case"]:
        frame[column] = frame[column].astype("Int64")
    frame["excluded"] = frame["excluded"].astype("boolean")
    printer.success(f"Benchmarked '{net.name}' over {len(settings.epsilons)} epsilons.")
    return frame


def bench_to_csv(frame: pd.DataFrame) -> str:
    """
    Formats bench records as CSV text preceded by the versioned header row.
    Missing values are written as empty fields.

    :param frame:   The bench records
    :type frame:    pd.DataFrame

    :returns:       The CSV text
    :rtype:         str
    """

    buffer = io.StringIO()
    buffer.write(BENCH_HEADER + "\n")
    frame.to_csv(buffer, index=False, float_format="%.17g", na_rep="", lineterminator="\n")
    return buffer.getvalue()


def read_bench_csv(path: str) -> pd.DataFrame:
    """
    Reads a bench CSV written by bench_to_csv.

    :param path:    The path of the CSV file
    :type path:     str

    :returns:       The bench records
    :rtype:         pd.DataFrame
    """

    return pd.read_csv(path, comment="#")
