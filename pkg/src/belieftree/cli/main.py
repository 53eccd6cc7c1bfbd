#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
The command line of the inference engine. Data (statistics records,
posteriors, CSV and JSON documents) is written to standard output or the
requested file; diagnostics go through the printer to standard error.

Exit statuses: 0 on success, 2 when validation fails, 3 when the case is
excluded and 4 on I/O or parse errors.
"""

from __future__ import annotations
import argparse
import sys
import pandas as pd
from .. import __version__
from ..approx import ApproximationConfig, ApproximationMethod, approximate, worst_case_bound
from ..compiler import Heuristic, JunctionTree, compile_network, stats_dataframe, tree_stats
from ..engine import Case, load_tree, propagate_case, query_marginal, save_tree
from ..network import (
    SyntheticParameters,
    generate_synthetic,
    load_network,
    require_valid,
    serialize_network,
)
from ..utils import BeliefTreeException, ExcludedCaseError, helper, printer
from .bench import BenchSettings, bench_to_csv, run_bench

EXIT_SUCCESS: int = 0
EXIT_VALIDATION: int = 2
EXIT_EXCLUDED: int = 3
EXIT_IO: int = 4

FORMATS: list = ["record", "csv", "json"]
"""Defines the output formats of the data written by the commands."""


def _epsilons(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid epsilon list '{text}'")


def _start_index(net, start: str) -> int:
    # The start node may be given as an identifier or as an index
    if start is None:
        return 0
    if start in net.index_of:
        return net.index_of[start]
    if start.isdigit() and int(start) < len(net):
        return int(start)
    return net.get_index(start)


def _derived_path(path: str, suffix: str) -> str:
    stem = path[:-5] if path.endswith(".json") else path
    return stem + suffix


def _write(text: str, path: str = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit(frame: pd.DataFrame, records: list, format: str) -> None:
    # Emit a table of results as CSV or JSON
    if format == "csv":
        _write(frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"))
    else:
        _write(helper.dumps(records, indent=2) + "\n")


def cmd_compile(args) -> int:
    """
    Compiles a network into a junction-tree file and prints its statistics.
    """

    net = load_network(args.network)
    require_valid(net)
    jt = compile_network(net, args.heuristic, _start_index(net, args.start_node))
    save_tree(jt, args.output or _derived_path(args.network, ".tree.json"))

    stats = tree_stats(jt)
    if args.format == "record":
        _write(stats.to_record() + "\n")
    else:
        _emit(stats_dataframe([stats]), [stats.export()], args.format)
    return EXIT_SUCCESS


def cmd_approximate(args) -> int:
    """
    Approximates and compresses a junction-tree file, writing the
    approximated tree and its finding error table next to it.
    """

    jt = load_tree(args.tree)
    config = ApproximationConfig(args.epsilon, args.method)
    tree, report = approximate(jt, config)
    output = args.output or _derived_path(args.tree, ".approx.json")
    save_tree(tree, output)
    report.save_finding_errors(_derived_path(output, ".findings.csv"))

    summary = {
        "epsilon": report.epsilon,
        "method": report.method.value,
        "e": report.error,
        "removed_mass": report.get_removed_mass(),
        "annihilated_entries": sum(c.removed_entries for c in report.cliques),
    }
    if args.format == "json":
        _write(helper.dumps(report.export(), indent=2) + "\n")
    elif args.format == "csv":
        _write(report.cliques_dataframe().to_csv(index=False, float_format="%.17g", lineterminator="\n"))
    else:
        lines = [f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}" for k, v in summary.items()]
        _write("\n".join(lines) + "\n")
    return EXIT_SUCCESS


def _load_case(args, jt: JunctionTree) -> Case:
    case = Case()
    if args.case_file:
        for finding in Case.load(args.case_file, jt.ids, jt.labels):
            case.add(finding)
    for finding in Case.from_evidence(jt.ids, jt.labels, args.evidence or []):
        case.add(finding)
    return case


def cmd_query(args) -> int:
    """
    Propagates a case on a junction-tree file and prints the posteriors, the
    normalization constant of the case and, on an approximated tree, the
    worst-case error bounds. An excluded case, or one whose refined bound is
    above the maximum, is answered by the fallback tree when one is given.
    """

    jt = load_tree(args.tree)
    case = _load_case(args, jt)
    tree, outcome = propagate_case(jt, case)
    bound = worst_case_bound(jt.approximation, case, outcome.mu) if jt.approximation else None
    source = "approximated" if jt.approximation else "exact"

    # Check if the case should be answered by the fallback tree
    too_loose = bound is not None and args.max_bound is not None and bound.refined_bound > args.max_bound
    if (outcome.excluded or too_loose) and args.fallback:
        printer.warning(
            f"Answering the case with the fallback tree '{args.fallback}' "
            f"({'excluded case' if outcome.excluded else 'bound above the maximum'})."
        )
        fallback = load_tree(args.fallback)
        fallback_case = _load_case(args, fallback)
        tree, outcome = propagate_case(fallback, fallback_case)
        bound = (
            worst_case_bound(fallback.approximation, fallback_case, outcome.mu)
            if fallback.approximation
            else None
        )
        source = "fallback"

    if outcome.excluded:
        raise ExcludedCaseError(
            "The case has a zero normalization constant and has been excluded; "
            "use a less approximated junction tree."
        )

    nodes = args.node or list(tree.ids)
    posteriors = {id: query_marginal(tree, id) for id in nodes}
    if args.format == "json":
        document = {
            "source": source,
            "mu_case": outcome.mu,
            "bounds": bound.export() if bound else None,
            "posteriors": {
                id: dict(zip(tree.labels[tree.get_index(id)], p.tolist()))
                for id, p in posteriors.items()
            },
        }
        _write(helper.dumps(document, indent=2) + "\n")
    elif args.format == "csv":
        rows = [
            (id, label, float(value))
            for id, p in posteriors.items()
            for label, value in zip(tree.labels[tree.get_index(id)], p)
        ]
        frame = pd.DataFrame(rows, columns=["node_id", "state_label", "probability"])
        _write(frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"))
    else:
        lines = [f"source={source}", f"mu_case={outcome.mu!r}"]
        if bound is not None:
            lines += [f"coarse_bound={bound.coarse_bound!r}", f"refined_bound={bound.refined_bound!r}"]
        for id, p in posteriors.items():
            labels = tree.labels[tree.get_index(id)]
            lines += [f"P({id}={label})={float(value)!r}" for label, value in zip(labels, p)]
        _write("\n".join(lines) + "\n")
    return EXIT_SUCCESS


def cmd_stats(args) -> int:
    """
    Prints the statistics of a junction-tree file, or of a network compiled
    with each of the requested heuristics.
    """

    document = helper.read_json(args.input)
    if isinstance(document, dict) and "header" in document:
        statistics = [tree_stats(load_tree(args.input))]
    else:
        net = load_network(args.input)
        require_valid(net)
        start = _start_index(net, args.start_node)
        heuristics = args.heuristic or [h.value for h in Heuristic]
        statistics = [tree_stats(compile_network(net, h, start)) for h in heuristics]

    if args.format == "record":
        _write("\n\n".join(s.to_record() for s in statistics) + "\n")
    else:
        _emit(stats_dataframe(statistics), [s.export() for s in statistics], args.format)
    return EXIT_SUCCESS


def _synthetic_parameters(args) -> SyntheticParameters:
    return SyntheticParameters(
        node_count=args.nodes,
        max_parents=args.max_parents,
        min_states=args.min_states,
        max_states=args.max_states,
        skew=args.skew,
        zero_fraction=args.zero_fraction,
        parent_window=args.parent_window,
        seed=args.seed,
    )


def cmd_bench(args) -> int:
    """
    Runs the epsilon sweep benchmark and writes the bench CSV.
    """

    if args.network and not args.synthetic:
        net = load_network(args.network)
    else:
        net = generate_synthetic(_synthetic_parameters(args))
    require_valid(net)

    settings = BenchSettings(
        epsilons=args.epsilon if args.epsilon is not None else BenchSettings().epsilons,
        method=ApproximationMethod(args.method),
        heuristic=Heuristic(args.heuristic),
        start_node=_start_index(net, args.start_node),
        case_count=args.cases,
        findings_per_case=args.findings,
        seed=args.seed,
        repetitions=args.repetitions,
        timing=not args.no_timing,
    )
    _write(bench_to_csv(run_bench(net, settings)), args.output)
    return EXIT_SUCCESS


def cmd_generate(args) -> int:
    """
    Generates a synthetic network file.
    """

    net = generate_synthetic(_synthetic_parameters(args), name=args.name)
    _write(serialize_network(net, indent=2) + "\n", args.output)
    return EXIT_SUCCESS


def _add_synthetic_arguments(parser: argparse.ArgumentParser) -> None:
    defaults = SyntheticParameters()
    parser.add_argument("--nodes", type=int, default=defaults.node_count, help="number of nodes")
    parser.add_argument("--max-parents", type=int, default=defaults.max_parents, help="maximum parents per node")
    parser.add_argument("--min-states", type=int, default=defaults.min_states, help="minimum states per node")
    parser.add_argument("--max-states", type=int, default=defaults.max_states, help="maximum states per node")
    parser.add_argument("--skew", type=float, default=defaults.skew, help="Dirichlet concentration of the CPT rows")
    parser.add_argument("--zero-fraction", type=float, default=defaults.zero_fraction, help="expected fraction of zero CPT entries")
    parser.add_argument("--parent-window", type=int, default=defaults.parent_window, help="number of preceding nodes that may be parents")
    parser.add_argument("--seed", type=int, default=defaults.seed, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    """
    Returns the argument parser of the command line.

    :returns:   The argument parser
    :rtype:     argparse.ArgumentParser
    """

    parser = argparse.ArgumentParser(prog="belieftree", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="print progress (-vv for details)")
    commands = parser.add_subparsers(dest="command", required=True)

    heuristics = [h.value for h in Heuristic]
    methods = [m.value for m in ApproximationMethod]

    compile = commands.add_parser("compile", help="compile a network into a junction tree")
    compile.add_argument("network", help="network file")
    compile.add_argument("--heuristic", choices=heuristics, default=Heuristic.MIN_SIZE.value)
    compile.add_argument("--start-node", help="start node of a max-card triangulation")
    compile.add_argument("--output", help="junction-tree file to write")
    compile.add_argument("--format", choices=FORMATS, default="record")
    compile.set_defaults(handler=cmd_compile)

    approx = commands.add_parser("approximate", help="approximate and compress a junction tree")
    approx.add_argument("tree", help="junction-tree file")
    approx.add_argument("--epsilon", type=float, required=True, help="fraction of each table's mass that may be removed")
    approx.add_argument("--method", choices=methods, default=ApproximationMethod.HALVING.value)
    approx.add_argument("--output", help="approximated junction-tree file to write")
    approx.add_argument("--format", choices=FORMATS, default="record")
    approx.set_defaults(handler=cmd_approximate)

    query = commands.add_parser("query", help="propagate a case and print posteriors")
    query.add_argument("tree", help="junction-tree file")
    query.add_argument("--evidence", action="append", help="a finding node=state (repeatable)")
    query.add_argument("--case-file", help="case file with the findings")
    query.add_argument("--node", action="append", help="hypothesis node to print (repeatable, default all)")
    query.add_argument("--fallback", help="less approximated junction-tree file")
    query.add_argument("--max-bound", type=float, help="largest acceptable refined bound before falling back")
    query.add_argument("--format", choices=FORMATS, default="record")
    query.set_defaults(handler=cmd_query)

    stats = commands.add_parser("stats", help="print junction-tree statistics")
    stats.add_argument("input", help="network or junction-tree file")
    stats.add_argument("--heuristic", choices=heuristics, action="append", help="heuristic to compile with (repeatable, default all)")
    stats.add_argument("--start-node", help="start node of a max-card triangulation")
    stats.add_argument("--format", choices=FORMATS, default="record")
    stats.set_defaults(handler=cmd_stats)

    bench = commands.add_parser("bench", help="run the epsilon sweep benchmark")
    bench.add_argument("network", nargs="?", help="network file, a synthetic network if omitted")
    bench.add_argument("--synthetic", action="store_true", help="benchmark a generated network")
    _add_synthetic_arguments(bench)
    bench.add_argument("--epsilon", type=_epsilons, help="comma separated epsilon list")
    bench.add_argument("--method", choices=methods, default=ApproximationMethod.HALVING.value)
    bench.add_argument("--heuristic", choices=heuristics, default=Heuristic.MIN_SIZE.value)
    bench.add_argument("--start-node", help="start node of a max-card triangulation")
    bench.add_argument("--cases", type=int, default=18, help="number of random cases")
    bench.add_argument("--findings", type=int, default=3, help="findings per case")
    bench.add_argument("--repetitions", type=int, default=5, help="timed repetitions per case")
    bench.add_argument("--no-timing", action="store_true", help="leave the timing columns empty")
    bench.add_argument("--output", help="CSV file to write")
    bench.set_defaults(handler=cmd_bench)

    generate = commands.add_parser("generate", help="generate a synthetic network")
    _add_synthetic_arguments(generate)
    generate.add_argument("--name", help="name of the network")
    generate.add_argument("--output", help="network file to write")
    generate.set_defaults(handler=cmd_generate)

    return parser


def main(argv: list = None) -> int:
    """
    Runs the command line and returns the exit status.

    :param argv:    The arguments, defaulting to the process arguments
    :type argv:     list

    :returns:       The exit status
    :rtype:         int
    """

    args = build_parser().parse_args(argv)
    if args.verbose >= 2:
        printer.set_verbosity(printer.LOG_VERBOSITY)
    elif args.verbose == 1:
        printer.set_verbosity(printer.INFO_VERBOSITY)

    try:
        return args.handler(args)
    except BeliefTreeException as e:
        return e.exit_status
    except OSError as e:
        printer.error(f"I/O error: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
