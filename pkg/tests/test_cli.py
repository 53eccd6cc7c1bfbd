#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

import json
import pytest
from belieftree.approx import ApproximationMethod
from belieftree.cli import BenchSettings, build_parser, leaf_nodes, main, read_bench_csv, run_bench
from belieftree.cli.bench import BENCH_COLUMNS, BENCH_HEADER
from belieftree.network import SyntheticParameters, generate_synthetic, load_network, save_network


def compile_chain(chain_file, tmp_path, capsys):
    tree = str(tmp_path / "chain.tree.json")
    assert main(["compile", str(chain_file), "--output", tree]) == 0
    capsys.readouterr()
    return tree


def test_compile_prints_statistics(chain_file, tmp_path, capsys):
    assert main(["compile", str(chain_file)]) == 0
    out = capsys.readouterr().out
    assert "clique_count=1" in out
    assert "size_histogram=2:1" in out
    assert (tmp_path / "chain.tree.json").exists()


def test_query_exact_tree(chain_file, tmp_path, capsys):
    tree = compile_chain(chain_file, tmp_path, capsys)
    assert main(["query", tree, "--evidence", "B=t", "--node", "A", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["source"] == "exact"
    assert document["bounds"] is None
    assert document["mu_case"] == pytest.approx(0.41)
    assert document["posteriors"]["A"]["t"] == pytest.approx(0.27 / 0.41)


def test_approximate_then_query(chain_file, tmp_path, capsys):
    tree = compile_chain(chain_file, tmp_path, capsys)
    assert main(["approximate", tree, "--epsilon", "0.05"]) == 0
    record = dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines())
    assert float(record["e"]) == pytest.approx(0.03, abs=1e-12)
    assert record["method"] == "halving"
    approx = str(tmp_path / "chain.tree.approx.json")
    assert (tmp_path / "chain.tree.approx.findings.csv").exists()

    assert main(["query", approx, "--evidence", "B=t"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "source=approximated"
    assert "refined_bound=0.0" in lines

    # The excluded case is answered by the fallback tree, or exits with 3 without one
    assert main(["query", approx, "--evidence", "A=t", "--evidence", "B=f"]) == 3
    capsys.readouterr()
    args = ["query", approx, "--evidence", "A=t", "--evidence", "B=f", "--fallback", tree]
    assert main(args) == 0
    assert capsys.readouterr().out.startswith("source=fallback")


def test_case_file_query(chain_file, tmp_path, capsys):
    tree = compile_chain(chain_file, tmp_path, capsys)
    case = tmp_path / "case.json"
    case.write_text(json.dumps({"findings": [{"node": "B", "states": ["t"]}]}))
    assert main(["query", tree, "--case-file", str(case), "--node", "B", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "node_id,state_label,probability"
    assert out[1] == "B,t,1"


def test_exit_statuses(tmp_path, capsys):
    assert main(["compile", str(tmp_path / "missing.json")]) == 4

    broken = tmp_path / "broken.json"
    broken.write_text('{"name": "x", "nodes": [')
    assert main(["stats", str(broken)]) == 4

    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        '{"name":"x","nodes":[{"id":"A","states":["t","f"],"parents":[],"cpt":[0.5,0.6]}]}'
    )
    assert main(["compile", str(invalid)]) == 2
    assert main(["generate", "--nodes", "2", "--max-parents", "2"]) == 2


def test_corrupted_table_exits_with_parse_status(chain_file, tmp_path, capsys):
    tree = compile_chain(chain_file, tmp_path, capsys)
    document = json.loads(open(tree).read())
    document["cliques"][0]["table"]["values"][0] = -0.5
    with open(tree, "w") as f:
        json.dump(document, f)
    assert main(["query", tree]) == 4
    assert "Invalid belief table" in capsys.readouterr().err


def test_broken_edge_list_exits_with_parse_status(chain3, tmp_path, capsys):
    network = str(tmp_path / "chain3.json")
    save_network(chain3, network)
    tree = str(tmp_path / "chain3.tree.json")
    assert main(["compile", network, "--output", tree]) == 0
    document = json.loads(open(tree).read())
    assert len(document["edges"]) == 1
    document["edges"] = []
    with open(tree, "w") as f:
        json.dump(document, f)
    assert main(["query", tree]) == 4


def test_unknown_evidence_exits_with_parse_status(chain_file, tmp_path, capsys):
    tree = compile_chain(chain_file, tmp_path, capsys)
    assert main(["query", tree, "--evidence", "Z=t"]) == 4


def test_stats_for_every_heuristic(chain_file, capsys):
    assert main(["stats", str(chain_file), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("heuristic,clique_count")
    assert [line.split(",")[0] for line in lines[1:]] == ["max-card", "min-size", "min-weight"]


def test_generate_writes_a_valid_network(tmp_path, capsys):
    path = tmp_path / "net.json"
    assert main(["generate", "--nodes", "12", "--seed", "3", "--output", str(path)]) == 0
    net = load_network(str(path))
    assert net == generate_synthetic(SyntheticParameters(node_count=12, seed=3))


def test_bench_without_timing_is_reproducible(tmp_path, capsys):
    args = [
        "bench", "--synthetic", "--nodes", "10", "--seed", "2", "--zero-fraction", "0.3",
        "--cases", "3", "--epsilon", "0,0.001,0.01", "--no-timing",
    ]
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert main(args + ["--output", str(first)]) == 0
    assert main(args + ["--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().splitlines()[0] == BENCH_HEADER

    frame = read_bench_csv(str(first))
    assert list(frame.columns) == BENCH_COLUMNS
    assert len(frame) == 3 * (1 + 3)
    trees = frame[frame["record"] == "tree"]
    assert list(trees["epsilon"]) == [0.0, 0.001, 0.01]
    assert trees["time_s"].isna().all()
    assert (trees["payload_bytes"] <= trees["dense_bytes"]).all()
    assert trees["e"].iloc[0] == 0.0


def test_run_bench_compares_with_the_joint():
    net = generate_synthetic(SyntheticParameters(node_count=8, min_states=2, max_states=3, seed=4))
    settings = BenchSettings(epsilons=[0.0, 0.01], case_count=4, timing=False, concurrent=False)
    frame = run_bench(net, settings)
    cases = frame[(frame["record"] == "case") & (frame["epsilon"] == 0.0)]
    assert not cases["excluded"].any()
    assert (cases["max_error"] <= 1e-12).all()
    assert (cases["max_oracle_error"] < 1e-9).all()

    approximated = frame[(frame["record"] == "case") & (frame["epsilon"] == 0.01)]
    for _, row in approximated[~approximated["excluded"]].iterrows():
        assert row["max_error"] <= row["refined_bound"] + 1e-9


def test_bench_timing_columns():
    net = generate_synthetic(SyntheticParameters(node_count=6, seed=1))
    frame = run_bench(net, BenchSettings(epsilons=[0.0], case_count=2, findings_per_case=1))
    tree = frame[frame["record"] == "tree"].iloc[0]
    assert tree["time_s"] > 0.0
    assert tree["time_ratio"] > 0.0


def test_bench_time_follows_storage():
    # Five-state nodes give tables large enough for data work to dominate
    net = generate_synthetic(
        SyntheticParameters(node_count=50, max_parents=3, min_states=5, max_states=5, parent_window=4, seed=1)
    )
    settings = BenchSettings(
        epsilons=[0.0, 1e-4, 1e-3, 1e-2, 5e-2, 0.1, 0.3],
        method=ApproximationMethod.SORT,
        case_count=3,
        repetitions=7,
        seed=1,
        concurrent=False,
    )
    frame = run_bench(net, settings)
    tree = frame[frame["record"] == "tree"].reset_index(drop=True)
    storage = tree["payload_bytes"] / tree["dense_bytes"]
    assert all(later <= earlier for earlier, later in zip(storage, storage[1:]))
    assert tree["time_ratio"].iloc[-1] < tree["time_ratio"].iloc[0]
    assert tree["time_ratio"].rank().corr(storage.rank()) > 0.9


def test_leaf_nodes(chain3):
    assert leaf_nodes(chain3) == [2]


def test_parser_defaults():
    args = build_parser().parse_args(["bench"])
    assert args.cases == 18
    assert args.findings == 3
    assert args.repetitions == 5
    assert not args.no_timing
