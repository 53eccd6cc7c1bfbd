#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

import math
import pytest
from belieftree.network import (
    NetworkSpec,
    NodeSpec,
    SyntheticParameters,
    generate_synthetic,
    load_network,
    parse_network,
    require_valid,
    save_network,
    serialize_network,
    validate_network,
)
from belieftree.utils import (
    GeneratorParameterError,
    NetworkParseError,
    NetworkValidationError,
    UnknownNodeError,
)
from conftest import CHAIN_TEXT


def test_parse_chain(chain):
    net = parse_network(CHAIN_TEXT)
    assert net == chain
    assert net.ids == ["A", "B"]
    assert net.state_counts == (2, 2)
    assert net.get_parent_indices(1) == [0]
    assert net.get_family_shape(1) == (2, 2)
    assert net.get_cpt_array(1).tolist() == [[0.9, 0.1], [0.2, 0.8]]


def test_serialize_round_trip_is_exact(chain):
    assert parse_network(serialize_network(chain)) == chain
    net = generate_synthetic(SyntheticParameters(node_count=12, seed=4))
    assert parse_network(serialize_network(net, indent=2)) == net


def test_save_and_load(tmp_path, chain):
    path = str(tmp_path / "chain.json")
    save_network(chain, path)
    assert load_network(path) == chain


def test_load_missing_file_raises(tmp_path):
    with pytest.raises(NetworkParseError):
        load_network(str(tmp_path / "missing.json"))


def test_unknown_parent_raises():
    text = CHAIN_TEXT.replace('"parents":["A"]', '"parents":["Z"]')
    with pytest.raises(NetworkParseError, match="'Z'"):
        parse_network(text)


def test_syntax_error_reports_position():
    with pytest.raises(NetworkParseError) as error:
        parse_network('{"name": "x",\n "nodes": [,]}')
    assert error.value.line == 2
    assert error.value.column is not None


@pytest.mark.parametrize(
    "text",
    [
        '{"nodes": []}',
        '{"name": "x", "nodes": [{"id": "A", "states": ["t", "f"], "parents": []}]}',
        '{"name": "x", "nodes": [{"id": "A", "states": ["t", 1], "parents": [], "cpt": [1, 0]}]}',
        '{"name": "x", "nodes": [{"id": "A", "states": ["t", "f"], "parents": [], "cpt": ["a", 0]}]}',
        '{"name": "x", "nodes": ['
        '{"id": "A", "states": ["t", "f"], "parents": [], "cpt": [1, 0]},'
        '{"id": "A", "states": ["t", "f"], "parents": [], "cpt": [1, 0]}]}',
    ],
)
def test_malformed_documents_raise(text):
    with pytest.raises(NetworkParseError):
        parse_network(text)


def test_unknown_node_lookup(chain):
    with pytest.raises(UnknownNodeError):
        chain.get_index("Z")
    with pytest.raises(UnknownNodeError):
        chain.get_node("A").get_state_index("maybe")


def test_validate_chain(chain):
    report = validate_network(chain)
    assert report.is_valid
    assert report.parameter_count == 6
    assert report.zero_count == 0
    assert report.zero_fraction == 0.0
    assert report.to_dataframe().empty


def test_row_sum_violation():
    net = NetworkSpec(
        [
            NodeSpec("A", ["t", "f"], [], [0.3, 0.7]),
            NodeSpec("B", ["t", "f"], ["A"], [0.9, 0.2, 0.2, 0.8]),
        ]
    )
    report = validate_network(net)
    assert [(v.kind, v.node, v.row) for v in report.violations] == [("row-sum", "B", 0)]
    with pytest.raises(NetworkValidationError) as error:
        require_valid(net)
    assert error.value.report is not None
    assert error.value.exit_status == 2


def test_cycle_violation():
    net = NetworkSpec(
        [
            NodeSpec("A", ["t", "f"], ["B"], [0.5, 0.5, 0.5, 0.5]),
            NodeSpec("B", ["t", "f"], ["A"], [0.5, 0.5, 0.5, 0.5]),
        ]
    )
    violations = validate_network(net).violations
    assert [v.kind for v in violations] == ["cycle"]
    cycle = violations[0].cycle
    assert cycle[0] == cycle[-1]
    assert set(cycle) == {"A", "B"}


def test_undeclared_parent_is_a_violation():
    net = NetworkSpec([NodeSpec("B", ["t", "f"], ["Z"], [0.9, 0.1, 0.2, 0.8])])
    report = validate_network(net)
    assert [(v.kind, v.node) for v in report.violations] == [("unknown-parent", "B")]
    assert "'Z'" in report.violations[0].message
    assert report.parameter_count == 4
    with pytest.raises(NetworkValidationError):
        require_valid(net)


def test_length_range_and_state_violations():
    net = NetworkSpec(
        [
            NodeSpec("A", ["t"], [], [1.0]),
            NodeSpec("B", ["t", "f"], ["A"], [0.5, 0.5, 0.5]),
            NodeSpec("C", ["t", "f"], [], [1.5, -0.5]),
        ]
    )
    kinds = {(v.kind, v.node) for v in validate_network(net).violations}
    assert kinds == {("states", "A"), ("cpt-length", "B"), ("range", "C")}


def test_empty_network_is_invalid():
    assert [v.kind for v in validate_network(NetworkSpec([])).violations] == ["empty"]


def test_generator_is_deterministic():
    params = SyntheticParameters(node_count=30, zero_fraction=0.3, seed=11)
    assert generate_synthetic(params) == generate_synthetic(params)
    assert generate_synthetic(params) != generate_synthetic(SyntheticParameters(node_count=30, seed=12))


@pytest.mark.parametrize("zero_fraction", [0.0, 0.3, 0.67, 0.9])
def test_generated_networks_are_valid(zero_fraction):
    params = SyntheticParameters(
        node_count=40, max_parents=3, min_states=2, max_states=5, zero_fraction=zero_fraction, seed=3
    )
    net = generate_synthetic(params)
    report = validate_network(net)
    assert report.is_valid
    assert net.name == "synthetic-3"
    assert net.ids[0] == "X00" and net.ids[-1] == "X39"
    for index, node in enumerate(net.nodes):
        assert 2 <= len(node.states) <= 5
        assert len(node.parents) <= 3
        assert all(0 <= index - net.get_index(p) <= params.parent_window for p in node.parents)
        width = len(node.states)
        for row in range(len(node.cpt) // width):
            assert sum(1 for p in node.cpt[row * width : (row + 1) * width] if p > 0) >= 1


def test_zero_fraction_is_approximately_met():
    params = SyntheticParameters(node_count=200, zero_fraction=0.5, seed=7)
    report = validate_network(generate_synthetic(params))
    assert math.isclose(report.zero_fraction, 0.5, abs_tol=0.1)


@pytest.mark.parametrize(
    "params",
    [
        SyntheticParameters(node_count=0),
        SyntheticParameters(node_count=3, max_parents=3),
        SyntheticParameters(min_states=1),
        SyntheticParameters(min_states=4, max_states=3),
        SyntheticParameters(skew=0.0),
        SyntheticParameters(zero_fraction=1.0),
        SyntheticParameters(parent_window=0),
        SyntheticParameters(seed=-1),
    ],
)
def test_invalid_generator_parameters(params):
    with pytest.raises(GeneratorParameterError):
        generate_synthetic(params)
