#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

import numpy as np
import pytest
from belieftree import printer
from belieftree.compiler import compile_network
from belieftree.engine import Case
from belieftree.network import NetworkSpec, NodeSpec, SyntheticParameters, generate_synthetic
from belieftree.tables import Finding

CHAIN_TEXT = (
    '{"name":"chain","nodes":['
    '{"id":"A","states":["t","f"],"parents":[],"cpt":[0.3,0.7]},'
    '{"id":"B","states":["t","f"],"parents":["A"],"cpt":[0.9,0.1,0.2,0.8]}]}'
)


def chain_network() -> NetworkSpec:
    return NetworkSpec(
        [
            NodeSpec("A", ["t", "f"], [], [0.3, 0.7]),
            NodeSpec("B", ["t", "f"], ["A"], [0.9, 0.1, 0.2, 0.8]),
        ],
        "chain",
    )


def chain3_network() -> NetworkSpec:
    return NetworkSpec(
        [
            NodeSpec("A", ["t", "f"], [], [0.3, 0.7]),
            NodeSpec("B", ["t", "f"], ["A"], [0.9, 0.1, 0.2, 0.8]),
            NodeSpec("C", ["t", "f"], ["B"], [0.5, 0.5, 0.1, 0.9]),
        ],
        "chain3",
    )


def corpus_network(seed: int, max_nodes: int = 8) -> NetworkSpec:
    """Returns a small seeded random network with 2-4 states and at most 3 parents."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_nodes + 1))
    params = SyntheticParameters(
        node_count=n,
        max_parents=min(3, n - 1),
        min_states=2,
        max_states=4,
        skew=float(rng.choice([0.3, 1.0, 3.0])),
        zero_fraction=float(rng.choice([0.0, 0.2, 0.4])),
        parent_window=n,
        seed=seed,
    )
    return generate_synthetic(params, name=f"corpus-{seed}")


def possible_case(net: NetworkSpec, joint, rng: np.random.Generator, single_state: bool = True) -> Case:
    """Returns a random case supported by a joint state drawn from the joint distribution."""
    values = np.asarray(joint.dense_values())
    index = int(rng.choice(len(values), p=values / values.sum()))
    states = np.unravel_index(index, net.state_counts)
    count = int(rng.integers(1, len(net) + 1))
    nodes = sorted(int(n) for n in rng.choice(len(net), size=count, replace=False))
    findings = []
    for node in nodes:
        allowed = {int(states[node])}
        if not single_state and net.state_counts[node] > 2 and rng.random() < 0.5:
            allowed.add(int((states[node] + 1) % net.state_counts[node]))
        findings.append(Finding(node, frozenset(allowed)))
    return Case(findings)


@pytest.fixture(autouse=True)
def quiet_printer():
    printer.set_verbosity(printer.ERROR_VERBOSITY)
    yield
    printer.set_verbosity(printer.ERROR_VERBOSITY)


@pytest.fixture
def chain():
    return chain_network()


@pytest.fixture
def chain3():
    return chain3_network()


@pytest.fixture
def chain_tree(chain):
    return compile_network(chain)


@pytest.fixture
def chain3_tree(chain3):
    return compile_network(chain3)


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(CHAIN_TEXT)
    return path
