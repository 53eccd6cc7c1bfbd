#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from belieftree.tables import (
    BeliefTable,
    Finding,
    annihilate_below,
    annihilate_indices,
    compress,
    decompress,
    divide,
    enter_finding,
    marginalize,
    multiply,
    scale,
    table_sum,
)
from belieftree.utils import InconsistencyError, ScopeError


def ab_table(sparse: bool = False) -> BeliefTable:
    return BeliefTable.from_dense((0, 1), (2, 2), [0.27, 0.03, 0.14, 0.56], sparse=sparse)


def test_layout_is_row_major():
    t = BeliefTable.from_dense((0, 1), (2, 3), np.arange(6.0), sparse=False)
    assert marginalize(t, [1]).dense_values().tolist() == [3.0, 5.0, 7.0]
    assert marginalize(t, [0]).dense_values().tolist() == [3.0, 12.0]


def test_marginalize_example():
    m = marginalize(ab_table(), [1])
    assert m.scope == (1,)
    assert m.dense_values() == pytest.approx([0.41, 0.59], abs=1e-15)


def test_marginalize_to_empty_scope_gives_total():
    m = marginalize(ab_table(), [])
    assert m.scope == ()
    assert m.dense_values()[0] == pytest.approx(1.0, abs=1e-15)


def test_marginalize_unknown_node_raises():
    with pytest.raises(ScopeError):
        marginalize(ab_table(), [5])


def test_multiply_broadcasts_over_missing_nodes():
    factor = BeliefTable((1,), (2,), [2.0, 0.0])
    product = multiply(ab_table(), factor)
    assert product.dense_values() == pytest.approx([0.54, 0.0, 0.28, 0.0])


def test_multiply_requires_subset_scope():
    with pytest.raises(ScopeError):
        multiply(BeliefTable((0,), (2,), [1.0, 1.0]), ab_table())


def test_divide_zero_by_zero_is_zero():
    num = BeliefTable((0,), (2,), [0.5, 0.0])
    den = BeliefTable((0,), (2,), [0.25, 0.0])
    assert divide(num, den).dense_values().tolist() == [2.0, 0.0]


def test_divide_nonzero_by_zero_raises():
    num = BeliefTable((0,), (2,), [0.5, 0.1])
    den = BeliefTable((0,), (2,), [0.25, 0.0])
    with pytest.raises(InconsistencyError):
        divide(num, den)


def test_enter_finding_example():
    t = enter_finding(ab_table(), Finding(1, frozenset({0})))
    assert t.dense_values() == pytest.approx([0.27, 0.0, 0.14, 0.0])


def test_enter_finding_with_empty_state_set_annihilates_everything():
    t = enter_finding(ab_table(), Finding(0, frozenset()))
    assert table_sum(t) == 0.0


def test_finding_intersection():
    f = Finding(2, frozenset({0, 1})).intersect(Finding(2, frozenset({1, 2})))
    assert f.allowed == frozenset({1})


def test_compress_switches_to_sparse_at_half():
    t = compress(BeliefTable((0,), (4,), [0.5, 0.0, 0.5, 0.0]))
    assert t.is_sparse()
    assert t.stored_indices().tolist() == [0, 2]
    assert t.payload_size() == 32
    assert len(t.payload()) == t.payload_size()

    kept = compress(BeliefTable((0,), (4,), [0.5, 0.1, 0.4, 0.0]))
    assert not kept.is_sparse()
    assert kept.payload_size() == kept.dense_size() == 32


def test_compress_and_decompress_keep_values():
    t = BeliefTable((0, 1), (2, 3), [0.0, 0.0, 0.0, 0.0, 0.3, 0.7])
    assert decompress(compress(t)) == t
    assert compress(t).payload_size() < t.dense_size()


def test_sparse_table_rejects_stored_zero():
    with pytest.raises(ScopeError):
        BeliefTable((0,), (3,), [0.0, 1.0], indices=[0, 2])


def test_negative_entries_rejected():
    with pytest.raises(ScopeError):
        BeliefTable((0,), (2,), [0.5, -0.1])


def test_structure_size_and_export():
    t = compress(BeliefTable((0, 1), (2, 2), [0.0, 0.0, 0.0, 1.0]))
    assert t.structure_size() == 40
    data = t.export(["A", "B"])
    assert data == {"scope": ["A", "B"], "shape": [2, 2], "repr": "sparse", "values": [3, 1.0]}
    assert BeliefTable.load(data, {"A": 0, "B": 1}) == t


def test_annihilate_below_reports_mass():
    t = BeliefTable((0,), (5,), [0.4, 0.3, 0.2, 0.06, 0.04])
    result, mass = annihilate_below(t, 0.06)
    assert result.dense_values().tolist() == [0.4, 0.3, 0.2, 0.06, 0.0]
    assert mass == 0.04


def test_annihilate_indices_reports_mass():
    t = BeliefTable((0,), (4,), [0.4, 0.3, 0.2, 0.1])
    result, mass = annihilate_indices(t, np.array([1, 3]))
    assert result.dense_values().tolist() == [0.4, 0.0, 0.2, 0.0]
    assert mass == pytest.approx(0.4)


def test_scale():
    assert scale(ab_table(), 2.0).dense_values() == pytest.approx([0.54, 0.06, 0.28, 1.12])


@st.composite
def table_pairs(draw):
    """Draws a table with a mix of zero entries, and a table over a prefix of its scope."""
    shape = tuple(draw(st.lists(st.integers(1, 3), min_size=1, max_size=3)))
    size = int(np.prod(shape))
    entry = st.one_of(st.just(0.0), st.floats(1e-6, 10.0))
    values = draw(st.lists(entry, min_size=size, max_size=size))
    count = draw(st.integers(0, len(shape)))
    sub_size = int(np.prod(shape[:count])) if count else 1
    factor = draw(st.lists(entry, min_size=sub_size, max_size=sub_size))
    scope = tuple(range(len(shape)))
    return (
        BeliefTable(scope, shape, values),
        BeliefTable(scope[:count], shape[:count], factor),
    )


@settings(max_examples=200, deadline=None)
@given(table_pairs(), st.data())
def test_sparse_and_dense_results_are_identical(pair, data):
    t, u = pair
    s = BeliefTable.from_dense(t.scope, t.shape, t.dense_values(), sparse=True)
    keep = data.draw(st.sets(st.sampled_from(t.scope)))

    assert table_sum(s) == table_sum(t)
    assert np.array_equal(marginalize(s, keep).dense_values(), marginalize(t, keep).dense_values())
    assert np.array_equal(multiply(s, u).dense_values(), multiply(t, u).dense_values())

    node = data.draw(st.sampled_from(t.scope))
    allowed = data.draw(st.sets(st.integers(0, t.shape[t.scope.index(node)] - 1)))
    finding = Finding(node, frozenset(allowed))
    assert np.array_equal(enter_finding(s, finding).dense_values(), enter_finding(t, finding).dense_values())

    delta = data.draw(st.floats(0.0, 5.0))
    (sa, sm), (ta, tm) = annihilate_below(s, delta), annihilate_below(t, delta)
    assert sm == tm
    assert np.array_equal(sa.dense_values(), ta.dense_values())

    # Results keep the representation of the primary operand
    assert multiply(s, u).is_sparse() and not multiply(t, u).is_sparse()


@settings(max_examples=100, deadline=None)
@given(table_pairs())
def test_divide_by_own_marginal_times_marginal(pair):
    t, _ = pair
    m = marginalize(t, t.scope)
    ratio = divide(t, m)
    assert np.allclose(multiply(ratio, m).dense_values(), t.dense_values())
