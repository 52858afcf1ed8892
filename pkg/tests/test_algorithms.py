import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmatops import (
    RegisterLayout,
    StateVector,
    encode_matrix,
    oracle_row_add,
    oracle_row_swap,
    oracle_trace,
    oracle_transpose,
    post_select,
    prepare_product_state,
    run_row_add,
    run_row_swap,
    run_trace,
    run_transpose,
    run_transpose_square,
)
from qmatops.golden import (
    GOLDEN_FROBENIUS_SCALE,
    GOLDEN_K,
    GOLDEN_L,
    GOLDEN_MATRIX,
    expected_branches,
    golden_swapped,
)

INV_SQRT2 = 1 / math.sqrt(2)
TOL = 1e-10


def random_matrix(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# --- post-selection --------------------------------------------------------

def test_post_select_basis_state():
    layout = RegisterLayout((("A", 1), ("B", 1)))
    state = prepare_product_state(layout, ())
    hit = post_select(state, {"A": 0, "B": 0})
    assert hit.probability == 1.0
    miss = post_select(state, {"A": 1})
    assert miss.probability == 0.0
    assert miss.renormalized_state is None


def test_post_select_renormalizes():
    layout = RegisterLayout((("A", 1), ("B", 1)))
    state = StateVector(layout, np.array([0.5, 0.5, 0.5, 0.5]))
    selected = post_select(state, {"A": 0})
    assert abs(selected.probability - 0.5) < 1e-14
    assert abs(selected.renormalized_state.norm_squared - 1.0) < 1e-12
    assert selected.renormalized_state.amplitude({"A": 1, "B": 0}) == 0


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_post_select_probabilities_are_complete(seed):
    rng = np.random.default_rng(seed)
    layout = RegisterLayout((("X", 2), ("Y", 2)))
    raw = random_matrix(rng, layout.size)
    state = StateVector(layout, raw / np.linalg.norm(raw))
    total = sum(post_select(state, {"Y": y}).probability for y in range(4))
    assert abs(total - 1.0) < 1e-12


def test_post_select_rejects_unknown_register():
    layout = RegisterLayout((("A", 1),))
    state = prepare_product_state(layout, ())
    with pytest.raises(ValueError):
        post_select(state, {"Z": 0})


# --- row addition ------------------------------------------------------------

def test_row_add_identity_example():
    report = run_row_add(encode_matrix(np.eye(2)), 0, 1)
    assert abs(report.predicted_probability - 3 / 16) < TOL
    assert abs(report.success_probability - 3 / 16) < TOL
    expected = np.array([[INV_SQRT2, 0], [INV_SQRT2, INV_SQRT2]]) / report.normalization
    np.testing.assert_allclose(report.output_matrix, expected, atol=TOL)


def test_row_add_cancelling_rows():
    report = run_row_add(encode_matrix([[1.0, 0.0], [-1.0, 0.0]]), 0, 1)
    assert abs(report.success_probability - 1 / 16) < TOL
    assert abs(report.normalization - INV_SQRT2) < TOL


def test_row_add_zero_source_row():
    report = run_row_add(encode_matrix([[0.0, 0.0], [3.0, 4.0]]), 0, 1)
    assert abs(report.success_probability - 1 / 8) < TOL
    assert abs(report.normalization - 1.0) < TOL
    encoded = encode_matrix([[0.0, 0.0], [3.0, 4.0]])
    np.testing.assert_allclose(report.output_matrix, encoded.entries, atol=TOL)


def test_row_add_matches_oracle_on_random_matrices():
    rng = np.random.default_rng(10)
    for rows, cols in ((2, 2), (4, 2), (4, 8), (8, 4)):
        encoded = encode_matrix(random_matrix(rng, (rows, cols)))
        k = int(rng.integers(rows))
        l = (k + 1 + int(rng.integers(rows - 1))) % rows
        reference = oracle_row_add(encoded.entries, k, l)
        report = run_row_add(encoded, k, l)
        assert abs(report.success_probability - reference.predicted_probability) < TOL
        np.testing.assert_allclose(
            report.output_matrix * report.normalization,
            np.array(reference.matrix),
            atol=TOL,
        )


def test_row_add_report_invariant():
    report = run_row_add(encode_matrix(GOLDEN_MATRIX), 2, 0)
    assert abs(report.success_probability - report.predicted_probability) < TOL
    assert report.output_unpadded_shape == (4, 4)


def test_row_ops_reject_equal_or_out_of_range_rows():
    encoded = encode_matrix(np.eye(4))
    for runner in (run_row_add, run_row_swap):
        with pytest.raises(ValueError):
            runner(encoded, 1, 1)
        with pytest.raises(ValueError):
            runner(encoded, 0, 4)
        with pytest.raises(ValueError):
            runner(encoded, -1, 0)


# --- row swapping -------------------------------------------------------------

def test_row_swap_probability_is_input_independent():
    rng = np.random.default_rng(11)
    for rows in (2, 4, 8):
        encoded = encode_matrix(random_matrix(rng, (rows, 4)))
        report = run_row_swap(encoded, 0, rows - 1)
        assert abs(report.success_probability - 1 / 24) < TOL


def test_row_swap_output_matches_oracle():
    rng = np.random.default_rng(12)
    encoded = encode_matrix(random_matrix(rng, (8, 2)))
    reference = oracle_row_swap(encoded.entries, 5, 2)
    report = run_row_swap(encoded, 5, 2)
    np.testing.assert_allclose(report.output_matrix, np.array(reference.matrix), atol=TOL)


def test_row_swap_twice_restores_input():
    rng = np.random.default_rng(13)
    encoded = encode_matrix(random_matrix(rng, (4, 4)))
    once = run_row_swap(encoded, 3, 0).output_matrix
    # the decoded output is unit-norm, so it re-encodes without rescaling
    twice = run_row_swap(encode_matrix(once), 3, 0).output_matrix
    np.testing.assert_allclose(twice, encoded.entries, atol=TOL)


def test_golden_walkthrough_branches():
    encoded = encode_matrix(GOLDEN_MATRIX)
    assert abs(encoded.frobenius_scale - GOLDEN_FROBENIUS_SCALE) < 1e-15
    report = run_row_swap(encoded, GOLDEN_K, GOLDEN_L, record_steps=True)
    states = {record.label: record.state for record in report.step_states}
    assert set(states) == {f"phi_{t}" for t in range(7)}
    for label, branches in expected_branches().items():
        state = states[label]
        for assignment, expected in branches:
            assert abs(state.amplitude(assignment) - expected) < TOL, (label, assignment)
    for record in report.step_states[:-1]:
        assert abs(record.norm_squared - 1.0) < 1e-12


def test_golden_walkthrough_output_and_probability():
    encoded = encode_matrix(GOLDEN_MATRIX)
    report = run_row_swap(encoded, GOLDEN_K, GOLDEN_L)
    assert abs(report.success_probability - 1 / 24) < TOL
    swapped = np.array(golden_swapped()) / GOLDEN_FROBENIUS_SCALE
    np.testing.assert_allclose(report.output_matrix, swapped, atol=TOL)


# --- trace -----------------------------------------------------------------

def test_trace_identity_example():
    report = run_trace(encode_matrix(np.eye(2)))
    # normalized identity has diagonal 1/sqrt(2) twice: trace sqrt(2), n=1
    assert abs(report.predicted_probability - 2 / 8) < TOL
    assert abs(report.success_probability - 2 / 8) < TOL
    assert abs(report.recovered_trace - math.sqrt(2)) < TOL


def test_trace_matches_oracle_on_random_matrices():
    rng = np.random.default_rng(14)
    for dim in (2, 4):
        encoded = encode_matrix(random_matrix(rng, (dim, dim)))
        reference = oracle_trace(encoded.entries)
        report = run_trace(encoded)
        assert abs(report.success_probability - reference.predicted_probability) < TOL
        assert abs(report.recovered_trace - reference.scalar) < TOL


def test_trace_exactly_traceless_is_exactly_zero():
    report = run_trace(encode_matrix([[0.0, 1.0], [1.0, 0.0]]))
    assert report.success_probability == 0.0
    assert report.recovered_trace == 0.0
    assert report.output_matrix is None


def test_trace_rejects_non_square():
    with pytest.raises(ValueError):
        run_trace(encode_matrix(np.ones((4, 2))))


def test_trace_scale_restoration():
    matrix = 5.0 * np.eye(4)
    encoded = encode_matrix(matrix)
    report = run_trace(encoded)
    restored = report.recovered_trace * encoded.frobenius_scale
    assert abs(restored - 20.0) < 1e-9


# --- transpose ---------------------------------------------------------------

def test_transpose_rectangular_exact():
    rng = np.random.default_rng(15)
    encoded = encode_matrix(random_matrix(rng, (4, 2)))
    reference = oracle_transpose(encoded.entries)
    report = run_transpose(encoded)
    assert report.success_probability == 1.0
    assert report.output_matrix.shape == (2, 4)
    assert np.array_equal(report.output_matrix, np.array(reference.matrix))


def test_transpose_symmetric_fixed_point():
    matrix = np.array([[1.0, 2.0], [2.0, 1.0]])
    encoded = encode_matrix(matrix)
    report = run_transpose(encoded)
    np.testing.assert_array_equal(report.output_matrix, encoded.entries)


def test_transpose_square_variant_agrees_after_unpadding():
    rng = np.random.default_rng(16)
    for shape in ((2, 8), (8, 2), (4, 4), (3, 5)):
        encoded = encode_matrix(random_matrix(rng, shape))
        main = run_transpose(encoded)
        square = run_transpose_square(encoded)
        assert np.array_equal(main.output_matrix, square.output_matrix)
        assert square.success_probability == 1.0
        assert main.output_unpadded_shape == square.output_unpadded_shape


def test_transpose_square_gate_count_uses_padded_side():
    encoded = encode_matrix(np.ones((2, 8)))
    report = run_transpose_square(encoded)
    assert report.gate_tally.total.swap == 3  # log2(max(2, 8))


def test_transpose_involution_through_decode():
    rng = np.random.default_rng(17)
    encoded = encode_matrix(random_matrix(rng, (4, 4)))
    once = run_transpose(encoded).output_matrix
    back = run_transpose(encode_matrix(once)).output_matrix
    np.testing.assert_allclose(back, encoded.entries, atol=1e-12)


# --- run report bookkeeping ---------------------------------------------------

def test_step_states_only_when_requested():
    encoded = encode_matrix(np.eye(2))
    assert run_row_add(encoded, 0, 1).step_states is None
    recorded = run_row_add(encoded, 0, 1, record_steps=True)
    labels = [record.label for record in recorded.step_states]
    assert labels == [f"phi_{t}" for t in range(7)]
    assert all(len(record.checksum) == 16 for record in recorded.step_states)


def test_gate_tally_reports_expected_steps():
    encoded = encode_matrix(np.eye(4))
    report = run_row_swap(encoded, 0, 1)
    assert set(report.gate_tally.per_step) == {
        "step2-mark-distinct-pair",
        "step3-mark-swap-rows",
        "step4-cswap-via-c2",
        "step4-cswap-via-r2",
        "step5-mark-useful",
        "step6-hadamard-mix",
    }
    assert report.gate_tally.per_step["step6-hadamard-mix"].single_qubit == 3


@settings(max_examples=15, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    rows=st.sampled_from([2, 4]),
    cols=st.sampled_from([2, 4]),
)
def test_row_swap_law_property(seed, rows, cols):
    rng = np.random.default_rng(seed)
    encoded = encode_matrix(random_matrix(rng, (rows, cols)))
    pairs = [(k, l) for k in range(rows) for l in range(rows) if k != l]
    k, l = pairs[seed % len(pairs)]
    report = run_row_swap(encoded, k, l)
    assert abs(report.success_probability - 1 / 24) < TOL
    reference = oracle_row_swap(encoded.entries, k, l)
    np.testing.assert_allclose(report.output_matrix, np.array(reference.matrix), atol=TOL)
