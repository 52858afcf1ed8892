import math

import numpy as np
import pytest

from qmatops import (
    ControlledOp,
    FlipQubit,
    Projector,
    RegisterLayout,
    dense_unitary_of,
    oracle_row_add,
    oracle_row_swap,
    oracle_trace,
    oracle_transpose,
)

INV_SQRT2 = 1 / math.sqrt(2)


def test_row_add_identity_example():
    matrix = [[INV_SQRT2, 0], [0, INV_SQRT2]]
    result = oracle_row_add(matrix, 0, 1)
    assert abs(result.normalization_G**2 - 1.5) < 1e-14
    assert abs(result.predicted_probability - 3 / 16) < 1e-14
    np.testing.assert_allclose(
        result.matrix, [[INV_SQRT2, 0], [INV_SQRT2, INV_SQRT2]]
    )


def test_row_add_cancelling_rows_example():
    matrix = [[INV_SQRT2, 0], [-INV_SQRT2, 0]]
    result = oracle_row_add(matrix, 0, 1)
    assert abs(result.normalization_G**2 - 0.5) < 1e-14
    assert abs(result.predicted_probability - 1 / 16) < 1e-14


def test_row_add_zero_source_row_keeps_matrix():
    matrix = [[0, 0], [INV_SQRT2, INV_SQRT2]]
    result = oracle_row_add(matrix, 0, 1)
    assert abs(result.normalization_G - 1.0) < 1e-14
    assert abs(result.predicted_probability - 1 / 8) < 1e-14
    np.testing.assert_allclose(result.matrix, matrix)


def test_row_add_norm_identity():
    # the normalization constant is exactly the norm of the classical result
    rng = np.random.default_rng(0)
    for _ in range(20):
        matrix = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        matrix /= np.linalg.norm(matrix)
        result = oracle_row_add(matrix, 2, 0)
        assert abs(np.linalg.norm(result.matrix) - result.normalization_G) < 1e-12


def test_row_swap_matches_permutation_multiply():
    rng = np.random.default_rng(1)
    matrix = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    result = oracle_row_swap(matrix, 3, 1)
    permutation = np.eye(4)
    permutation[[1, 3]] = permutation[[3, 1]]
    np.testing.assert_allclose(result.matrix, permutation @ matrix, atol=1e-14)
    assert result.predicted_probability == 1 / 24


def test_row_swap_twice_is_identity():
    rng = np.random.default_rng(2)
    matrix = rng.standard_normal((4, 4))
    once = oracle_row_swap(matrix, 0, 2).matrix
    twice = oracle_row_swap(once, 0, 2).matrix
    np.testing.assert_allclose(twice, matrix, atol=1e-14)


def test_row_ops_reject_bad_indices():
    matrix = np.eye(2)
    with pytest.raises(ValueError):
        oracle_row_add(matrix, 0, 0)
    with pytest.raises(ValueError):
        oracle_row_swap(matrix, 0, 2)


def test_trace_example_and_rejections():
    result = oracle_trace([[INV_SQRT2, 0], [0, INV_SQRT2]])
    assert abs(result.scalar - math.sqrt(2)) < 1e-14
    assert abs(result.predicted_probability - 2 / 8) < 1e-14
    with pytest.raises(ValueError):
        oracle_trace(np.ones((2, 3)))
    with pytest.raises(ValueError):
        oracle_trace(np.ones((3, 3)))


def test_trace_invariant_under_transpose():
    rng = np.random.default_rng(3)
    matrix = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    direct = oracle_trace(matrix).scalar
    transposed = oracle_trace(np.array(oracle_transpose(matrix).matrix)).scalar
    assert abs(direct - transposed) < 1e-14


def test_transpose_twice_is_identity_and_probability_one():
    rng = np.random.default_rng(4)
    matrix = rng.standard_normal((2, 8)) + 1j * rng.standard_normal((2, 8))
    result = oracle_transpose(matrix)
    assert result.predicted_probability == 1.0
    assert np.array(result.matrix).shape == (8, 2)
    back = oracle_transpose(result.matrix)
    np.testing.assert_allclose(back.matrix, matrix, atol=1e-14)


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        oracle_row_add([[1, 2], [3]], 0, 1)


def test_dense_unitary_cnot_standard_form():
    layout = RegisterLayout((("A", 1), ("B", 1)))
    op = ControlledOp(Projector(register_values=(("A", 1),)), FlipQubit("B", 0))
    expected = np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )
    np.testing.assert_array_equal(dense_unitary_of(op, layout), expected)


def test_dense_unitary_rejects_wide_layouts():
    layout = RegisterLayout((("A", 13),))
    op = ControlledOp(Projector(), FlipQubit("A", 0))
    with pytest.raises(ValueError):
        dense_unitary_of(op, layout)
