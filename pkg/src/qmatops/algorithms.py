"""The four staged circuits: row addition, row swapping, trace, transpose.

Each runner encodes the matrix next to its auxiliary registers, applies the
labeled gate stages, and reads the result back out of the post-selected
state.  State labels phi_0, phi_1, ... mark the boundaries between stages,
starting from the prepared product state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .gates import (
    ControlledOp,
    FlipQubit,
    Gate,
    GateTally,
    HadamardLayer,
    Projector,
    RegisterSwapGate,
    SwapRegisters,
    apply_gate,
    tally_gates,
)
from .state import (
    AncillaVector,
    EncodedMatrix,
    RegisterLayout,
    StateVector,
    decode_matrix,
    prepare_product_state,
)

ZERO_PROBABILITY_FLOOR = 1e-300

__all__ = [
    "PostSelection",
    "StepState",
    "RunReport",
    "post_select",
    "run_row_add",
    "run_row_swap",
    "run_trace",
    "run_transpose",
    "run_transpose_square",
]


@dataclass
class PostSelection:
    """Outcome of projecting onto a register pattern and renormalizing.

    ``renormalized_state`` is None when the projected mass is zero; that is
    a legitimate zero-probability outcome, not an error.
    """

    pattern: dict[str, int]
    probability: float
    renormalized_state: StateVector | None


def post_select(state: StateVector, pattern: Mapping[str, int]) -> PostSelection:
    mask, bits = state.layout.pattern(pattern)
    indices = np.arange(state.layout.size, dtype=np.int64)
    selected = (indices & mask) == bits
    amplitudes = state.amplitudes
    probability = float(np.sum(np.abs(amplitudes[selected]) ** 2))
    renormalized = None
    if probability > ZERO_PROBABILITY_FLOOR:
        kept = np.where(selected, amplitudes, 0.0) / math.sqrt(probability)
        renormalized = StateVector(state.layout, kept)
    return PostSelection(dict(pattern), probability, renormalized)


@dataclass
class StepState:
    label: str
    norm_squared: float
    checksum: str
    state: StateVector


@dataclass
class RunReport:
    """Everything one circuit run produces.

    ``success_probability`` is the exact squared mass on the accepted
    measurement pattern; ``predicted_probability`` is the closed-form law
    for the same quantity.  ``output_matrix`` is the decoded matrix over
    the padded power-of-two shape (None for trace and for zero-probability
    outcomes); ``output_unpadded_shape`` says which block of it corresponds
    to the caller's original matrix.
    """

    algorithm: str
    success_probability: float
    predicted_probability: float
    gate_tally: GateTally
    frobenius_scale: float
    output_matrix: np.ndarray | None = None
    output_unpadded_shape: tuple[int, int] | None = None
    recovered_trace: complex | None = None
    normalization: float | None = None
    post_selection: PostSelection | None = None
    step_states: list[StepState] | None = None


Step = tuple[str, list[tuple[str, Gate]]]


def _plain_step(label: str, *gates: Gate) -> Step:
    return (label, [(label, gate) for gate in gates])


def _snapshot(label: str, state: StateVector) -> StepState:
    return StepState(label, state.norm_squared, state.checksum(), state)


def _run_circuit(
    initial: StateVector,
    steps: Sequence[Step],
    record_steps: bool,
    after_step: Callable[[str, StateVector], None] | None = None,
):
    state = initial
    records: list[StepState] | None = [_snapshot("phi_0", initial)] if record_steps else None
    trace: list[tuple[str, Gate]] = []
    for position, (label, gates) in enumerate(steps, start=1):
        for tally_label, gate in gates:
            state = apply_gate(state, gate)
            trace.append((tally_label, gate))
        if after_step is not None:
            after_step(label, state)
        if records is not None:
            records.append(_snapshot(f"phi_{position}", state))
    tally = tally_gates(trace, initial.layout)
    return state, tally, records


def _check_rows(num_rows: int, k: int, l: int) -> None:
    for value in (k, l):
        if not 0 <= value < num_rows:
            raise ValueError(f"row index {value} out of range for {num_rows} rows")
    if k == l:
        raise ValueError("row indices k and l must be distinct")


# --- row addition ------------------------------------------------------------

def _row_add_steps(k: int, l: int) -> list[Step]:
    return [
        _plain_step(
            "step2-mark-source-branch",
            ControlledOp(Projector(register_values=(("R2", k),)), FlipQubit("B1", 0)),
        ),
        _plain_step(
            "step3-mark-target-row",
            ControlledOp(
                Projector(register_values=(("R1", k), ("B1", 0))), FlipQubit("B2", 0)
            ),
        ),
        _plain_step(
            "step4-cswap-rows",
            ControlledOp(Projector(register_values=(("B2", 1),)), SwapRegisters("R1", "R2")),
        ),
        _plain_step(
            "step5-mark-useful",
            ControlledOp(
                Projector(register_values=(("B1", 0), ("B2", 0))), FlipQubit("B3", 0)
            ),
        ),
        _plain_step("step6-hadamard-mix", HadamardLayer(("B1", "B2"))),
    ]


def run_row_add(matrix: EncodedMatrix, k: int, l: int, record_steps: bool = False) -> RunReport:
    """Add row k into row l of the encoded matrix.

    Succeeds with probability G^2/8 where G is the norm of the classical
    result over the normalized entries; the decoded output is the classical
    row-added matrix divided by G.
    """
    _check_rows(matrix.rows, k, l)
    n, m = matrix.row_qubits, matrix.col_qubits
    layout = RegisterLayout(
        (("R1", n), ("C1", m), ("R2", n), ("B1", 1), ("B2", 1), ("B3", 1))
    )
    auxiliary = AncillaVector("row-add", k, l, n)
    initial = prepare_product_state(
        layout,
        ((("R1", "C1"), matrix.entries.ravel()), (("R2",), auxiliary.amplitudes())),
    )
    steps = _row_add_steps(k, l)
    state, tally, records = _run_circuit(initial, steps, record_steps)
    selection = post_select(state, {"B1": 0, "B2": 0, "B3": 0})

    entries = matrix.entries
    g_squared = float(
        np.sum(np.abs(np.delete(entries, l, axis=0)) ** 2)
        + np.sum(np.abs(entries[k] + entries[l]) ** 2)
    )

    output = None
    if selection.renormalized_state is not None:
        output = decode_matrix(
            selection.renormalized_state,
            "R1",
            "C1",
            {"R2": k, "B1": 0, "B2": 0, "B3": 0},
        )
        if records is not None:
            records.append(_snapshot(f"phi_{len(steps) + 1}", selection.renormalized_state))

    return RunReport(
        algorithm="row-add",
        success_probability=selection.probability,
        predicted_probability=g_squared / 8.0,
        gate_tally=tally,
        frobenius_scale=matrix.frobenius_scale,
        output_matrix=output,
        output_unpadded_shape=(matrix.original_rows, matrix.original_cols),
        normalization=math.sqrt(g_squared),
        post_selection=selection,
        step_states=records,
    )


# --- row swapping ------------------------------------------------------------

def _row_swap_steps(k: int, l: int) -> list[Step]:
    mark_distinct = ControlledOp(
        Projector(register_values=(("R2", l), ("C2", k))), FlipQubit("B1", 0)
    )
    tag_source = ControlledOp(
        Projector(register_values=(("R1", k), ("R2", l))), FlipQubit("B2", 0)
    )
    tag_target = ControlledOp(
        Projector(register_values=(("R1", l), ("C2", k))), FlipQubit("B2", 1)
    )
    swap_via_c2 = ControlledOp(
        Projector(qubit_bits=(("B2", 0, 1),)), SwapRegisters("R1", "C2")
    )
    swap_via_r2 = ControlledOp(
        Projector(qubit_bits=(("B2", 1, 1),)), SwapRegisters("R1", "R2")
    )
    # ancilla patterns (B1, B2) that hold a wanted branch after the swaps
    relabel = [
        ControlledOp(
            Projector(register_values=(("B1", 0), ("B2", 0b10))), FlipQubit("B3", 0)
        ),
        ControlledOp(
            Projector(register_values=(("B1", 0), ("B2", 0b01))), FlipQubit("B3", 0)
        ),
        ControlledOp(
            Projector(register_values=(("B1", 1), ("B2", 0b00))), FlipQubit("B3", 0)
        ),
    ]
    return [
        _plain_step("step2-mark-distinct-pair", mark_distinct),
        _plain_step("step3-mark-swap-rows", tag_source, tag_target),
        (
            "step4-cswap-rows",
            [("step4-cswap-via-c2", swap_via_c2), ("step4-cswap-via-r2", swap_via_r2)],
        ),
        _plain_step("step5-mark-useful", *relabel),
        _plain_step("step6-hadamard-mix", HadamardLayer(("B1", "B2"))),
    ]


def run_row_swap(matrix: EncodedMatrix, k: int, l: int, record_steps: bool = False) -> RunReport:
    """Exchange rows k and l of the encoded matrix.

    Succeeds with probability exactly 1/24 regardless of the entries, and
    the decoded output is the swapped matrix itself (unit proportionality).
    """
    _check_rows(matrix.rows, k, l)
    n, m = matrix.row_qubits, matrix.col_qubits
    layout = RegisterLayout(
        (("R1", n), ("C1", m), ("R2", n), ("C2", n), ("B1", 1), ("B2", 2), ("B3", 1))
    )
    auxiliary = AncillaVector("row-swap", k, l, n)
    initial = prepare_product_state(
        layout,
        ((("R1", "C1"), matrix.entries.ravel()), (("R2", "C2"), auxiliary.amplitudes())),
    )
    steps = _row_swap_steps(k, l)
    state, tally, records = _run_circuit(initial, steps, record_steps)
    selection = post_select(state, {"B1": 0, "B2": 0, "B3": 1})

    output = None
    if selection.renormalized_state is not None:
        output = decode_matrix(
            selection.renormalized_state,
            "R1",
            "C1",
            {"R2": l, "C2": k, "B1": 0, "B2": 0, "B3": 1},
        )
        if records is not None:
            records.append(_snapshot(f"phi_{len(steps) + 1}", selection.renormalized_state))

    return RunReport(
        algorithm="row-swap",
        success_probability=selection.probability,
        predicted_probability=1.0 / 24.0,
        gate_tally=tally,
        frobenius_scale=matrix.frobenius_scale,
        output_matrix=output,
        output_unpadded_shape=(matrix.original_rows, matrix.original_cols),
        normalization=1.0,
        post_selection=selection,
        step_states=records,
    )


# --- trace ---------------------------------------------------------------

def _trace_steps(n: int) -> list[Step]:
    marks = [
        ControlledOp(
            Projector(qubit_bits=(("R", j, bit), ("C", j, bit))), FlipQubit("A", j)
        )
        for j in range(n)
        for bit in (0, 1)
    ]
    full = (1 << n) - 1
    return [
        ("step2-mark-diagonal", [("step2-mark-diagonal", g) for g in marks]),
        _plain_step(
            "step3-mark-useful",
            ControlledOp(Projector(register_values=(("A", full),)), FlipQubit("B1", 0)),
        ),
        _plain_step("step4-hadamard-sum", HadamardLayer(("R", "C", "A"))),
        _plain_step(
            "step5-remark-useful",
            ControlledOp(
                Projector(register_values=(("R", 0), ("C", 0), ("A", 0), ("B1", 1))),
                FlipQubit("B2", 0),
            ),
        ),
    ]


def run_trace(matrix: EncodedMatrix, record_steps: bool = False) -> RunReport:
    """Read the trace of a square encoded matrix out of one amplitude.

    Success probability is |sum of diagonal entries|^2 / 2^(3n); the complex
    trace itself is recovered from the accepted amplitude before measurement,
    so a traceless matrix reports probability 0 with recovered trace 0.
    """
    if matrix.rows != matrix.cols:
        raise ValueError("trace needs a square matrix")
    n = matrix.row_qubits
    dimension = matrix.rows
    layout = RegisterLayout((("R", n), ("C", n), ("A", n), ("B1", 1), ("B2", 1)))
    initial = prepare_product_state(layout, ((("R", "C"), matrix.entries.ravel()),))
    steps = _trace_steps(n)

    def check_marking(label: str, current: StateVector) -> None:
        if label != "step2-mark-diagonal":
            return
        indices = np.arange(layout.size, dtype=np.int64)
        occupied = current.amplitudes != 0
        rows = layout.extract(indices, "R")
        cols = layout.extract(indices, "C")
        marks = layout.extract(indices, "A")
        expected = ~(rows ^ cols) & (dimension - 1)
        if np.any(occupied & (marks != expected)):
            raise RuntimeError("diagonal marking left the comparison register inconsistent")

    state, tally, records = _run_circuit(initial, steps, record_steps, check_marking)

    accepted = state.amplitude({"R": 0, "C": 0, "A": 0, "B1": 1, "B2": 1})
    recovered = accepted * math.sqrt(2.0 ** (3 * n))
    selection = post_select(state, {"B2": 1})
    trace_of_entries = complex(np.trace(matrix.entries))
    predicted = abs(trace_of_entries) ** 2 / float(2 ** (3 * n))

    if records is not None and selection.renormalized_state is not None:
        records.append(_snapshot(f"phi_{len(steps) + 1}", selection.renormalized_state))

    return RunReport(
        algorithm="trace",
        success_probability=selection.probability,
        predicted_probability=predicted,
        gate_tally=tally,
        frobenius_scale=matrix.frobenius_scale,
        recovered_trace=recovered,
        post_selection=selection,
        step_states=records,
    )


# --- transpose -----------------------------------------------------------

def run_transpose(matrix: EncodedMatrix, record_steps: bool = False) -> RunReport:
    """Transpose via one register exchange; succeeds with probability 1.

    The circuit is a pure permutation, so the amplitude mass outside the
    read-out subspace is exactly zero and the probability is reported as an
    exact 1.0 only after that is checked.
    """
    n, m = matrix.row_qubits, matrix.col_qubits
    layout = RegisterLayout((("D", m), ("R", n), ("C", m)))
    initial = prepare_product_state(layout, ((("R", "C"), matrix.entries.ravel()),))
    steps = [_plain_step("step2-swap-registers", RegisterSwapGate("D", "C"))]
    state, tally, records = _run_circuit(initial, steps, record_steps)

    indices = np.arange(layout.size, dtype=np.int64)
    leaked = state.amplitudes[layout.extract(indices, "C") != 0]
    if leaked.size and np.any(leaked != 0):
        success = 1.0 - float(np.sum(np.abs(leaked) ** 2)) / state.norm_squared
    else:
        success = 1.0

    output = decode_matrix(state, "D", "R", {"C": 0})
    return RunReport(
        algorithm="transpose",
        success_probability=success,
        predicted_probability=1.0,
        gate_tally=tally,
        frobenius_scale=matrix.frobenius_scale,
        output_matrix=output,
        output_unpadded_shape=(matrix.original_cols, matrix.original_rows),
        step_states=records,
    )


def run_transpose_square(matrix: EncodedMatrix, record_steps: bool = False) -> RunReport:
    """Transpose by padding to a square and exchanging the two registers.

    Needs no dedicated destination register; the swap acts on log2(side)
    qubit pairs where side is the larger padded dimension.  The returned
    output matrix is cut back to the main variant's (cols x rows) shape.
    """
    side = max(matrix.rows, matrix.cols)
    side_qubits = side.bit_length() - 1
    square = np.zeros((side, side), dtype=np.complex128)
    square[: matrix.rows, : matrix.cols] = matrix.entries
    layout = RegisterLayout((("R", side_qubits), ("C", side_qubits)))
    initial = prepare_product_state(layout, ((("R", "C"), square.ravel()),))
    steps = [_plain_step("step2-swap-registers", RegisterSwapGate("R", "C"))]
    state, tally, records = _run_circuit(initial, steps, record_steps)

    full = decode_matrix(state, "R", "C", {})
    output = full[: matrix.cols, : matrix.rows]
    return RunReport(
        algorithm="transpose-square",
        success_probability=1.0,
        predicted_probability=1.0,
        gate_tally=tally,
        frobenius_scale=matrix.frobenius_scale,
        output_matrix=output,
        output_unpadded_shape=(matrix.original_cols, matrix.original_rows),
        step_states=records,
    )
