"""Classical reference results, computed the slow and obvious way.

Ground truth for the verification suite.  Everything here uses plain index
loops and divmod arithmetic so that no logic is shared with the simulator:
a bug cannot hide on both sides of a comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gates import ControlledOp, FlipQubit, HadamardLayer, McxNetwork, RegisterSwapGate, SwapQubits, SwapRegisters
from .state import RegisterLayout

DENSE_QUBIT_CAP = 12

__all__ = [
    "OracleResult",
    "oracle_row_add",
    "oracle_row_swap",
    "oracle_trace",
    "oracle_transpose",
    "dense_unitary_of",
    "dense_mcx",
    "mcx_reference_action",
]


@dataclass
class OracleResult:
    matrix: list | None = None
    scalar: complex | None = None
    normalization_G: float | None = None
    predicted_probability: float = 0.0


def _to_rows(matrix) -> list[list[complex]]:
    rows = [[complex(value) for value in row] for row in matrix]
    if not rows or not rows[0]:
        raise ValueError("matrix must be 2-D and nonempty")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise ValueError("ragged matrix")
    return rows


def _check_pair(k: int, l: int, num_rows: int) -> None:
    for value in (k, l):
        if not 0 <= value < num_rows:
            raise ValueError(f"row index {value} out of range for {num_rows} rows")
    if k == l:
        raise ValueError("row indices k and l must be distinct")


def oracle_row_add(matrix, k: int, l: int) -> OracleResult:
    """Row l += row k, with the normalization constant and success law."""
    a = _to_rows(matrix)
    _check_pair(k, l, len(a))
    out = [list(row) for row in a]
    for j in range(len(a[0])):
        out[l][j] = a[l][j] + a[k][j]
    g_squared = 0.0
    for i in range(len(a)):
        if i == l:
            continue
        for j in range(len(a[0])):
            g_squared += abs(a[i][j]) ** 2
    for j in range(len(a[0])):
        g_squared += abs(a[k][j] + a[l][j]) ** 2
    return OracleResult(
        matrix=out,
        normalization_G=math.sqrt(g_squared),
        predicted_probability=g_squared / 8.0,
    )


def oracle_row_swap(matrix, k: int, l: int) -> OracleResult:
    a = _to_rows(matrix)
    _check_pair(k, l, len(a))
    out = [list(row) for row in a]
    out[k], out[l] = list(a[l]), list(a[k])
    return OracleResult(matrix=out, predicted_probability=1.0 / 24.0)


def oracle_trace(matrix) -> OracleResult:
    a = _to_rows(matrix)
    if len(a) != len(a[0]):
        raise ValueError("trace needs a square matrix")
    n = len(a).bit_length() - 1
    if (1 << n) != len(a):
        raise ValueError("dimension must be a power of two")
    total = 0j
    for i in range(len(a)):
        total += a[i][i]
    return OracleResult(
        scalar=total,
        predicted_probability=abs(total) ** 2 / float(2 ** (3 * n)),
    )


def oracle_transpose(matrix) -> OracleResult:
    a = _to_rows(matrix)
    out = [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]
    return OracleResult(matrix=out, predicted_probability=1.0)


# --- dense gate matrices -----------------------------------------------------

def _naive_fields(layout: RegisterLayout) -> dict[str, tuple[int, int]]:
    # recompute offsets from the declaration alone
    fields = {}
    used = 0
    for name, width in layout.registers:
        fields[name] = (used, width)
        used += width
    return fields


def _field_value(index: int, offset: int, width: int, total: int) -> int:
    below = total - offset - width
    return (index // (2 ** below)) % (2 ** width)


def _replace_field(index: int, offset: int, width: int, total: int, value: int) -> int:
    below = total - offset - width
    old = _field_value(index, offset, width, total)
    return index - old * (2 ** below) + value * (2 ** below)


def dense_unitary_of(op, layout: RegisterLayout | None = None) -> np.ndarray:
    """Brute-force dense matrix of a gate (or expansion network).

    Capped at 12 layout qubits; intended for cross-checking the simulator's
    permutation application, so it never reuses the simulator's index code.
    """
    if isinstance(op, McxNetwork):
        dim = 2 ** op.num_qubits
        if op.num_qubits > DENSE_QUBIT_CAP:
            raise ValueError(f"network too wide for dense construction: {op.num_qubits}")
        unitary = np.zeros((dim, dim), dtype=np.complex128)
        for source in range(dim):
            image = source
            for gate in op.gates:
                *controls, target = gate.qubits
                if all((image // (2 ** c)) % 2 == 1 for c in controls):
                    if (image // (2 ** target)) % 2 == 1:
                        image -= 2 ** target
                    else:
                        image += 2 ** target
            unitary[image, source] = 1.0
        return unitary

    if layout is None:
        raise ValueError("layout required for register-level gates")
    total = sum(width for _, width in layout.registers)
    if total > DENSE_QUBIT_CAP:
        raise ValueError(f"layout too wide for dense construction: {total} qubits")
    dim = 2 ** total
    fields = _naive_fields(layout)

    if isinstance(op, HadamardLayer):
        targeted = set()
        for target in op.targets:
            if isinstance(target, str):
                offset, width = fields[target]
                targeted.update(range(offset, offset + width))
            else:
                name, qubit = target
                offset, width = fields[name]
                targeted.add(offset + qubit)
        h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
        eye = np.eye(2, dtype=np.complex128)
        unitary = np.eye(1, dtype=np.complex128)
        for position in range(total):
            unitary = np.kron(unitary, h if position in targeted else eye)
        return unitary

    if isinstance(op, RegisterSwapGate):
        oa, wa = fields[op.reg_a]
        ob, wb = fields[op.reg_b]
        if wa != wb:
            raise ValueError("register widths differ")
        unitary = np.zeros((dim, dim), dtype=np.complex128)
        for source in range(dim):
            va = _field_value(source, oa, wa, total)
            vb = _field_value(source, ob, wb, total)
            image = _replace_field(source, oa, wa, total, vb)
            image = _replace_field(image, ob, wb, total, va)
            unitary[image, source] = 1.0
        return unitary

    if isinstance(op, ControlledOp):
        conditions: list[tuple[int, int, int]] = []  # (offset, width, value)
        for name, value in op.projector.register_values:
            offset, width = fields[name]
            conditions.append((offset, width, value))
        for name, qubit, bit in op.projector.qubit_bits:
            offset, _ = fields[name]
            conditions.append((offset + qubit, 1, bit))
        action = op.action
        unitary = np.zeros((dim, dim), dtype=np.complex128)
        for source in range(dim):
            matched = all(
                _field_value(source, offset, width, total) == value
                for offset, width, value in conditions
            )
            if not matched:
                unitary[source, source] = 1.0
                continue
            if isinstance(action, FlipQubit):
                offset, _ = fields[action.register]
                position = offset + action.qubit
                bit = _field_value(source, position, 1, total)
                image = _replace_field(source, position, 1, total, 1 - bit)
            elif isinstance(action, SwapRegisters):
                oa, wa = fields[action.reg_a]
                ob, wb = fields[action.reg_b]
                va = _field_value(source, oa, wa, total)
                vb = _field_value(source, ob, wb, total)
                image = _replace_field(source, oa, wa, total, vb)
                image = _replace_field(image, ob, wb, total, va)
            elif isinstance(action, SwapQubits):
                (na, qa), (nb, qb) = action.pair_a, action.pair_b
                pa = fields[na][0] + qa
                pb = fields[nb][0] + qb
                ba = _field_value(source, pa, 1, total)
                bb = _field_value(source, pb, 1, total)
                image = _replace_field(source, pa, 1, total, bb)
                image = _replace_field(image, pb, 1, total, ba)
            else:
                raise TypeError(f"unknown action {action!r}")
            unitary[image, source] = 1.0
        return unitary

    raise TypeError(f"unknown op {op!r}")


def mcx_reference_action(data_bits: int, num_controls: int, control_polarity) -> int:
    """Direct definition of a multi-controlled X on controls 0..c-1, target c."""
    polarity = tuple(control_polarity)
    matched = all(
        (data_bits // (2 ** i)) % 2 == polarity[i] for i in range(num_controls)
    )
    if matched:
        target = 2 ** num_controls
        if (data_bits // target) % 2 == 1:
            return data_bits - target
        return data_bits + target
    return data_bits


def dense_mcx(num_controls: int, control_polarity=None) -> np.ndarray:
    """Dense multi-controlled X on c+1 qubits (controls 0..c-1, target c)."""
    if control_polarity is None:
        control_polarity = (1,) * num_controls
    dim = 2 ** (num_controls + 1)
    unitary = np.zeros((dim, dim), dtype=np.complex128)
    for source in range(dim):
        unitary[mcx_reference_action(source, num_controls, control_polarity), source] = 1.0
    return unitary
