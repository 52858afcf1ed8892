"""Dense state-vector core: register layouts and matrix amplitude encoding.

Basis convention: registers are packed into the basis index
most-significant-first in declaration order, and qubit 0 of a register is
its most significant bit, so the basis label |i> of a register is simply
the binary expansion of i.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Mapping, Sequence

import numpy as np

MAX_QUBITS = 26

PART_NORM_TOL = 1e-9
DECODE_MASS_TOL = 1e-9

__all__ = [
    "MAX_QUBITS",
    "RegisterLayout",
    "StateVector",
    "EncodedMatrix",
    "AncillaVector",
    "encode_matrix",
    "matrix_state",
    "prepare_product_state",
    "decode_matrix",
]


def _frozen(arr) -> np.ndarray:
    """Return ``arr`` as a read-only, C-contiguous complex128 array."""
    out = np.asarray(arr, dtype=np.complex128)
    if out is arr and not out.flags.writeable and out.flags.c_contiguous:
        return out
    out = np.ascontiguousarray(out)
    if out is arr:
        out = out.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered, named qubit registers making up one basis index.

    ``registers`` is a tuple of (name, width) pairs.  The first register
    owns the most significant bits of the index.
    """

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        regs = tuple((str(name), int(width)) for name, width in self.registers)
        object.__setattr__(self, "registers", regs)
        if not regs:
            raise ValueError("layout needs at least one register")
        names = [name for name, _ in regs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate register names in {names}")
        for name, width in regs:
            if width < 1:
                raise ValueError(f"register {name!r} must have width >= 1, got {width}")
        total = sum(width for _, width in regs)
        if total > MAX_QUBITS:
            raise ValueError(f"{total} qubits exceeds the dense-array cap of {MAX_QUBITS}")

    @cached_property
    def _fields(self) -> dict[str, tuple[int, int]]:
        fields: dict[str, tuple[int, int]] = {}
        offset = 0
        for name, width in self.registers:
            fields[name] = (offset, width)
            offset += width
        return fields

    @cached_property
    def total_qubits(self) -> int:
        return sum(width for _, width in self.registers)

    @property
    def size(self) -> int:
        return 1 << self.total_qubits

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.registers)

    def __contains__(self, name: str) -> bool:
        return name in self._fields

    def _field(self, name: str) -> tuple[int, int]:
        try:
            return self._fields[name]
        except KeyError:
            raise ValueError(f"unknown register {name!r}") from None

    def width(self, name: str) -> int:
        return self._field(name)[1]

    def offset(self, name: str) -> int:
        """Global position of the register's qubit 0 (position 0 is the MSB)."""
        return self._field(name)[0]

    def field_shift(self, name: str) -> int:
        """Number of index bits below the register's field."""
        offset, width = self._field(name)
        return self.total_qubits - offset - width

    def field_mask(self, name: str) -> int:
        offset, width = self._field(name)
        return ((1 << width) - 1) << self.field_shift(name)

    def extract(self, indices, name: str):
        """Value of register ``name`` in each basis index (scalar or array)."""
        offset, width = self._field(name)
        return (indices >> self.field_shift(name)) & ((1 << width) - 1)

    def pattern(self, values: Mapping[str, int]) -> tuple[int, int]:
        """Resolve a register->value mapping to a (mask, bits) index pattern."""
        mask = 0
        bits = 0
        for name, value in values.items():
            offset, width = self._field(name)
            value = int(value)
            if not 0 <= value < (1 << width):
                raise ValueError(
                    f"value {value} out of range for register {name!r} ({width} qubits)"
                )
            mask |= self.field_mask(name)
            bits |= value << self.field_shift(name)
        return mask, bits

    def basis_index(self, values: Mapping[str, int]) -> int:
        """Index of the basis state assigning a value to every register."""
        mask, bits = self.pattern(values)
        if mask != self.size - 1:
            missing = [name for name in self.names if name not in values]
            raise ValueError(f"assignment incomplete, missing {missing}")
        return bits


@dataclass(frozen=True)
class StateVector:
    """Immutable amplitude vector over a register layout."""

    layout: RegisterLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.amplitudes)
        if arr.ndim != 1 or arr.size != self.layout.size:
            raise ValueError(
                f"expected {self.layout.size} amplitudes for "
                f"{self.layout.total_qubits} qubits, got shape {arr.shape}"
            )
        object.__setattr__(self, "amplitudes", arr)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def amplitude(self, values: Mapping[str, int]) -> complex:
        """Amplitude of one fully specified basis state."""
        return complex(self.amplitudes[self.layout.basis_index(values)])

    def checksum(self) -> str:
        return hashlib.sha256(self.amplitudes.tobytes()).hexdigest()[:16]


def _pow2_at_least(x: int) -> int:
    # register widths are >= 1, so dimensions never drop below 2
    return 1 << max(1, (x - 1).bit_length())


def _exact_log2(x: int) -> int:
    n = x.bit_length() - 1
    if x <= 0 or (1 << n) != x:
        raise ValueError(f"{x} is not a power of two")
    return n


@dataclass(frozen=True)
class EncodedMatrix:
    """A matrix zero-padded to power-of-two shape and scaled to unit
    Frobenius norm, ready for amplitude encoding.

    ``frobenius_scale`` is the factor divided out; multiplying it back in
    (after stripping padding) recovers the original matrix.
    """

    entries: np.ndarray
    original_rows: int
    original_cols: int
    frobenius_scale: float

    def __post_init__(self):
        arr = _frozen(self.entries)
        if arr.ndim != 2:
            raise ValueError("entries must be a 2-D array")
        _exact_log2(arr.shape[0])
        _exact_log2(arr.shape[1])
        if arr.shape[0] < 2 or arr.shape[1] < 2:
            raise ValueError("encoded dimensions start at 2 (one qubit per axis)")
        if not (0 < self.original_rows <= arr.shape[0]):
            raise ValueError("original_rows inconsistent with entries")
        if not (0 < self.original_cols <= arr.shape[1]):
            raise ValueError("original_cols inconsistent with entries")
        if np.any(arr[self.original_rows:, :] != 0) or np.any(arr[:, self.original_cols:] != 0):
            raise ValueError("padding region must be exactly zero")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"entries must have unit Frobenius norm, got {norm!r}")
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def row_qubits(self) -> int:
        return _exact_log2(self.rows)

    @property
    def col_qubits(self) -> int:
        return _exact_log2(self.cols)

    def restored(self) -> np.ndarray:
        """Original matrix: padding stripped, Frobenius scale multiplied back."""
        return self.entries[: self.original_rows, : self.original_cols] * self.frobenius_scale


def encode_matrix(matrix) -> EncodedMatrix:
    """Normalize and zero-pad an arbitrary nonzero matrix for encoding."""
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("matrix must be 2-D and nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    scale = float(np.linalg.norm(arr))
    if scale == 0.0:
        raise ValueError("all-zero matrix cannot be normalized for encoding")
    rows = _pow2_at_least(arr.shape[0])
    cols = _pow2_at_least(arr.shape[1])
    padded = np.zeros((rows, cols), dtype=np.complex128)
    padded[: arr.shape[0], : arr.shape[1]] = arr / scale
    return EncodedMatrix(
        entries=padded,
        original_rows=arr.shape[0],
        original_cols=arr.shape[1],
        frobenius_scale=scale,
    )


def matrix_state(
    encoded: EncodedMatrix, row_register: str = "R", col_register: str = "C"
) -> StateVector:
    """Two-register state whose amplitude at |i>|j> is entry (i, j)."""
    layout = RegisterLayout(
        ((row_register, encoded.row_qubits), (col_register, encoded.col_qubits))
    )
    return StateVector(layout, encoded.entries.ravel())


@dataclass(frozen=True)
class AncillaVector:
    """Auxiliary superposition loaded next to the encoded matrix.

    kind "row-add": (|k> + |l>)/sqrt(2) on one row-sized register.
    kind "row-swap": (|l>|k> + |k>|k> + |l>|l>)/sqrt(3) on two row-sized
    registers read most-significant-first.
    """

    kind: str
    k: int
    l: int
    num_row_qubits: int

    def __post_init__(self):
        if self.kind not in ("row-add", "row-swap"):
            raise ValueError(f"unknown ancilla kind {self.kind!r}")
        if self.num_row_qubits < 1:
            raise ValueError("num_row_qubits must be >= 1")
        n = 1 << self.num_row_qubits
        for value in (self.k, self.l):
            if not 0 <= value < n:
                raise ValueError(f"row index {value} out of range for {n} rows")
        if self.k == self.l:
            raise ValueError("row indices k and l must be distinct")

    def amplitudes(self) -> np.ndarray:
        n = self.num_row_qubits
        if self.kind == "row-add":
            vec = np.zeros(1 << n, dtype=np.complex128)
            vec[self.k] = vec[self.l] = 1.0 / math.sqrt(2.0)
        else:
            vec = np.zeros(1 << (2 * n), dtype=np.complex128)
            weight = 1.0 / math.sqrt(3.0)
            vec[(self.l << n) | self.k] = weight
            vec[(self.k << n) | self.k] = weight
            vec[(self.l << n) | self.l] = weight
        return vec


def prepare_product_state(
    layout: RegisterLayout,
    parts: Sequence[tuple[Sequence[str], np.ndarray]],
) -> StateVector:
    """Tensor together amplitude tables over consecutive register groups.

    Each part covers one run of consecutive registers (in layout order) and
    must carry a unit-norm table of matching dimension.  Registers not
    covered by any part start in |0>.
    """
    names = list(layout.names)
    spans: list[tuple[int, int, np.ndarray]] = []
    covered: set[int] = set()
    for part_names, table in parts:
        part_names = [str(n) for n in part_names]
        if not part_names:
            raise ValueError("empty register group in product part")
        for name in part_names:
            if name not in layout:
                raise ValueError(f"unknown register {name!r}")
        start = names.index(part_names[0])
        if names[start : start + len(part_names)] != part_names:
            raise ValueError(
                f"part registers {part_names} are not consecutive in layout order"
            )
        span = range(start, start + len(part_names))
        if covered & set(span):
            raise ValueError(f"register group {part_names} overlaps another part")
        covered.update(span)
        width = sum(layout.width(n) for n in part_names)
        arr = np.asarray(table, dtype=np.complex128).ravel()
        if arr.size != (1 << width):
            raise ValueError(
                f"part over {part_names} needs {1 << width} amplitudes, got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("part amplitudes must be finite")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > PART_NORM_TOL:
            raise ValueError(f"part over {part_names} has norm {norm!r}, expected 1")
        spans.append((start, len(part_names), arr))

    spans.sort(key=lambda s: s[0])
    factors: list[np.ndarray] = []
    pos = 0
    span_at = {start: (count, arr) for start, count, arr in spans}
    while pos < len(names):
        if pos in span_at:
            count, arr = span_at[pos]
            factors.append(arr)
            pos += count
        else:
            ground = np.zeros(1 << layout.width(names[pos]), dtype=np.complex128)
            ground[0] = 1.0
            factors.append(ground)
            pos += 1
    amplitudes = reduce(np.kron, factors)
    return StateVector(layout, amplitudes)


def decode_matrix(
    state: StateVector,
    row_register: str,
    col_register: str,
    fixed: Mapping[str, int],
) -> np.ndarray:
    """Read a matrix back out of a state, pinning every other register.

    Rejects the read when more than DECODE_MASS_TOL of the squared
    amplitude mass lies outside the pinned subspace.  No renormalization
    is applied to the extracted entries.
    """
    layout = state.layout
    if row_register == col_register:
        raise ValueError("row and column registers must differ")
    wanted = {row_register, col_register} | set(fixed)
    if row_register in fixed or col_register in fixed:
        raise ValueError("row/column registers cannot also be pinned")
    if wanted != set(layout.names):
        extra = sorted(wanted - set(layout.names))
        missing = sorted(set(layout.names) - wanted)
        raise ValueError(
            f"decode must mention every register exactly once "
            f"(unknown: {extra}, unpinned: {missing})"
        )
    _, base = layout.pattern(fixed)
    n = layout.width(row_register)
    m = layout.width(col_register)
    row_part = np.arange(1 << n, dtype=np.int64) << layout.field_shift(row_register)
    col_part = np.arange(1 << m, dtype=np.int64) << layout.field_shift(col_register)
    grid = base + row_part[:, None] + col_part[None, :]
    out = state.amplitudes[grid]
    total = float(np.sum(np.abs(state.amplitudes) ** 2))
    inside = float(np.sum(np.abs(out) ** 2))
    if total - inside > DECODE_MASS_TOL:
        raise ValueError(
            f"{total - inside!r} of the amplitude mass lies outside the pinned "
            "subspace; refusing to decode"
        )
    return out
