"""State-vector simulator and verifier for amplitude-encoded matrix circuits.

Four routines operate on a matrix stored as a two-register amplitude table:
row addition, row swapping, trace readout, and transpose.  Each run reports
its post-selection probability, the closed-form law for that probability,
the decoded output, and a primitive gate tally; the oracle module recomputes
everything classically so the two can be compared.
"""
from .algorithms import (
    PostSelection,
    RunReport,
    post_select,
    run_row_add,
    run_row_swap,
    run_trace,
    run_transpose,
    run_transpose_square,
)
from .complexity import CLAIMS, ScalingReport, measure_scaling
from .gates import (
    ControlledOp,
    FlipQubit,
    GateCounts,
    GateTally,
    HadamardLayer,
    McxNetwork,
    Projector,
    RegisterSwapGate,
    SwapQubits,
    SwapRegisters,
    apply_controlled,
    apply_gate,
    apply_hadamard_layer,
    apply_register_swap,
    decompose_mcx,
    tally_gates,
)
from .matio import load_matrix, save_matrix
from .oracle import (
    OracleResult,
    dense_mcx,
    dense_unitary_of,
    oracle_row_add,
    oracle_row_swap,
    oracle_trace,
    oracle_transpose,
)
from .state import (
    MAX_QUBITS,
    AncillaVector,
    EncodedMatrix,
    RegisterLayout,
    StateVector,
    decode_matrix,
    encode_matrix,
    matrix_state,
    prepare_product_state,
)
from .verify import SCALING_WIDTHS, CheckResult, run_all_checks

__version__ = "0.1.0"

__all__ = [
    "AncillaVector",
    "CheckResult",
    "CLAIMS",
    "ControlledOp",
    "EncodedMatrix",
    "FlipQubit",
    "GateCounts",
    "GateTally",
    "HadamardLayer",
    "MAX_QUBITS",
    "McxNetwork",
    "OracleResult",
    "PostSelection",
    "Projector",
    "RegisterLayout",
    "RegisterSwapGate",
    "RunReport",
    "SCALING_WIDTHS",
    "ScalingReport",
    "StateVector",
    "SwapQubits",
    "SwapRegisters",
    "apply_controlled",
    "apply_gate",
    "apply_hadamard_layer",
    "apply_register_swap",
    "decode_matrix",
    "decompose_mcx",
    "dense_mcx",
    "dense_unitary_of",
    "encode_matrix",
    "load_matrix",
    "matrix_state",
    "measure_scaling",
    "oracle_row_add",
    "oracle_row_swap",
    "oracle_trace",
    "oracle_transpose",
    "post_select",
    "prepare_product_state",
    "run_all_checks",
    "run_row_add",
    "run_row_swap",
    "run_trace",
    "run_transpose",
    "run_transpose_square",
    "save_matrix",
    "tally_gates",
]
