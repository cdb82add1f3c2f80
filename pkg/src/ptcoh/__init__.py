"""Coherence dynamics of qubits under local PT-symmetric evolution.

The package computes analytic non-unitary propagators for the generator
``sigma_x + i r sigma_z``, realizes them with an ancilla dilation
circuit, tracks total/local/global coherence of Bell- and GHZ-class
states, reconstructs states from Pauli measurements, and runs sweep
experiments. A FastAPI service exposes everything over HTTP and the
``ptcoh`` CLI is a thin client of that service.
"""

__version__ = "0.1.0"

from .coherence import (
    CoherenceTriple,
    c_global,
    c_local,
    c_total,
    coherence_triple,
    local_coherence_from_product,
    local_coherence_marginal_sum,
    vn_entropy,
)
from .dilation import (
    CircuitOutcome,
    DilationAngles,
    angle_components,
    dilation_angles,
    gate_hadamard,
    gate_u1,
    gate_u2,
    gate_v,
    run_dilation,
)
from .errors import DimensionError, NumericsError, PtcohError, StateError
from .evolution import PTParams, Regime, embed_on_qubit, evolve_local, h_pt, u_pt
from .linalg import (
    dagger,
    herm_eig,
    kron,
    matmul,
    partial_trace,
    psd_sqrt,
    trace_distance,
)
from .states import (
    FamilyKind,
    QState,
    StateFamily,
    fidelity,
    make_state,
    pseudopure,
    purity,
    random_pure_state,
    state_from_dict,
    state_from_json,
    state_to_dict,
    state_to_json,
)
from .sweeps import (
    BenchmarkReport,
    ContourGrid,
    Method,
    SweepSpec,
    TimeSeries,
    contour_to_json,
    contour_to_payload,
    default_t_max,
    dilation_benchmark,
    format_csv,
    run_contour,
    run_time_sweep,
    time_grid,
    timeseries_to_csv,
)
from .tomography import (
    MeasurementRecord,
    ReconstructionResult,
    add_noise,
    measure_paulis,
    pauli_labels,
    pauli_matrix,
    reconstruct,
    record_from_dict,
    record_from_json,
    record_to_dict,
    record_to_json,
)

__all__ = [
    "__version__",
    "BenchmarkReport",
    "CircuitOutcome",
    "CoherenceTriple",
    "ContourGrid",
    "DilationAngles",
    "DimensionError",
    "FamilyKind",
    "MeasurementRecord",
    "Method",
    "NumericsError",
    "PTParams",
    "PtcohError",
    "QState",
    "ReconstructionResult",
    "Regime",
    "StateError",
    "StateFamily",
    "SweepSpec",
    "TimeSeries",
    "add_noise",
    "angle_components",
    "c_global",
    "c_local",
    "c_total",
    "coherence_triple",
    "contour_to_json",
    "contour_to_payload",
    "dagger",
    "default_t_max",
    "dilation_angles",
    "dilation_benchmark",
    "embed_on_qubit",
    "evolve_local",
    "fidelity",
    "format_csv",
    "gate_hadamard",
    "gate_u1",
    "gate_u2",
    "gate_v",
    "h_pt",
    "herm_eig",
    "kron",
    "local_coherence_from_product",
    "local_coherence_marginal_sum",
    "make_state",
    "matmul",
    "measure_paulis",
    "partial_trace",
    "pauli_labels",
    "pauli_matrix",
    "pseudopure",
    "psd_sqrt",
    "purity",
    "random_pure_state",
    "reconstruct",
    "record_from_dict",
    "record_from_json",
    "record_to_dict",
    "record_to_json",
    "run_contour",
    "run_dilation",
    "run_time_sweep",
    "state_from_dict",
    "state_from_json",
    "state_to_dict",
    "state_to_json",
    "time_grid",
    "timeseries_to_csv",
    "trace_distance",
    "u_pt",
    "vn_entropy",
]
