"""Pauli-basis state tomography with a physicality repair step.

A measurement record holds expectation values of multi-qubit Pauli
operators. Reconstruction inverts them linearly,

    rho = 2**-n * (I + sum_P value_P * P),

then projects onto the physical set (positive semidefinite, unit trace)
by the eigenvalue water-filling method: negative eigenvalues are zeroed
and their deficit is spread uniformly over the remaining ones, preserving
the trace. The identity coefficient is pinned to 1 regardless of any
supplied all-identity value, since it carries no information.

Records serialize to JSON as
``{"labels": [...], "values": [...], "noise_sigma": s, "seed": k}``.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError, NumericsError, StateError
from .linalg import ID2, PAULI_X, PAULI_Y, PAULI_Z, herm_eig
from .states import QState

_PAULI_1Q = {"I": ID2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}
_LABEL_RE = re.compile(r"^[IXYZ]+$")
IMAG_TOL = 1e-12
MAX_REPAIR_PASSES = 500


def pauli_matrix(label: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis; first letter acts on qubit 1."""
    if not _LABEL_RE.match(label or ""):
        raise DimensionError(f"bad Pauli label {label!r}, expected letters from IXYZ")
    out = _PAULI_1Q[label[0]]
    for ch in label[1:]:
        out = np.kron(out, _PAULI_1Q[ch])
    return out


def pauli_labels(n_qubits: int, include_identity: bool = False) -> "list[str]":
    """All length-n Pauli labels in lexicographic order, identity optional."""
    if n_qubits < 1:
        raise DimensionError(f"n_qubits must be >= 1, got {n_qubits}")
    labels = ["".join(t) for t in itertools.product("IXYZ", repeat=n_qubits)]
    if not include_identity:
        labels.remove("I" * n_qubits)
    return labels


@dataclass(frozen=True)
class MeasurementRecord:
    """Pauli expectation values plus the noise settings that produced them."""

    labels: "tuple[str, ...]"
    values: "tuple[float, ...]"
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        labels = tuple(str(l) for l in self.labels)
        values = tuple(float(v) for v in self.values)
        if len(labels) != len(values):
            raise DimensionError(
                f"{len(labels)} labels but {len(values)} values"
            )
        if not labels:
            raise DimensionError("record must contain at least one label")
        if len(set(labels)) != len(labels):
            raise DimensionError("duplicate Pauli labels in record")
        width = len(labels[0])
        for label in labels:
            if not _LABEL_RE.match(label) or len(label) != width:
                raise DimensionError(f"bad Pauli label {label!r}")
        sigma = float(self.noise_sigma)
        if not sigma >= 0.0:
            raise StateError(f"noise_sigma must be >= 0, got {sigma}")
        bound = 1.0 + 10.0 * sigma + 1e-9
        for label, value in zip(labels, values):
            if not np.isfinite(value) or abs(value) > bound:
                raise StateError(
                    f"value {value!r} for {label} outside the plausible range +-{bound:.4g}"
                )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "noise_sigma", sigma)
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def n_qubits(self) -> int:
        return len(self.labels[0])


@dataclass(frozen=True)
class ReconstructionResult:
    """Repaired state, RMS misfit to the record, and repair pass count."""

    state: QState
    residual: float
    iterations: int


def measure_paulis(state: QState, labels: "list[str] | tuple[str, ...]") -> MeasurementRecord:
    """Exact expectation values ``tr(rho P)`` for the requested labels."""
    values = []
    for label in labels:
        op = pauli_matrix(label)
        if op.shape != state.rho.shape:
            raise DimensionError(
                f"label {label!r} does not match a {state.n_qubits}-qubit state"
            )
        raw = complex(np.trace(state.rho @ op))
        if abs(raw.imag) > IMAG_TOL:
            raise NumericsError(
                f"expectation of {label} has imaginary part {raw.imag:.3e}"
            )
        values.append(raw.real)
    return MeasurementRecord(labels=tuple(labels), values=tuple(values))


def add_noise(record: MeasurementRecord, sigma: float, seed: int) -> MeasurementRecord:
    """Add i.i.d. Gaussian noise to every value; the seed fixes the draw."""
    sigma = float(sigma)
    if not sigma >= 0.0:
        raise StateError(f"sigma must be >= 0, got {sigma}")
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=len(record.values)) if sigma > 0.0 else np.zeros(len(record.values))
    values = tuple(float(v + e) for v, e in zip(record.values, noise))
    return replace(record, values=values, noise_sigma=sigma, seed=int(seed))


def _water_fill(w: np.ndarray) -> "tuple[np.ndarray, int]":
    """Zero negative eigenvalues, spreading the deficit over the rest."""
    v = w.copy()
    dim = v.size
    passes = 0
    for _ in range(MAX_REPAIR_PASSES):
        order = np.argsort(v)
        lowest = order[0]
        if v[lowest] >= 0.0:
            return v, passes
        passes += 1
        deficit = v[lowest]
        v[lowest] = 0.0
        positive = v > 0.0
        count = int(positive.sum())
        if count == 0:
            raise NumericsError("eigenvalue repair ran out of positive mass")
        v[positive] += deficit / count
    raise NumericsError(f"eigenvalue repair did not converge in {MAX_REPAIR_PASSES} passes")


def reconstruct(record: MeasurementRecord) -> ReconstructionResult:
    """Linear inversion followed by the water-filling physicality repair.

    The record must contain every non-identity Pauli of its width,
    otherwise the inversion is underdetermined and a ``DimensionError``
    is raised. The residual is the RMS difference between the repaired
    state's expectation values and the recorded ones, over the
    non-identity labels.
    """
    n = record.n_qubits
    needed = set(pauli_labels(n))
    have = dict(zip(record.labels, record.values))
    missing = needed - set(record.labels)
    if missing:
        raise DimensionError(
            f"record is informationally incomplete: {len(missing)} label(s) missing, "
            f"e.g. {sorted(missing)[:3]}"
        )
    dim = 2**n
    rho = np.eye(dim, dtype=complex)
    for label in needed:
        rho += have[label] * pauli_matrix(label)
    rho /= dim

    w, q = herm_eig(rho)
    repaired_w, passes = _water_fill(w)
    repaired = (q * repaired_w) @ q.conj().T
    repaired = (repaired + repaired.conj().T) / 2.0
    state = QState(n, repaired)

    errors = [
        float(np.trace(state.rho @ pauli_matrix(label)).real) - have[label]
        for label in sorted(needed)
    ]
    residual = float(np.sqrt(np.mean(np.square(errors))))
    return ReconstructionResult(state=state, residual=residual, iterations=passes)


def record_to_dict(record: MeasurementRecord) -> dict:
    return {
        "labels": list(record.labels),
        "values": [float(v) for v in record.values],
        "noise_sigma": record.noise_sigma,
        "seed": record.seed,
    }


def record_to_json(record: MeasurementRecord) -> str:
    return json.dumps(record_to_dict(record))


def record_from_dict(payload: dict) -> MeasurementRecord:
    try:
        return MeasurementRecord(
            labels=tuple(payload["labels"]),
            values=tuple(payload["values"]),
            noise_sigma=float(payload.get("noise_sigma", 0.0)),
            seed=int(payload.get("seed", 0)),
        )
    except (KeyError, TypeError) as exc:
        raise StateError(f"malformed measurement record: {exc}") from exc


def record_from_json(text: str) -> MeasurementRecord:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateError(f"record is not valid JSON: {exc}") from exc
    return record_from_dict(payload)
