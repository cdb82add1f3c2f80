"""Qubit density matrices, reference state families, and state (de)serialization.

A :class:`QState` is an immutable, eagerly validated density matrix. The
two parametrized families used throughout the experiments are

* ``bell``:  cos(alpha)|00> + sin(alpha)|11>   (2 qubits)
* ``ghz``:   cos(beta)|000> + sin(beta)|111>   (3 qubits)

States serialize to JSON as ``{"n_qubits": n, "rho": [[[re, im], ...], ...]}``
with one ``[re, im]`` pair per matrix entry, row major.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionError, StateError
from .linalg import psd_sqrt

HERMITICITY_TOL = 1e-9
TRACE_TOL = 1e-9
EIG_TOL = -1e-9


@dataclass(frozen=True)
class QState:
    """An n-qubit density matrix, validated on construction.

    The matrix must be Hermitian within 1e-9, have unit trace within 1e-9,
    and have no eigenvalue below -1e-9. The stored array is a read-only
    copy, so instances are safe to share across threads.
    """

    n_qubits: int
    rho: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.n_qubits, int) or self.n_qubits < 1:
            raise DimensionError(f"n_qubits must be a positive int, got {self.n_qubits!r}")
        rho = np.array(self.rho, dtype=complex)
        dim = 2**self.n_qubits
        if rho.shape != (dim, dim):
            raise DimensionError(
                f"expected a {dim}x{dim} matrix for {self.n_qubits} qubit(s), got {rho.shape}"
            )
        if not np.isfinite(rho.view(float)).all():
            raise StateError("density matrix contains non-finite entries")
        herm_defect = np.linalg.norm(rho - rho.conj().T)
        if herm_defect > HERMITICITY_TOL:
            raise StateError(f"density matrix is not Hermitian: defect {herm_defect:.3e}")
        tr = rho.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateError(f"density matrix trace is {tr:.12g}, expected 1")
        w_min = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0).min()
        if w_min < EIG_TOL:
            raise StateError(f"density matrix has negative eigenvalue {w_min:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


class FamilyKind(str, Enum):
    BELL_ALPHA = "bell"
    GHZ_BETA = "ghz"


@dataclass(frozen=True)
class StateFamily:
    """A reference family member: the kind plus its mixing angle in radians."""

    kind: FamilyKind
    angle: float

    def __post_init__(self) -> None:
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        angle = float(self.angle)
        if not (0.0 <= angle <= 2.0 * math.pi):
            raise DimensionError(f"angle must lie in [0, 2*pi], got {angle}")
        object.__setattr__(self, "angle", angle)

    @property
    def n_qubits(self) -> int:
        return 2 if self.kind is FamilyKind.BELL_ALPHA else 3


def make_state(family: StateFamily) -> QState:
    """Build the pure density matrix of a family member."""
    n = family.n_qubits
    vec = np.zeros(2**n, dtype=complex)
    vec[0] = math.cos(family.angle)
    vec[-1] = math.sin(family.angle)
    return QState(n, np.outer(vec, vec.conj()))


def pseudopure(epsilon: float, n_qubits: int) -> QState:
    """Mixture ``(1 - eps)/2**n * I + eps |0...0><0...0|``."""
    epsilon = float(epsilon)
    if not (0.0 <= epsilon <= 1.0):
        raise StateError(f"epsilon must lie in [0, 1], got {epsilon}")
    if n_qubits < 1:
        raise DimensionError(f"n_qubits must be >= 1, got {n_qubits}")
    dim = 2**n_qubits
    rho = (1.0 - epsilon) / dim * np.eye(dim, dtype=complex)
    rho[0, 0] += epsilon
    return QState(n_qubits, rho)


def purity(state: QState) -> float:
    """``tr(rho^2)``, 1 for pure states and ``2**-n`` for maximally mixed ones."""
    return float((state.rho @ state.rho).trace().real)


def fidelity(a: QState, b: QState) -> float:
    """Uhlmann fidelity ``(tr sqrt(sqrt(a) b sqrt(a)))^2``, symmetric in a, b."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"fidelity needs equal sizes, got {a.n_qubits} and {b.n_qubits} qubits"
        )
    root_a = psd_sqrt(a.rho)
    inner = root_a @ b.rho @ root_a
    value = float(np.trace(psd_sqrt(inner)).real) ** 2
    return min(max(value, 0.0), 1.0)


def random_pure_state(n_qubits: int, rng: np.random.Generator) -> QState:
    """Haar-ish random pure state (normalized complex Gaussian vector)."""
    dim = 2**n_qubits
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    vec /= np.linalg.norm(vec)
    return QState(n_qubits, np.outer(vec, vec.conj()))


def state_to_dict(state: QState) -> dict:
    """JSON-ready dict with entries as [re, im] pairs, row major."""
    rho = [
        [[float(z.real), float(z.imag)] for z in row]
        for row in state.rho
    ]
    return {"n_qubits": state.n_qubits, "rho": rho}


def state_to_json(state: QState) -> str:
    return json.dumps(state_to_dict(state))


def state_from_dict(payload: dict) -> QState:
    try:
        n = int(payload["n_qubits"])
        rows = payload["rho"]
        rho = np.array(
            [[complex(entry[0], entry[1]) for entry in row] for row in rows],
            dtype=complex,
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise StateError(f"malformed state payload: {exc}") from exc
    return QState(n, rho)


def state_from_json(text: str) -> QState:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateError(f"state file is not valid JSON: {exc}") from exc
    return state_from_dict(payload)
