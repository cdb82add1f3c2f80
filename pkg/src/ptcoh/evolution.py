"""Single-qubit PT-symmetric generator and its analytic propagator.

The generator is ``H = sigma_x + i r sigma_z`` with gain/loss strength
``r >= 0``. Because ``H^2 = (1 - r^2) I``, the propagator
``u = exp(-i H t)`` has a closed form in each regime:

* unbroken (r < 1), with ``omega = sqrt(1 - r^2)``:
  ``u = cos(omega t) I - i sin(omega t)/omega * H``
* exceptional (r = 1, where H is nilpotent): ``u = I - i t H`` exactly
* broken (r > 1), with ``kappa = sqrt(r^2 - 1)``:
  ``u = cosh(kappa t) I - i sinh(kappa t)/kappa * H``

``u`` is not unitary for r > 0, so density matrices evolved with it must
be renormalized; :func:`evolve_local` does that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionError, NumericsError, StateError
from .linalg import kron
from .states import QState

EXCEPTIONAL_BAND = 1e-12
TRACE_FLOOR = 1e-300


class Regime(str, Enum):
    UNBROKEN = "unbroken"
    EXCEPTIONAL = "exceptional"
    BROKEN = "broken"


@dataclass(frozen=True)
class PTParams:
    """Derived constants of the generator at a given strength ``r``.

    ``g = 2 sqrt(1 - r^2)`` is the spectral gap in the unbroken regime and
    0 otherwise; ``kappa = sqrt(r^2 - 1)`` is the growth rate in the broken
    regime and 0 otherwise. Strengths within 1e-12 of 1 are classified as
    exceptional.
    """

    r: float
    regime: Regime
    g: float
    kappa: float

    @classmethod
    def from_r(cls, r: float) -> "PTParams":
        r = float(r)
        if not math.isfinite(r) or r < 0.0:
            raise StateError(f"r must be a finite non-negative real, got {r}")
        if abs(r - 1.0) <= EXCEPTIONAL_BAND:
            return cls(r=r, regime=Regime.EXCEPTIONAL, g=0.0, kappa=0.0)
        if r < 1.0:
            return cls(r=r, regime=Regime.UNBROKEN, g=2.0 * math.sqrt(1.0 - r * r), kappa=0.0)
        return cls(r=r, regime=Regime.BROKEN, g=0.0, kappa=math.sqrt(r * r - 1.0))


def h_pt(r: float) -> np.ndarray:
    """The generator ``sigma_x + i r sigma_z`` as a 2x2 array."""
    PTParams.from_r(r)
    return np.array([[1j * r, 1.0], [1.0, -1j * r]], dtype=complex)


def u_pt(r: float, t: float) -> np.ndarray:
    """Closed-form propagator ``exp(-i H t)`` for ``t >= 0``."""
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise StateError(f"t must be a finite non-negative real, got {t}")
    params = PTParams.from_r(r)
    h = h_pt(r)
    eye = np.eye(2, dtype=complex)
    if params.regime is Regime.EXCEPTIONAL:
        return eye - 1j * t * h
    if params.regime is Regime.UNBROKEN:
        omega = params.g / 2.0
        return math.cos(omega * t) * eye - 1j * (math.sin(omega * t) / omega) * h
    kappa = params.kappa
    return math.cosh(kappa * t) * eye - 1j * (math.sinh(kappa * t) / kappa) * h


def embed_on_qubit(op: np.ndarray, n_qubits: int, target_qubit: int) -> np.ndarray:
    """Place a single-qubit operator on ``target_qubit`` of an n-qubit register."""
    if not (1 <= target_qubit <= n_qubits):
        raise DimensionError(
            f"target_qubit {target_qubit} out of range for {n_qubits} qubit(s)"
        )
    left = np.eye(2 ** (target_qubit - 1), dtype=complex)
    right = np.eye(2 ** (n_qubits - target_qubit), dtype=complex)
    return kron(kron(left, op), right)


def evolve_local(state: QState, target_qubit: int, r: float, t: float) -> QState:
    """Evolve one qubit with the PT propagator and renormalize.

    Returns ``U rho U^dag / tr(U rho U^dag)`` where ``U`` acts as
    ``u_pt(r, t)`` on ``target_qubit`` and as the identity elsewhere.
    Pure inputs stay pure.
    """
    u = embed_on_qubit(u_pt(r, t), state.n_qubits, target_qubit)
    evolved = u @ state.rho @ u.conj().T
    norm = float(evolved.trace().real)
    if norm <= TRACE_FLOOR:
        raise NumericsError(f"evolved state has vanishing trace {norm:.3e}")
    return QState(state.n_qubits, evolved / norm)
