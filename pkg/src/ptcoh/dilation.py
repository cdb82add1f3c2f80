"""Ancilla dilation circuit that realizes the non-unitary PT propagator.

The propagator ``u_pt(r, t)`` is proportional to the combination
``cos(theta) U1 + sin(theta) sigma_z`` of two genuine unitaries, so it can
be embedded in a unitary circuit on the work register plus one ancilla:

1. rotate the ancilla (prepared in ``|0>``) by ``V(theta)``,
2. apply ``U1(phi)`` to the target qubit when the ancilla is ``|0>``,
3. apply ``sigma_z`` to the target qubit when the ancilla is ``|1>``,
4. Hadamard the ancilla and postselect it on ``|0>``.

The postselected work state equals the renormalized direct evolution, and
the success probability is ``scale^2 * tr(u rho u^dag) / 2`` where
``scale`` is the proportionality constant (1 at ``r = 0``, so probability
1/2 for any normalized input there).

Internally the ancilla occupies the least significant bit, so a basis
index is ``work_index * 2 + ancilla_bit``; callers never see the enlarged
register.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericsError, StateError
from .evolution import PTParams, Regime, embed_on_qubit, u_pt
from .linalg import PAULI_X, PAULI_Z, kron
from .states import QState

IDENTITY_TOL = 1e-12
POSTSELECT_FLOOR = 1e-12
PROBABILITY_TOL = 1e-10
_EPS = math.ulp(1.0)


@dataclass(frozen=True)
class DilationAngles:
    """Circuit angles in radians and the propagator proportionality constant."""

    theta: float
    phi: float
    success_scale: float


@dataclass(frozen=True)
class CircuitOutcome:
    """Postselected work state and the probability of the kept branch."""

    postselected_state: QState
    success_probability: float


def _stabilized(
    cos_t: float, sin_t: float, cos_p: float, sin_p: float, scale: float, conditioning: float
) -> "tuple[float, float, float, float, float]":
    """Project both (cos, sin) pairs exactly onto the unit circle.

    The closed forms satisfy the circle identity exactly in real
    arithmetic, but their shared denominators vanish at the regime
    boundary, amplifying round-off by ~1/conditioning. A raw defect
    within that budget is round-off and is normalized away; anything
    larger is a formula error and raises.
    """
    budget = max(IDENTITY_TOL, 64.0 * _EPS / conditioning)
    for name, c, s in (("theta", cos_t, sin_t), ("phi", cos_p, sin_p)):
        defect = abs(c * c + s * s - 1.0)
        if defect > budget:
            raise NumericsError(
                f"{name} components off the unit circle by {defect:.3e} "
                f"(round-off budget {budget:.3e})"
            )
    h_t = math.hypot(cos_t, sin_t)
    h_p = math.hypot(cos_p, sin_p)
    return (cos_t / h_t, sin_t / h_t, cos_p / h_p, sin_p / h_p, scale)


def angle_components(r: float, t: float) -> "tuple[float, float, float, float, float]":
    """Return ``(cos_theta, sin_theta, cos_phi, sin_phi, scale)``.

    These satisfy ``cos_theta * U1(phi) + sin_theta * sigma_z =
    scale * u_pt(r, t)`` in every regime; each (cos, sin) pair lies on the
    unit circle by construction.
    """
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise StateError(f"t must be a finite non-negative real, got {t}")
    params = PTParams.from_r(r)
    r = params.r
    if params.regime is Regime.EXCEPTIONAL:
        big = math.sqrt(1.0 + 2.0 * t * t)
        small = math.sqrt(1.0 + t * t)
        return (small / big, t / big, 1.0 / small, -t / small, 1.0 / big)
    if params.regime is Regime.UNBROKEN:
        g = params.g
        half = g * t / 2.0
        den = 1.0 - r * r * math.cos(g * t)
        num = 1.0 - (r * math.cos(half)) ** 2
        if den <= 0.0 or num <= 0.0:
            raise NumericsError(
                f"degenerate angle denominator at r={r}, t={t}: den={den:.3e}, num={num:.3e}"
            )
        cos_theta = math.sqrt(num / den)
        sin_theta = r * math.sin(half) / math.sqrt(den)
        cos_phi = g * math.cos(half) / (2.0 * math.sqrt(num))
        sin_phi = -math.sin(half) / math.sqrt(num)
        scale = g / (2.0 * math.sqrt(den))
        return _stabilized(cos_theta, sin_theta, cos_phi, sin_phi, scale, min(num, den))
    kappa = params.kappa
    ch = math.cosh(kappa * t)
    sh = math.sinh(kappa * t)
    den = r * r * math.cosh(2.0 * kappa * t) - 1.0
    num = (r * ch) ** 2 - 1.0
    if den <= 0.0 or num <= 0.0:
        raise NumericsError(
            f"degenerate angle denominator at r={r}, t={t}: den={den:.3e}, num={num:.3e}"
        )
    cos_theta = math.sqrt(num / den)
    sin_theta = r * sh / math.sqrt(den)
    cos_phi = kappa * ch / math.sqrt(num)
    sin_phi = -sh / math.sqrt(num)
    scale = kappa / math.sqrt(den)
    return _stabilized(cos_theta, sin_theta, cos_phi, sin_phi, scale, min(num, den))


def dilation_angles(r: float, t: float) -> DilationAngles:
    """Circuit angles for strength ``r`` and time ``t``, with self-checks."""
    cos_t, sin_t, cos_p, sin_p, scale = angle_components(r, t)
    for name, c, s in (("theta", cos_t, sin_t), ("phi", cos_p, sin_p)):
        defect = abs(c * c + s * s - 1.0)
        if defect > IDENTITY_TOL:
            raise NumericsError(
                f"{name} components off the unit circle by {defect:.3e} at r={r}, t={t}"
            )
    if not (0.0 < scale <= 1.0 + IDENTITY_TOL):
        raise NumericsError(f"success scale {scale:.6g} outside (0, 1] at r={r}, t={t}")
    return DilationAngles(
        theta=math.atan2(sin_t, cos_t),
        phi=math.atan2(sin_p, cos_p),
        success_scale=min(scale, 1.0),
    )


def gate_v(theta: float) -> np.ndarray:
    """Real rotation ``[[cos, -sin], [sin, cos]]`` applied to the ancilla."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_u1(phi: float) -> np.ndarray:
    """Symmetric unitary ``[[cos, i sin], [i sin, cos]]`` on the target qubit."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)


def gate_u2() -> np.ndarray:
    """The fixed second branch unitary, ``sigma_z``."""
    return PAULI_Z.copy()


def gate_hadamard() -> np.ndarray:
    """Hadamard gate for the ancilla basis change before postselection."""
    return (PAULI_X + PAULI_Z) / math.sqrt(2.0)


_PROJ0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
_PROJ1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
_PROJ0.setflags(write=False)
_PROJ1.setflags(write=False)


@functools.lru_cache(maxsize=512)
def _circuit_parts(n: int, target_qubit: int, r: float, t: float):
    """Assembled circuit matrix, angles, and embedded propagator.

    Sweeps and benchmarks reuse one (r, t) for many input states, so the
    state-independent pieces are cached; both returned arrays are frozen.
    """
    angles = dilation_angles(r, t)
    dim = 2**n
    eye_work = np.eye(dim, dtype=complex)

    u1_work = embed_on_qubit(gate_u1(angles.phi), n, target_qubit)
    u2_work = embed_on_qubit(gate_u2(), n, target_qubit)
    v_full = kron(eye_work, gate_v(angles.theta))
    cu1_full = kron(u1_work, _PROJ0) + kron(eye_work, _PROJ1)
    cu2_full = kron(eye_work, _PROJ0) + kron(u2_work, _PROJ1)
    h_full = kron(eye_work, gate_hadamard())

    circuit = h_full @ cu2_full @ cu1_full @ v_full
    propagator = embed_on_qubit(u_pt(r, t), n, target_qubit)
    circuit.setflags(write=False)
    propagator.setflags(write=False)
    return angles, circuit, propagator


def run_dilation(work: QState, target_qubit: int, r: float, t: float) -> CircuitOutcome:
    """Run the dilation circuit and postselect the ancilla on ``|0>``.

    The returned state lives on the original work register; the ancilla is
    traced out by the postselection. Raises if the kept branch has
    vanishing probability.
    """
    n = work.n_qubits
    angles, circuit, u = _circuit_parts(n, target_qubit, float(r), float(t))
    rho_full = kron(work.rho, _PROJ0)
    rho_out = circuit @ rho_full @ circuit.conj().T

    block = rho_out[0::2, 0::2]
    prob = float(block.trace().real)
    if prob < POSTSELECT_FLOOR:
        raise NumericsError(f"postselection probability {prob:.3e} below floor")

    # Independent route: success probability must equal scale^2 tr(u rho u^dag)/2.
    expected = angles.success_scale**2 * float((u @ work.rho @ u.conj().T).trace().real) / 2.0
    if abs(prob - expected) > PROBABILITY_TOL:
        raise NumericsError(
            f"success probability mismatch: circuit {prob!r} vs analytic {expected!r}"
        )
    if prob > 1.0 + PROBABILITY_TOL:
        raise NumericsError(f"success probability {prob!r} exceeds 1")
    return CircuitOutcome(
        postselected_state=QState(n, block / prob),
        success_probability=min(prob, 1.0),
    )
