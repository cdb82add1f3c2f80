"""Dense complex linear algebra for small multi-qubit operators.

All matrices are numpy ``complex128`` arrays. Qubit ordering convention,
used everywhere in the package: qubit 1 is the most significant bit of a
computational-basis index. An operator ``a`` acting on qubit 1 of an
n-qubit register is therefore ``kron(a, eye(2**(n-1)))``, and the basis
state ``|q1 q2 ... qn>`` has index ``q1*2**(n-1) + ... + qn``.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionError, NumericsError

HERMITICITY_TOL = 1e-10
PSD_EIG_FLOOR = -1e-10

ID2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (ID2, PAULI_X, PAULI_Y, PAULI_Z):
    _m.setflags(write=False)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product ``a @ b`` with an explicit shape check."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionError(
            f"cannot multiply shapes {a.shape} and {b.shape}"
        )
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, left factor on the more significant bits."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def _check_square_qubit_dim(a: np.ndarray, n_qubits: int) -> None:
    dim = 2**n_qubits
    if a.shape != (dim, dim):
        raise DimensionError(
            f"expected a {dim}x{dim} matrix for {n_qubits} qubit(s), got {a.shape}"
        )


def partial_trace(rho: np.ndarray, n_qubits: int, keep: "list[int] | tuple[int, ...]") -> np.ndarray:
    """Trace out every qubit not listed in ``keep`` (1-based labels).

    The kept qubits stay in register order, so ``keep=[2, 3]`` on a
    3-qubit state returns the joint state of qubits 2 and 3.
    """
    rho = np.asarray(rho, dtype=complex)
    if n_qubits < 1:
        raise DimensionError(f"n_qubits must be >= 1, got {n_qubits}")
    _check_square_qubit_dim(rho, n_qubits)
    kept = sorted(set(int(q) for q in keep))
    if not kept:
        raise DimensionError("keep must name at least one qubit")
    if kept[0] < 1 or kept[-1] > n_qubits:
        raise DimensionError(
            f"keep={list(keep)} out of range for {n_qubits} qubit(s)"
        )
    tensor = rho.reshape([2] * (2 * n_qubits))
    row = list(range(n_qubits))
    col = [n_qubits + i for i in range(n_qubits)]
    kept0 = [q - 1 for q in kept]
    for i in range(n_qubits):
        if i not in kept0:
            col[i] = row[i]
    out = [row[i] for i in kept0] + [col[i] for i in kept0]
    reduced = np.einsum(tensor, row + col, out)
    dim = 2 ** len(kept0)
    return np.ascontiguousarray(reduced.reshape(dim, dim))


def herm_eig(a: np.ndarray) -> "tuple[np.ndarray, np.ndarray]":
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, q)`` with eigenvalues ``w`` ascending and eigenvectors in
    the columns of ``q``. The input is symmetrized before solving; inputs
    that are not Hermitian within tolerance are rejected.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    defect = np.linalg.norm(a - a.conj().T)
    if defect > HERMITICITY_TOL * max(1.0, np.linalg.norm(a)):
        raise NumericsError(
            f"matrix is not Hermitian: |a - a^dag| = {defect:.3e}"
        )
    w, q = np.linalg.eigh((a + a.conj().T) / 2.0)
    return w, q


def psd_sqrt(a: np.ndarray) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as round-off and clipped to
    zero; anything more negative is an error.
    """
    w, q = herm_eig(a)
    if w.min() < PSD_EIG_FLOOR:
        raise NumericsError(
            f"matrix is not PSD: smallest eigenvalue {w.min():.3e}"
        )
    root = (q * np.sqrt(np.clip(w, 0.0, None))) @ q.conj().T
    return (root + root.conj().T) / 2.0


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance ``0.5 * ||a - b||_1`` between two Hermitian matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    w = np.linalg.eigvalsh((diff + diff.conj().T) / 2.0)
    return float(np.abs(w).sum() / 2.0)
