"""Relative-entropy coherence and its split into local and global parts.

All entropies are in bits (base-2 logarithms) with respect to the fixed
computational basis ``{|0>, |1>}`` on each qubit:

* total coherence     ``C_T(rho) = S(diag(rho)) - S(rho)``
* local coherence     ``C_L(rho) = C_T(rho_1 x ... x rho_n)``, the total
  coherence of the tensor product of the single-qubit marginals, which
  equals the sum of the marginals' own total coherences
* global coherence    ``C_G(rho) = C_T(rho) - C_L(rho)``

Both routes to ``C_L`` are computed and cross-checked on every call.
Eigenvalues at or below 1e-12 are excluded from entropy sums.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericsError
from .linalg import partial_trace
from .states import QState

EIG_FLOOR = 1e-12
ROUTE_AGREEMENT_TOL = 1e-10
TRIPLE_TOL = 1e-9


@dataclass(frozen=True)
class CoherenceTriple:
    """Total, global, and local coherence of one state, in bits."""

    c_total: float
    c_global: float
    c_local: float

    def __post_init__(self) -> None:
        if self.c_total < -TRIPLE_TOL or self.c_local < -TRIPLE_TOL:
            raise NumericsError(
                f"negative coherence beyond round-off: C_T={self.c_total:.3e}, "
                f"C_L={self.c_local:.3e}"
            )
        gap = abs(self.c_total - (self.c_global + self.c_local))
        if gap > TRIPLE_TOL:
            raise NumericsError(f"C_T != C_G + C_L, mismatch {gap:.3e}")


def _entropy_bits(values: np.ndarray) -> float:
    p = values[values > EIG_FLOOR]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log2(p)).sum())


def _vn_entropy_arr(rho: np.ndarray) -> float:
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    return _entropy_bits(w)


def _diag_entropy_arr(rho: np.ndarray) -> float:
    return _entropy_bits(np.diag(rho).real.copy())


def _c_total_arr(rho: np.ndarray) -> float:
    return _diag_entropy_arr(rho) - _vn_entropy_arr(rho)


def _marginals(state: QState) -> "list[np.ndarray]":
    return [
        partial_trace(state.rho, state.n_qubits, [q])
        for q in range(1, state.n_qubits + 1)
    ]


def _kron_chain(mats: "list[np.ndarray]") -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def vn_entropy(state: QState) -> float:
    """von Neumann entropy in bits."""
    return _vn_entropy_arr(state.rho)


def c_total(state: QState) -> float:
    """Total coherence: diagonal entropy minus von Neumann entropy."""
    return _c_total_arr(state.rho)


def local_coherence_from_product(state: QState) -> float:
    """``C_L`` computed from the tensor product of the single-qubit marginals."""
    return _c_total_arr(_kron_chain(_marginals(state)))


def local_coherence_marginal_sum(state: QState) -> float:
    """``C_L`` computed as the sum of each marginal's total coherence."""
    return float(sum(_c_total_arr(m) for m in _marginals(state)))


def c_local(state: QState) -> float:
    """Local coherence; both computation routes are asserted to agree."""
    marginals = _marginals(state)
    product_route = _c_total_arr(_kron_chain(marginals))
    sum_route = float(sum(_c_total_arr(m) for m in marginals))
    if abs(product_route - sum_route) > ROUTE_AGREEMENT_TOL:
        raise NumericsError(
            f"local coherence routes disagree: {product_route!r} vs {sum_route!r}"
        )
    return product_route


def c_global(state: QState) -> float:
    """Global coherence: the part of ``C_T`` not captured by the marginals."""
    return c_total(state) - c_local(state)


def coherence_triple(state: QState) -> CoherenceTriple:
    """All three measures at once, sharing one set of marginals."""
    ct = c_total(state)
    cl = c_local(state)
    return CoherenceTriple(c_total=ct, c_global=ct - cl, c_local=cl)
