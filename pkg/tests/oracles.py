"""Independent reference implementations used as test oracles.

Nothing here imports computation code from the package under test beyond
plain data types; the point is to provide second routes to the same
numbers (series matrix exponential, loop-based partial trace, random
physical states) so the closed forms in the package are checked against
genuinely different arithmetic.
"""
import numpy as np


def expm_taylor(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring a Taylor series."""
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a)
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
    small = a / (2.0**squarings)
    term = np.eye(a.shape[0], dtype=complex)
    total = term.copy()
    for k in range(1, 60):
        term = term @ small / k
        total += term
        if np.linalg.norm(term) < 1e-20 * np.linalg.norm(total):
            break
    for _ in range(squarings):
        total = total @ total
    return total


def naive_partial_trace(rho: np.ndarray, n: int, keep) -> np.ndarray:
    """Partial trace by explicit bit loops; qubit 1 is the leftmost bit."""
    keep = sorted(keep)
    traced = [q for q in range(1, n + 1) if q not in keep]
    k = len(keep)
    out = np.zeros((2**k, 2**k), dtype=complex)
    dim = 2**n

    def bit(index: int, qubit: int) -> int:
        return (index >> (n - qubit)) & 1

    for i in range(dim):
        for j in range(dim):
            if any(bit(i, q) != bit(j, q) for q in traced):
                continue
            row = 0
            col = 0
            for q in keep:
                row = (row << 1) | bit(i, q)
                col = (col << 1) | bit(j, q)
            out[row, col] += rho[i, j]
    return out


def random_density_matrix(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix via a Wishart-style construction."""
    dim = 2**n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def random_pure_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def shannon_bits(probabilities) -> float:
    p = np.asarray(probabilities, dtype=float)
    p = p[p > 1e-12]
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0
