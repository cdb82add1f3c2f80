#!/usr/bin/env python3
"""Regenerate the golden CSVs for the CLI regression tests.

This script is the oracle pipeline: it shares no code with the ptcoh
package. The propagator comes from a scaled-and-squared Taylor series,
reduced states from explicit index loops, and the coherence columns from
the entropy definitions. Output format mirrors the CLI contract
(t,C_T,C_G,C_L,purity header, 12 significant digits) so files can be
compared value by value.

Usage: python3 tools/make_golden.py [output_dir]   (default tests/golden)
"""
import pathlib
import sys

import numpy as np

DT = 0.05
CASES = [
    ("evolve_bell_r0.6.csv", 0.6, 10.0),
    ("evolve_bell_r1.4.csv", 1.4, 25.0),
]


def expm_series(a: np.ndarray) -> np.ndarray:
    """exp(a) by scaling and squaring with a full-precision Taylor sum."""
    norm = np.linalg.norm(a)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5))) if norm > 0.5 else 0)
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


def reduced_single(rho: np.ndarray, n: int, qubit: int) -> np.ndarray:
    """Single-qubit marginal by explicit index loops (qubit 1 = leftmost bit)."""
    shift = n - qubit
    out = np.zeros((2, 2), dtype=complex)
    dim = 2**n
    for i in range(dim):
        for j in range(dim):
            if (i & ~(1 << shift)) == (j & ~(1 << shift)):
                out[(i >> shift) & 1, (j >> shift) & 1] += rho[i, j]
    return out


def entropy_bits(values: np.ndarray) -> float:
    p = values[values > 1e-12]
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


def c_total_of(rho: np.ndarray) -> float:
    diag = entropy_bits(np.diag(rho).real.copy())
    spec = entropy_bits(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0))
    return diag - spec


def columns_for(r: float, t_max: float):
    h = np.array([[1j * r, 1.0], [1.0, -1j * r]], dtype=complex)
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1.0 / np.sqrt(2.0)
    rho0 = np.outer(bell, bell.conj())
    steps = int(np.floor(t_max / DT + 1e-9))
    rows = []
    for i in range(steps + 1):
        t = i * DT
        u = np.kron(expm_series(-1j * h * t), np.eye(2, dtype=complex))
        rho = u @ rho0 @ u.conj().T
        rho /= rho.trace().real
        marg = [reduced_single(rho, 2, q) for q in (1, 2)]
        delta = np.kron(marg[0], marg[1])
        ct = c_total_of(rho)
        cl = c_total_of(delta)
        pur = float((rho @ rho).trace().real)
        rows.append((t, ct, ct - cl, cl, pur))
    return rows


def fmt(x: float) -> str:
    if -1e-9 < x < 0.0:
        x = 0.0
    return format(x, ".12g")


def main() -> None:
    out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/golden")
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, r, t_max in CASES:
        lines = ["t,C_T,C_G,C_L,purity"]
        for row in columns_for(r, t_max):
            lines.append(",".join(fmt(v) for v in row))
        path = out_dir / name
        path.write_text("\n".join(lines) + "\n")
        print(f"wrote {path} ({len(lines) - 1} rows)")


if __name__ == "__main__":
    main()
