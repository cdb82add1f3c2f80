"""Time sweeps, angle-time contour grids, and the dilation benchmark.

Every grid point is an independent pure computation from the initial
state (the propagator is evaluated at the point's own time, never
stepped), so results are identical for any thread count and any
evaluation order. Worker threads only fill preallocated slots by index.

CSV output carries columns ``t,C_T,C_G,C_L,purity`` plus
``success_prob`` for dilation sweeps, 12 significant digits. Contour
output is JSON with keys ``angles``, ``times``, ``C_T``, ``C_G``,
``C_L``; value matrices are indexed ``[angle][time]``. Negative
coherence values larger than -1e-9 are round-off and are clamped to 0
in both formats.
"""
from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coherence import CoherenceTriple, coherence_triple
from .dilation import run_dilation
from .errors import DimensionError, StateError
from .evolution import PTParams, Regime, evolve_local
from .linalg import partial_trace, trace_distance
from .states import FamilyKind, QState, StateFamily, make_state, purity

GRID_EPS = 1e-9
REDUCED_PAIRS = ((1, 2), (1, 3), (2, 3))
CSV_CLAMP = -1e-9


class Method(str, Enum):
    DIRECT = "direct"
    DILATION = "dilation"


def default_t_max(r: float) -> float:
    """Default sweep horizon: 10 in the unbroken regime, 25 otherwise."""
    return 10.0 if PTParams.from_r(r).regime is Regime.UNBROKEN else 25.0


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one time sweep."""

    family: StateFamily
    r: float
    t_max: float
    dt: float
    target_qubit: int = 1
    reduced_pair: "tuple[int, int] | None" = None
    method: Method = Method.DIRECT

    def __post_init__(self) -> None:
        PTParams.from_r(self.r)
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise StateError(f"dt must be positive, got {self.dt}")
        if not (self.t_max > 0.0 and math.isfinite(self.t_max)):
            raise StateError(f"t_max must be positive, got {self.t_max}")
        if self.dt > self.t_max * (1.0 + GRID_EPS):
            raise StateError(f"dt={self.dt} exceeds t_max={self.t_max}")
        if not (1 <= self.target_qubit <= self.family.n_qubits):
            raise DimensionError(
                f"target_qubit {self.target_qubit} out of range for {self.family.n_qubits} qubit(s)"
            )
        if self.reduced_pair is not None:
            pair = (int(self.reduced_pair[0]), int(self.reduced_pair[1]))
            if self.family.kind is not FamilyKind.GHZ_BETA:
                raise StateError("reduced_pair is only defined for the 3-qubit family")
            if pair not in REDUCED_PAIRS:
                raise StateError(f"reduced_pair must be one of {REDUCED_PAIRS}, got {pair}")
            object.__setattr__(self, "reduced_pair", pair)
        object.__setattr__(self, "method", Method(self.method))


@dataclass(frozen=True)
class TimeSeries:
    """Sweep results, one entry per grid time."""

    times: "tuple[float, ...]"
    triples: "tuple[CoherenceTriple, ...]"
    purity: "tuple[float, ...]"
    success_probability: "tuple[float, ...] | None" = None

    def __post_init__(self) -> None:
        counts = {len(self.times), len(self.triples), len(self.purity)}
        if self.success_probability is not None:
            counts.add(len(self.success_probability))
        if len(counts) != 1:
            raise DimensionError("time series columns have unequal lengths")
        if not self.times or self.times[0] != 0.0:
            raise DimensionError("time grid must start at t=0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise DimensionError("time grid must be strictly ascending")


@dataclass(frozen=True)
class ContourGrid:
    """Coherence values over an (angle, time) grid, indexed [angle][time]."""

    angles: "tuple[float, ...]"
    times: "tuple[float, ...]"
    c_total: np.ndarray
    c_global: np.ndarray
    c_local: np.ndarray

    def __post_init__(self) -> None:
        shape = (len(self.angles), len(self.times))
        for name in ("c_total", "c_global", "c_local"):
            mat = np.asarray(getattr(self, name), dtype=float)
            if mat.shape != shape:
                raise DimensionError(f"{name} has shape {mat.shape}, expected {shape}")
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)


@dataclass(frozen=True)
class BenchmarkReport:
    """Worst-case dilation-vs-direct deviation over a parameter grid."""

    max_deviation: float
    n_runs: int
    elapsed_seconds: float
    runs_per_second: float
    worst_case: "tuple[float, float, int] | None" = None


def time_grid(t_max: float, dt: float) -> "tuple[float, ...]":
    """Times ``i * dt`` for ``i = 0 .. floor(t_max/dt)``, inclusive of 0."""
    if dt <= 0.0 or t_max <= 0.0:
        raise StateError(f"need positive dt and t_max, got dt={dt}, t_max={t_max}")
    steps = int(math.floor(t_max / dt + GRID_EPS))
    return tuple(i * dt for i in range(steps + 1))


def _resolve_threads(threads: "int | None") -> int:
    if threads is None:
        return os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise StateError(f"threads must be >= 1, got {threads}")
    return threads


def _parallel_map(fn, items: "list", threads: "int | None") -> "list":
    workers = _resolve_threads(threads)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (workers * 8))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _sweep_point(spec: SweepSpec, initial: QState, t: float):
    success = None
    if spec.method is Method.DILATION:
        outcome = run_dilation(initial, spec.target_qubit, spec.r, t)
        state = outcome.postselected_state
        success = outcome.success_probability
    else:
        state = evolve_local(initial, spec.target_qubit, spec.r, t)
    if spec.reduced_pair is not None:
        state = QState(2, partial_trace(state.rho, state.n_qubits, spec.reduced_pair))
    return coherence_triple(state), purity(state), success


def run_time_sweep(spec: SweepSpec, threads: "int | None" = None) -> TimeSeries:
    """Evaluate coherence, purity, and (for dilation) success probability."""
    initial = make_state(spec.family)
    times = time_grid(spec.t_max, spec.dt)
    rows = _parallel_map(lambda t: _sweep_point(spec, initial, t), list(times), threads)
    triples = tuple(row[0] for row in rows)
    purities = tuple(row[1] for row in rows)
    if spec.method is Method.DILATION:
        return TimeSeries(times, triples, purities, tuple(row[2] for row in rows))
    return TimeSeries(times, triples, purities)


def run_contour(
    kind: FamilyKind,
    r: float,
    angle_steps: int,
    t_max: float,
    dt: float,
    target_qubit: int = 1,
    threads: "int | None" = None,
) -> ContourGrid:
    """Coherence triple over a uniform [0, 2*pi] x [0, t_max] grid."""
    kind = FamilyKind(kind)
    if angle_steps < 2:
        raise StateError(f"angle_steps must be >= 2, got {angle_steps}")
    # The last grid angle must be exactly 2*pi; the division can round one
    # ulp above it, which the angle validation would reject.
    angles = tuple(
        min(i * 2.0 * math.pi / (angle_steps - 1), 2.0 * math.pi)
        for i in range(angle_steps)
    )
    times = time_grid(t_max, dt)
    n_angles, n_times = len(angles), len(times)

    def point(flat_index: int) -> CoherenceTriple:
        ia, it = divmod(flat_index, n_times)
        state = make_state(StateFamily(kind, angles[ia]))
        evolved = evolve_local(state, target_qubit, r, times[it])
        return coherence_triple(evolved)

    flat = _parallel_map(point, list(range(n_angles * n_times)), threads)
    ct = np.array([x.c_total for x in flat]).reshape(n_angles, n_times)
    cg = np.array([x.c_global for x in flat]).reshape(n_angles, n_times)
    cl = np.array([x.c_local for x in flat]).reshape(n_angles, n_times)
    return ContourGrid(angles=angles, times=times, c_total=ct, c_global=cg, c_local=cl)


def dilation_benchmark(
    r_values: "list[float]",
    t_values: "list[float]",
    states: "list[QState]",
    target_qubit: int = 1,
) -> BenchmarkReport:
    """Compare the circuit route against direct evolution over a grid.

    Deviation is the trace distance between the postselected circuit state
    and the renormalized direct evolution. An empty grid is a valid
    benchmark of zero runs.
    """
    start = time.perf_counter()
    worst = 0.0
    worst_case = None
    n_runs = 0
    for r in r_values:
        for t in t_values:
            for index, state in enumerate(states):
                direct = evolve_local(state, target_qubit, r, t)
                circuit = run_dilation(state, target_qubit, r, t)
                dev = trace_distance(direct.rho, circuit.postselected_state.rho)
                n_runs += 1
                if dev > worst:
                    worst = dev
                    worst_case = (float(r), float(t), index)
    elapsed = time.perf_counter() - start
    rate = n_runs / elapsed if elapsed > 0.0 else 0.0
    return BenchmarkReport(
        max_deviation=worst,
        n_runs=n_runs,
        elapsed_seconds=elapsed,
        runs_per_second=rate,
        worst_case=worst_case,
    )


def _clamp(value: float) -> float:
    return 0.0 if CSV_CLAMP < value < 0.0 else float(value)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def format_csv(
    times: "list[float]",
    c_total: "list[float]",
    c_global: "list[float]",
    c_local: "list[float]",
    purity_col: "list[float]",
    success_probability: "list[float] | None" = None,
) -> str:
    """Render sweep columns as CSV text, 12 significant digits per value."""
    header = "t,C_T,C_G,C_L,purity"
    columns = [times, c_total, c_global, c_local, purity_col]
    if success_probability is not None:
        header += ",success_prob"
        columns.append(success_probability)
    lengths = {len(col) for col in columns}
    if len(lengths) != 1:
        raise DimensionError("CSV columns have unequal lengths")
    lines = [header]
    for row in zip(*columns):
        lines.append(",".join(_fmt(_clamp(v)) for v in row))
    return "\n".join(lines) + "\n"


def timeseries_to_csv(series: TimeSeries) -> str:
    return format_csv(
        list(series.times),
        [tr.c_total for tr in series.triples],
        [tr.c_global for tr in series.triples],
        [tr.c_local for tr in series.triples],
        list(series.purity),
        list(series.success_probability) if series.success_probability is not None else None,
    )


def contour_to_payload(grid: ContourGrid) -> dict:
    """JSON-ready dict with round-off negatives clamped to zero."""

    def matrix(values: np.ndarray) -> "list[list[float]]":
        return [[_clamp(v) for v in row] for row in values.tolist()]

    return {
        "angles": [float(a) for a in grid.angles],
        "times": [float(t) for t in grid.times],
        "C_T": matrix(grid.c_total),
        "C_G": matrix(grid.c_global),
        "C_L": matrix(grid.c_local),
    }


def contour_to_json(grid: ContourGrid) -> str:
    return json.dumps(contour_to_payload(grid))
