"""Benchmark harness: matrix generation, radius/size sweeps, J measurement, CSV.

Timing protocol: the timed region is exactly one projection call; matrix
generation and output I/O sit outside it.  One warm-up run precedes the
measured repetitions and the reported time is the median repetition, which
resists scheduler noise better than the mean.  Sweep cells are independent;
they run sequentially by default and may be spread over worker threads,
except under ``timing_strict`` which pins everything to one thread.

The input matrices come from a fixed 64-bit counter-based generator written
out below (not delegated to a library), so any implementation in any language
can reproduce the exact same streams.  For entry index ``i`` (counting
column-major, i.e. down the first column first) of a matrix with seed ``s``,
all arithmetic modulo 2**64:

    x  = s + (i + 1) * 0x9E3779B97F4A7C15
    x ^= x >> 30;  x *= 0xBF58476D1CE4E5B9
    x ^= x >> 27;  x *= 0x94D049BB133111EB
    x ^= x >> 31
    value = (x >> 11) * 2.0**-53        # uniform in [0, 1)
"""

from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import sparsity_report
from .projection import ALGORITHMS, project_ball_l1inf

__all__ = [
    "BenchRecord",
    "SweepConfig",
    "gen_uniform_matrix",
    "sweep_radius",
    "sweep_size",
    "measure_J",
    "emit_csv",
    "read_csv_records",
    "parse_range_spec",
]

CSV_HEADER = (
    "algo,n,m,C,seed,elapsed_ns,entry_sparsity,column_sparsity,theta,J_fraction,repetitions"
)

_MIX_INCREMENT = 0x9E3779B97F4A7C15
_MIX_MULT1 = 0xBF58476D1CE4E5B9
_MIX_MULT2 = 0x94D049BB133111EB
_U64 = np.uint64


@dataclass(frozen=True)
class BenchRecord:
    """One measurement row: shape, radius, median time, sparsity, theta, J."""

    algo: str
    n: int
    m: int
    C: float
    seed: int
    elapsed_ns: int
    entry_sparsity: float
    column_sparsity: float
    theta: float
    J_fraction: float
    repetitions: int


@dataclass
class SweepConfig:
    """Sweep description shared by the radius and size experiments."""

    shapes: list[tuple[int, int]]
    radii: list[float]
    algos: list[str] = field(default_factory=lambda: ["inverse_total_order"])
    seed: int = 0
    repetitions: int = 5
    timing_strict: bool = False
    workers: int = 1
    verify: bool = False

    def __post_init__(self):
        if not self.shapes:
            raise ValueError("at least one shape is required")
        for n, m in self.shapes:
            if n < 1 or m < 1:
                raise ValueError(f"invalid shape {n}x{m}")
        if not self.radii or any(c <= 0 for c in self.radii):
            raise ValueError("all radii must be positive")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        for algo in self.algos:
            if algo not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {algo!r}")


def gen_uniform_matrix(n: int, m: int, seed: int) -> np.ndarray:
    """Deterministic n x m matrix with entries i.i.d. uniform on [0, 1).

    Implements the counter-based generator documented in the module
    docstring; identical (n, m, seed) always yields the identical matrix,
    filled column-major.
    """
    if n < 1 or m < 1:
        raise ValueError("matrix dimensions must be positive")
    idx = np.arange(1, n * m + 1, dtype=np.uint64)
    x = _U64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _U64(_MIX_INCREMENT)
    x = (x ^ (x >> _U64(30))) * _U64(_MIX_MULT1)
    x = (x ^ (x >> _U64(27))) * _U64(_MIX_MULT2)
    x ^= x >> _U64(31)
    values = (x >> _U64(11)).astype(np.float64) * 2.0**-53
    return values.reshape((n, m), order="F")


def parse_range_spec(spec: str) -> list[float]:
    """Parse a radius list: ``lo:hi:log|lin:count`` or comma-separated values.

    Examples: ``1e-3:8:log:30`` (30 log-spaced points), ``0.5:2:lin:4``,
    ``0.5,1,2``.
    """
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 4:
            raise ValueError(f"range spec must be lo:hi:log|lin:count, got {spec!r}")
        lo, hi = float(parts[0]), float(parts[1])
        mode = parts[2]
        count = int(parts[3])
        if count < 1:
            raise ValueError("range count must be at least 1")
        if mode == "log":
            if lo <= 0 or hi <= 0:
                raise ValueError("log ranges need positive endpoints")
            values = np.geomspace(lo, hi, count)
        elif mode == "lin":
            values = np.linspace(lo, hi, count)
        else:
            raise ValueError(f"range mode must be 'log' or 'lin', got {mode!r}")
        return [float(v) for v in values]
    return [float(tok) for tok in spec.split(",") if tok.strip()]


def _run_cell(Y: np.ndarray, n: int, m: int, C: float, algo: str, seed: int,
              repetitions: int) -> BenchRecord:
    project_ball_l1inf(Y, C, algo=algo)  # warm-up, unrecorded
    times = []
    for _ in range(repetitions):
        start = time.perf_counter_ns()
        out = project_ball_l1inf(Y, C, algo=algo)
        times.append(time.perf_counter_ns() - start)
    report = sparsity_report(out.X)
    return BenchRecord(
        algo=algo,
        n=n,
        m=m,
        C=C,
        seed=seed,
        elapsed_ns=int(statistics.median(times)),
        entry_sparsity=report.entry_sparsity,
        column_sparsity=report.column_sparsity,
        theta=out.theta,
        J_fraction=out.stats.J / (n * m),
        repetitions=repetitions,
    )


def _run_sweep(cfg: SweepConfig) -> list[BenchRecord]:
    matrices = {(n, m): gen_uniform_matrix(n, m, cfg.seed) for n, m in cfg.shapes}
    cells = [
        ((n, m), C, algo)
        for (n, m) in cfg.shapes
        for C in cfg.radii
        for algo in cfg.algos
    ]

    def run(cell):
        (n, m), C, algo = cell
        return _run_cell(matrices[(n, m)], n, m, C, algo, cfg.seed, cfg.repetitions)

    if cfg.timing_strict or cfg.workers <= 1:
        records = [run(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(run, cells))

    if cfg.verify and len(cfg.algos) > 1:
        _verify_cells(records)
    return records


def _verify_cells(records: list[BenchRecord], tol: float = 1e-9) -> None:
    """All algorithms sharing a (shape, C) cell must report the same theta."""
    by_cell: dict[tuple, list[BenchRecord]] = {}
    for rec in records:
        by_cell.setdefault((rec.n, rec.m, rec.C), []).append(rec)
    for key, group in by_cell.items():
        thetas = [rec.theta for rec in group]
        if max(thetas) - min(thetas) > tol:
            raise AssertionError(f"theta disagreement at cell {key}: {thetas}")


def sweep_radius(cfg: SweepConfig) -> list[BenchRecord]:
    """Run every (shape, radius, algorithm) cell of a radius sweep."""
    return _run_sweep(cfg)


def sweep_size(cfg: SweepConfig) -> list[BenchRecord]:
    """Run a size sweep: same machinery, shapes vary while radii stay fixed."""
    return _run_sweep(cfg)


def measure_J(n: int, m: int, radii: list[float], seed: int,
              repetitions: int = 1) -> list[tuple[float, float]]:
    """(entry sparsity, J fraction) pairs for the inverse-total-order walk."""
    cfg = SweepConfig(
        shapes=[(n, m)],
        radii=list(radii),
        algos=["inverse_total_order"],
        seed=seed,
        repetitions=repetitions,
    )
    return [(rec.entry_sparsity, rec.J_fraction) for rec in sweep_radius(cfg)]


def _fmt(value: float) -> str:
    return format(value, ".17g")


def emit_csv(records: list[BenchRecord], target) -> None:
    """Write records as CSV (header always present, 17 significant digits)."""
    if hasattr(target, "write"):
        _emit(records, target)
    else:
        with open(target, "w", encoding="ascii", newline="") as fh:
            _emit(records, fh)


def _emit(records, fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_HEADER.split(","))
    for rec in records:
        writer.writerow(
            [
                rec.algo,
                rec.n,
                rec.m,
                _fmt(rec.C),
                rec.seed,
                rec.elapsed_ns,
                _fmt(rec.entry_sparsity),
                _fmt(rec.column_sparsity),
                _fmt(rec.theta),
                _fmt(rec.J_fraction),
                rec.repetitions,
            ]
        )


def read_csv_records(source) -> list[BenchRecord]:
    """Parse a CSV produced by :func:`emit_csv` back into records."""
    if hasattr(source, "read"):
        return _read(source)
    with open(source, "r", encoding="ascii", newline="") as fh:
        return _read(fh)


def _read(fh) -> list[BenchRecord]:
    reader = csv.reader(fh)
    header = next(reader)
    if header != CSV_HEADER.split(","):
        raise ValueError(f"unexpected CSV header: {header!r}")
    records = []
    for row in reader:
        records.append(
            BenchRecord(
                algo=row[0],
                n=int(row[1]),
                m=int(row[2]),
                C=float(row[3]),
                seed=int(row[4]),
                elapsed_ns=int(row[5]),
                entry_sparsity=float(row[6]),
                column_sparsity=float(row[7]),
                theta=float(row[8]),
                J_fraction=float(row[9]),
                repetitions=int(row[10]),
            )
        )
    return records
