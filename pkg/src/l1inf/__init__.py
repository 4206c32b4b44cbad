"""Exact Euclidean projection onto the l1,inf norm ball.

Public surface: mixed norms and sparsity metrics (:mod:`l1inf.core`), the
per-column simplex projection (:mod:`l1inf.simplex`), the three ball
projection algorithms and the l-inf,1 proximity operator
(:mod:`l1inf.projection`), reference oracles (:mod:`l1inf.oracle`), and the
benchmark harness (:mod:`l1inf.bench`).
"""

from .bench import (
    BenchRecord,
    SweepConfig,
    emit_csv,
    gen_uniform_matrix,
    measure_J,
    parse_range_spec,
    read_csv_records,
    sweep_radius,
    sweep_size,
)
from .core import (
    MatrixFormatError,
    SparsityReport,
    as_matrix,
    norm_l1_inf,
    norm_linf_l1,
    read_matrix,
    sign_decompose,
    sparsity_report,
    write_matrix,
)
from .oracle import (
    CheckReport,
    OracleResult,
    certify_random_instances,
    project_small_kkt,
    theta_by_bisection,
)
from .projection import (
    ALGORITHMS,
    ProjectionOutput,
    ThetaState,
    WorkStats,
    inverse_total_order_projection,
    naive_projection,
    project_ball_l1inf,
    prox_linf_l1,
    recover_solution,
    total_order_projection,
    update_theta,
)
from .simplex import SimplexResult, project_simplex

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BenchRecord",
    "CheckReport",
    "MatrixFormatError",
    "OracleResult",
    "ProjectionOutput",
    "SimplexResult",
    "SparsityReport",
    "SweepConfig",
    "ThetaState",
    "WorkStats",
    "as_matrix",
    "certify_random_instances",
    "emit_csv",
    "gen_uniform_matrix",
    "inverse_total_order_projection",
    "measure_J",
    "naive_projection",
    "norm_l1_inf",
    "norm_linf_l1",
    "parse_range_spec",
    "project_ball_l1inf",
    "project_simplex",
    "project_small_kkt",
    "prox_linf_l1",
    "read_csv_records",
    "read_matrix",
    "recover_solution",
    "sign_decompose",
    "sparsity_report",
    "sweep_radius",
    "sweep_size",
    "theta_by_bisection",
    "total_order_projection",
    "update_theta",
    "write_matrix",
]
