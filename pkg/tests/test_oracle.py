import numpy as np
import pytest

from conftest import grid_matrix
from l1inf.core import norm_l1_inf
from l1inf.oracle import (
    certify_random_instances,
    project_small_kkt,
    theta_by_bisection,
)
from l1inf.simplex import project_simplex


def test_bisection_symmetric_example():
    res = theta_by_bisection(np.eye(2), 1.0, tol=1e-12)
    assert res.theta == pytest.approx(0.5, abs=1e-10)
    assert np.abs(res.X - 0.5 * np.eye(2)).max() <= 1e-10
    assert res.residual <= 1e-12


def test_bisection_single_column_cap():
    res = theta_by_bisection(np.array([[3.0], [1.0]]), 2.0)
    assert res.theta == pytest.approx(1.0, abs=1e-10)
    assert np.abs(res.X - [[2.0], [1.0]]).max() <= 1e-10


def test_bisection_bracket_endpoints(rng):
    Y = rng.random((5, 4))
    col_sum = Y.sum(axis=0)
    g0 = sum(project_simplex(Y[:, j], 0.0).tau for j in range(4))
    assert g0 == pytest.approx(norm_l1_inf(Y), abs=1e-12)
    top = float(col_sum.max())
    g_top = sum(
        project_simplex(Y[:, j], top).tau for j in range(4) if col_sum[j] > top
    )
    assert g_top == 0.0


def test_bisection_iteration_bound(rng):
    for _ in range(20):
        n, m = rng.integers(1, 13, size=2)
        Y = rng.random((n, m))
        norm = norm_l1_inf(Y)
        C = float(rng.uniform(0.05, 0.95) * norm)
        res = theta_by_bisection(Y, C, tol=1e-12)
        assert res.iterations <= 64
        assert res.residual <= 1e-12


def test_bisection_preconditions():
    with pytest.raises(ValueError):
        theta_by_bisection(np.eye(2), 5.0)  # inside the ball
    with pytest.raises(ValueError):
        theta_by_bisection(-np.eye(2), 1.0)
    with pytest.raises(ValueError):
        theta_by_bisection(np.eye(2), 0.0)


def test_kkt_enumerator_matches_bisection_on_4x4(rng):
    for _ in range(500):
        Y = np.abs(grid_matrix(rng, 4, 4))
        norm = norm_l1_inf(Y)
        if norm == 0:
            continue
        C = float(rng.uniform(0.05, 0.95) * norm)
        ref = theta_by_bisection(Y, C, tol=1e-12)
        kkt = project_small_kkt(Y, C)
        assert abs(kkt.theta - ref.theta) <= 1e-9
        assert np.abs(kkt.X - ref.X).max() <= 1e-9


def test_kkt_enumerator_symmetric_example():
    res = project_small_kkt(np.eye(2), 1.0)
    assert res.theta == pytest.approx(0.5, abs=1e-12)
    assert res.residual <= 1e-12


def test_kkt_enumerator_refuses_large_instances():
    with pytest.raises(ValueError):
        project_small_kkt(np.ones((7, 3)), 1.0)
    with pytest.raises(ValueError):
        project_small_kkt(np.ones((3, 7)), 1.0)


def test_kkt_enumerator_6x6_smoke(rng):
    Y = rng.random((6, 6))
    C = 1.5
    ref = theta_by_bisection(Y, C, tol=1e-12)
    kkt = project_small_kkt(Y, C)
    assert abs(kkt.theta - ref.theta) <= 1e-9


def test_certify_passes_on_honest_implementation():
    report = certify_random_instances(trials=60, max_n=5, max_m=5, seed=3)
    assert report.passed
    assert report.trials == 60


def test_certify_flags_tampered_implementation():
    from l1inf.projection import project_ball_l1inf

    def tampered(Y, C, algo="inverse_total_order"):
        out = project_ball_l1inf(Y, C, algo=algo)
        out.X = out.X * 0.999  # slightly deflated projection
        return out

    report = certify_random_instances(
        trials=40, max_n=5, max_m=5, seed=3, project_fn=tampered
    )
    assert not report.passed
    assert report.failures > 0
    assert any("oracle" in msg or "norm" in msg for msg in report.messages)
