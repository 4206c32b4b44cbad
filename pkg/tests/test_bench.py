import io

import numpy as np
import pytest

from l1inf.bench import (
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
from l1inf.projection import ALGORITHMS, project_ball_l1inf


def reference_stream(seed, count):
    """The documented generator, spelled out independently in pure Python."""
    mask = (1 << 64) - 1
    values = []
    for i in range(1, count + 1):
        x = (seed + i * 0x9E3779B97F4A7C15) & mask
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
        x ^= x >> 31
        values.append((x >> 11) * 2.0**-53)
    return values


def test_generator_matches_documented_algorithm():
    Y = gen_uniform_matrix(3, 2, seed=12345)
    want = reference_stream(12345, 6)
    # column-major fill order
    assert Y.ravel(order="F").tolist() == want


def test_generator_determinism_and_seed_sensitivity():
    A = gen_uniform_matrix(8, 5, seed=1)
    B = gen_uniform_matrix(8, 5, seed=1)
    C = gen_uniform_matrix(8, 5, seed=2)
    assert np.array_equal(A, B)
    assert (A != C).any()
    assert A.min() >= 0.0 and A.max() < 1.0


def test_generator_mean_large_sample():
    Y = gen_uniform_matrix(1000, 1000, seed=0)
    assert 0.499 <= Y.mean() <= 0.501


def test_parse_range_spec():
    values = parse_range_spec("1e-3:8:log:4")
    assert values[0] == pytest.approx(1e-3)
    assert values[-1] == pytest.approx(8.0)
    assert len(values) == 4
    assert np.allclose(np.diff(np.log(values)), np.diff(np.log(values))[0])

    assert parse_range_spec("1:3:lin:3") == [1.0, 2.0, 3.0]
    assert parse_range_spec("0.5,1,2") == [0.5, 1.0, 2.0]
    with pytest.raises(ValueError):
        parse_range_spec("1:2:cubic:3")
    with pytest.raises(ValueError):
        parse_range_spec("1:2:log")


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(shapes=[], radii=[1.0])
    with pytest.raises(ValueError):
        SweepConfig(shapes=[(2, 2)], radii=[0.0])
    with pytest.raises(ValueError):
        SweepConfig(shapes=[(2, 2)], radii=[1.0], repetitions=0)
    with pytest.raises(ValueError):
        SweepConfig(shapes=[(2, 2)], radii=[1.0], algos=["quantum"])


def test_sweep_radius_row_count_and_verify_mode():
    cfg = SweepConfig(
        shapes=[(4, 4)],
        radii=[0.25, 0.5, 1.0],
        algos=list(ALGORITHMS),
        seed=11,
        repetitions=1,
        verify=True,
    )
    records = sweep_radius(cfg)
    assert len(records) == 3 * len(ALGORITHMS)
    by_cell = {}
    for rec in records:
        by_cell.setdefault(rec.C, []).append(rec.theta)
    for thetas in by_cell.values():
        assert max(thetas) - min(thetas) <= 1e-9


def test_sweep_determinism_modulo_timing():
    cfg = dict(shapes=[(5, 6)], radii=[0.3, 0.9], algos=["inverse_total_order"], seed=4,
               repetitions=1)
    a = sweep_radius(SweepConfig(**cfg))
    b = sweep_radius(SweepConfig(**cfg))
    strip = lambda rec: (rec.algo, rec.n, rec.m, rec.C, rec.seed, rec.entry_sparsity,
                         rec.column_sparsity, rec.theta, rec.J_fraction, rec.repetitions)
    assert [strip(r) for r in a] == [strip(r) for r in b]


def test_single_cell_sweep_matches_direct_call():
    cfg = SweepConfig(shapes=[(6, 6)], radii=[0.7], seed=9, repetitions=1)
    rec = sweep_radius(cfg)[0]
    Y = gen_uniform_matrix(6, 6, 9)
    out = project_ball_l1inf(Y, 0.7)
    assert rec.theta == pytest.approx(out.theta, abs=0)
    assert rec.J_fraction == out.stats.J / 36


def test_sweep_size_trends():
    cfg = SweepConfig(
        shapes=[(200, m) for m in (200, 800, 3200)],
        radii=[1.0],
        seed=1,
        repetitions=3,
        timing_strict=True,
    )
    records = sweep_size(cfg)
    times = [rec.elapsed_ns for rec in records]
    ms = [rec.m for rec in records]
    # near-linear growth in m: log-log slope at most 1.3
    slope = np.polyfit(np.log(ms), np.log(times), 1)[0]
    assert slope <= 1.3

    # growing m at fixed n drives sparsity up and the J constant down
    cfg = SweepConfig(
        shapes=[(200, m) for m in (200, 800, 3200)],
        radii=[1.0],
        seed=1,
        repetitions=1,
    )
    records = sweep_size(cfg)
    sparsities = [rec.entry_sparsity for rec in records]
    j_fracs = [rec.J_fraction for rec in records]
    assert sparsities == sorted(sparsities)
    assert j_fracs == sorted(j_fracs, reverse=True)


def test_measure_J_bounds():
    pairs = measure_J(40, 40, [0.05, 0.5, 2.0], seed=3)
    assert len(pairs) == 3
    for sparsity, j_frac in pairs:
        assert 0.0 <= sparsity <= 1.0
        assert 0.0 <= j_frac <= 1.0


def test_csv_round_trip(tmp_path):
    records = [
        BenchRecord("naive", 3, 4, 0.12345678901234567, 9, 1234, 0.5, 0.25,
                    1.0 / 3.0, 0.015625, 5),
        BenchRecord("inverse_total_order", 1, 1, 8.0, 0, 1, 0.0, 0.0, 2e-17, 1.0, 1),
    ]
    path = tmp_path / "bench.csv"
    emit_csv(records, path)
    assert read_csv_records(path) == records

    header = path.read_text().splitlines()[0]
    assert header == "algo,n,m,C,seed,elapsed_ns,entry_sparsity,column_sparsity,theta,J_fraction,repetitions"


def test_csv_empty_is_header_only():
    buf = io.StringIO()
    emit_csv([], buf)
    assert buf.getvalue().strip().count("\n") == 0
    assert buf.getvalue().startswith("algo,")


def test_csv_fields_never_contain_delimiter():
    buf = io.StringIO()
    emit_csv([BenchRecord("naive", 2, 2, 1.0, 0, 10, 0.5, 0.5, 0.25, 0.1, 3)], buf)
    for line in buf.getvalue().strip().splitlines()[1:]:
        assert len(line.split(",")) == 11
