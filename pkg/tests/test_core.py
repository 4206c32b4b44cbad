import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from l1inf.core import (
    MatrixFormatError,
    as_matrix,
    format_matrix,
    norm_l1_inf,
    norm_linf_l1,
    read_matrix,
    sign_decompose,
    sparsity_report,
    write_matrix,
)

small_matrices = hnp.arrays(
    dtype=np.float64,
    shape=st.tuples(st.integers(1, 6), st.integers(1, 6)),
    elements=st.floats(-10, 10, allow_nan=False),
)


def test_norm_l1_inf_examples():
    assert norm_l1_inf([[1, -2], [3, 4]]) == 7.0
    assert norm_l1_inf(np.zeros((3, 5))) == 0.0
    assert norm_l1_inf([[0.5]]) == 0.5


def test_norm_linf_l1_examples():
    assert norm_linf_l1([[1, -2], [3, 4]]) == 6.0
    assert norm_linf_l1(np.zeros((2, 2))) == 0.0
    assert norm_linf_l1([[-1], [-1]]) == 2.0


@given(small_matrices, st.floats(-4, 4, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_norms_absolutely_homogeneous(Y, alpha):
    assert norm_l1_inf(alpha * Y) == pytest.approx(abs(alpha) * norm_l1_inf(Y), abs=1e-9)
    assert norm_linf_l1(alpha * Y) == pytest.approx(abs(alpha) * norm_linf_l1(Y), abs=1e-9)


def test_norms_are_dual_holder_inequality(rng):
    for _ in range(50):
        n, m = rng.integers(1, 8, size=2)
        X = rng.standard_normal((n, m))
        Y = rng.standard_normal((n, m))
        Y /= np.linalg.norm(Y)
        inner = float((X * Y).sum())
        assert inner <= norm_l1_inf(X) * norm_linf_l1(Y) + 1e-12


def test_sign_decompose_examples():
    signs, mags = sign_decompose([[-2.0, 0.0], [1.0, -3.0]])
    assert signs.tolist() == [[-1.0, 0.0], [1.0, -1.0]]
    assert mags.tolist() == [[2.0, 0.0], [1.0, 3.0]]

    Y = np.array([[0.0, 2.5], [1.0, 0.5]])
    signs, mags = sign_decompose(Y)
    assert np.array_equal(signs, (Y > 0).astype(float))
    assert np.array_equal(mags, Y)


@given(small_matrices)
@settings(max_examples=100, deadline=None)
def test_sign_decompose_round_trip(Y):
    signs, mags = sign_decompose(Y)
    assert np.all(mags >= 0)
    assert np.array_equal(signs * mags, Y)


def test_sparsity_report_examples():
    rep = sparsity_report([[0.0, 1.0], [0.0, 2.0]])
    assert rep.entry_sparsity == 0.5
    assert rep.column_sparsity == 0.5

    rep = sparsity_report(np.zeros((4, 4)))
    assert (rep.entry_sparsity, rep.column_sparsity) == (1.0, 1.0)

    rep = sparsity_report(np.full((3, 3), 2.0))
    assert (rep.entry_sparsity, rep.column_sparsity) == (0.0, 0.0)


def test_sparsity_report_tolerance():
    rep = sparsity_report([[1e-12, 1.0]], zero_tolerance=1e-9)
    assert rep.entry_sparsity == 0.5
    with pytest.raises(ValueError):
        sparsity_report([[1.0]], zero_tolerance=-1.0)


def test_as_matrix_validation():
    with pytest.raises(ValueError):
        as_matrix([1.0, 2.0])
    with pytest.raises(ValueError):
        as_matrix(np.empty((0, 3)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan]])
    with pytest.raises(ValueError):
        as_matrix([[np.inf, 1.0]])
    Y = as_matrix([[1, 2], [3, 4]])
    assert Y.flags.f_contiguous and Y.dtype == np.float64


def test_matrix_round_trip(tmp_path):
    Y = np.array([[1.0 / 3.0, -2e-17], [1e300, 0.125]])
    path = tmp_path / "y.txt"
    write_matrix(Y, path)
    back = read_matrix(path)
    assert np.array_equal(back, Y)


def test_matrix_format_header():
    text = format_matrix(np.array([[0.5, 1.5]]))
    assert text.splitlines()[0] == "1 2"


@pytest.mark.parametrize(
    "payload, line",
    [
        ("", 1),
        ("2\n1 2\n", 1),
        ("1 0\n", 1),
        ("2 2\n1 2\n", 3),
        ("1 3\n1 2\n", 2),
        ("1 2\n1 banana\n", 2),
        ("1 1\nnan\n", 1),
    ],
)
def test_matrix_format_errors_name_the_line(payload, line):
    with pytest.raises(MatrixFormatError) as err:
        read_matrix(io.StringIO(payload))
    assert err.value.line == line
    assert f"line {line}" in str(err.value)
