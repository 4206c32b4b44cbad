"""Matrix conventions, mixed norms, sign decomposition, and sparsity metrics.

Matrices are plain ``numpy.ndarray`` objects of dtype float64 in column-major
(Fortran) layout.  Every algorithm in this package streams down columns, so
column-major storage keeps the hot loops on contiguous memory.  Validation
(finiteness, shape) happens once at the boundary through :func:`as_matrix`;
internal routines assume their inputs are already valid.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

__all__ = [
    "as_matrix",
    "norm_l1_inf",
    "norm_linf_l1",
    "sign_decompose",
    "SparsityReport",
    "sparsity_report",
    "MatrixFormatError",
    "read_matrix",
    "write_matrix",
]


def as_matrix(data) -> np.ndarray:
    """Validate ``data`` as a dense real matrix and normalize its storage.

    Parameters
    ----------
    data : array_like
        Two-dimensional array of real numbers, at least 1x1.

    Returns
    -------
    numpy.ndarray
        float64 matrix in column-major (Fortran) order.  If ``data`` already
        satisfies the contract it is returned without copying.

    Raises
    ------
    ValueError
        If the array is not 2-d, is empty, or contains NaN/infinite entries.
    """
    Y = np.asarray(data, dtype=np.float64)
    if Y.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got an array with ndim={Y.ndim}")
    n, m = Y.shape
    if n < 1 or m < 1:
        raise ValueError(f"matrix must have at least one row and one column, got {n}x{m}")
    if not np.isfinite(Y).all():
        raise ValueError("matrix entries must be finite (no NaN or infinity)")
    return np.asfortranarray(Y)


def norm_l1_inf(Y) -> float:
    """Sum over columns of the per-column maximum absolute entry."""
    Y = np.asarray(Y, dtype=np.float64)
    return float(np.abs(Y).max(axis=0).sum())


def norm_linf_l1(Y) -> float:
    """Maximum over columns of the per-column sum of absolute entries.

    This is the dual norm of :func:`norm_l1_inf`.
    """
    Y = np.asarray(Y, dtype=np.float64)
    return float(np.abs(Y).sum(axis=0).max())


def sign_decompose(Y) -> tuple[np.ndarray, np.ndarray]:
    """Split ``Y`` into its sign pattern and magnitudes.

    Returns ``(sign(Y), abs(Y))`` with signs in {-1, 0, +1}.  The elementwise
    product of the two parts recovers ``Y`` exactly.
    """
    Y = np.asarray(Y, dtype=np.float64)
    return np.sign(Y), np.abs(Y)


@dataclass(frozen=True)
class SparsityReport:
    """Fraction of zero entries and all-zero columns of a matrix."""

    entry_sparsity: float
    column_sparsity: float
    zero_tolerance: float


def sparsity_report(X, zero_tolerance: float = 0.0) -> SparsityReport:
    """Count entries and columns with magnitude at most ``zero_tolerance``.

    The default tolerance is 0: the projection algorithms produce exact zeros
    by min/max clipping, so no fuzz is needed to see their sparsity.
    """
    if zero_tolerance < 0:
        raise ValueError("zero_tolerance must be nonnegative")
    X = np.asarray(X, dtype=np.float64)
    zero = np.abs(X) <= zero_tolerance
    return SparsityReport(
        entry_sparsity=float(zero.mean()),
        column_sparsity=float(zero.all(axis=0).mean()),
        zero_tolerance=float(zero_tolerance),
    )


class MatrixFormatError(ValueError):
    """Malformed matrix text file; ``line`` is the offending 1-based line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def read_matrix(source) -> np.ndarray:
    """Read a matrix from the plain text format.

    The format is one header line ``n m`` followed by n lines of m
    space-separated decimal reals.  ``source`` is a file path or a text
    stream.  Raises :class:`MatrixFormatError` (naming the line number) on
    malformed input.
    """
    if hasattr(source, "read"):
        return _read_matrix_stream(source)
    with open(source, "r", encoding="ascii") as fh:
        return _read_matrix_stream(fh)


def _read_matrix_stream(fh) -> np.ndarray:
    header = fh.readline()
    if not header.strip():
        raise MatrixFormatError("missing 'n m' header", line=1)
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"header must be 'n m', found {len(parts)} tokens", line=1)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"header must hold two integers, got {header.strip()!r}", line=1) from None
    if n < 1 or m < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {n}x{m}", line=1)
    Y = np.empty((n, m), dtype=np.float64, order="F")
    for i in range(n):
        row = fh.readline()
        lineno = i + 2
        if not row:
            raise MatrixFormatError(f"expected {n} rows, file ends after {i}", line=lineno)
        tokens = row.split()
        if len(tokens) != m:
            raise MatrixFormatError(f"expected {m} values, found {len(tokens)}", line=lineno)
        try:
            Y[i, :] = [float(tok) for tok in tokens]
        except ValueError as exc:
            raise MatrixFormatError(str(exc), line=lineno) from None
    if not np.isfinite(Y).all():
        raise MatrixFormatError("matrix entries must be finite", line=1)
    return Y


def write_matrix(Y, target) -> None:
    """Write a matrix in the plain text format read by :func:`read_matrix`.

    Values are emitted with 17 significant digits, enough to round-trip
    float64 exactly.
    """
    Y = as_matrix(Y)
    n, m = Y.shape
    if hasattr(target, "write"):
        _write_matrix_stream(Y, n, m, target)
    else:
        with open(target, "w", encoding="ascii") as fh:
            _write_matrix_stream(Y, n, m, fh)


def _write_matrix_stream(Y, n, m, fh) -> None:
    fh.write(f"{n} {m}\n")
    for i in range(n):
        fh.write(" ".join(format(v, ".17g") for v in Y[i, :]))
        fh.write("\n")


def format_matrix(Y) -> str:
    """Return the text-format serialization of ``Y`` as a string."""
    buf = io.StringIO()
    write_matrix(Y, buf)
    return buf.getvalue()
