"""Exact Euclidean projection of a nonnegative vector onto the solid l1 simplex.

The solid simplex of radius r is the set {x >= 0 : sum(x) <= r}.  This
projection is the per-column building block of the l1,inf ball projection:
every column of the matrix problem reduces to one such vector projection at
the shared threshold level.

The implementation is the classic sort-then-threshold method, O(n log n).
It is deliberately the simplest exact variant: this module serves as a
correctness anchor and baseline, not as the hot path of the fast algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SimplexResult", "project_simplex"]


@dataclass(frozen=True)
class SimplexResult:
    """Result of a solid-simplex projection.

    Attributes
    ----------
    projected : numpy.ndarray
        The projection, satisfying ``projected[i] = max(v[i] - tau, 0)``.
    tau : float
        The soft-threshold constant.  0 when the input is already inside the
        simplex, ``max(v)`` when the radius is 0.
    support_size : int
        Number of strictly positive entries of ``projected``.  Entries equal
        to ``tau`` are thresholded to exactly 0 and do not count.
    """

    projected: np.ndarray
    tau: float
    support_size: int


def project_simplex(v, radius: float) -> SimplexResult:
    """Project a nonnegative vector onto the solid l1 simplex of a radius.

    Parameters
    ----------
    v : array_like
        One-dimensional nonnegative vector.
    radius : float
        Nonnegative simplex radius.

    Returns
    -------
    SimplexResult
        The unique Euclidean projection onto {x >= 0 : sum(x) <= radius},
        in soft-threshold form.

    Raises
    ------
    ValueError
        If any entry of ``v`` is negative or ``radius`` is negative.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("v must be a nonempty 1-d vector")
    if np.any(v < 0):
        raise ValueError("v must be entrywise nonnegative")
    if radius < 0:
        raise ValueError("radius must be nonnegative")

    if radius == 0.0:
        return SimplexResult(np.zeros_like(v), float(v.max()), 0)

    total = float(v.sum())
    if total <= radius:
        return SimplexResult(v.copy(), 0.0, int(np.count_nonzero(v > 0)))

    z = np.sort(v)[::-1]
    cum = np.cumsum(z)
    ks = np.arange(1, v.size + 1)
    # largest k with z_k > (S_k - radius) / k; k = 1 always qualifies when
    # radius > 0 (pinned explicitly: the strict test can round away for
    # radii below the entries' float resolution)
    valid = z * ks > cum - radius
    valid[0] = True
    kstar = int(np.nonzero(valid)[0][-1]) + 1
    tau = (cum[kstar - 1] - radius) / kstar
    projected = np.maximum(v - tau, 0.0)
    return SimplexResult(projected, float(tau), int(np.count_nonzero(projected > 0)))
