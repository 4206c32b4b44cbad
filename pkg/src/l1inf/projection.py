"""Exact projection onto the l1,inf norm ball and the l-inf,1 proximity operator.

Three algorithms compute the same projection:

``naive``
    Fixed-point iteration: repeatedly project every surviving column onto the
    l1 simplex at the current threshold level theta, drop columns whose l1
    mass falls below theta, and re-solve theta from the resulting supports.
    Simple and robust, O(n^2 m) per-simplex work in the worst case.

``total_order``
    Forward scan.  All "support grows by one element" and "column drops out"
    events are sorted by the theta level at which they fire; the scan applies
    them in increasing order, updating theta in O(1) per event, and stops at
    the first event whose level has not been reached.  O(nm log(nm)) for the
    sort, O(K) for the scan, where K is the stopping index.

``inverse_total_order``
    Backward walk over the same total order.  Start from the state in which
    every event is applied (all columns selected in full), and walk the event
    levels downward, undoing events that fire above the running theta, until
    the first event that stands.  Only J = nm - K positions are visited, so
    the cost is O(nm + J log(nm)); J shrinks to almost nothing when the
    projection is sparse.  Per-column max-extraction heaps are built lazily,
    only when a column is first reached by the walk, and a global heap keyed
    by each column's next pending event level drives the traversal.

All three keep theta nondecreasing across accepted state transitions, which
is what guarantees termination; pass ``log_theta=True`` to record the
sequence.  Structural state (active set, per-column selection counts), not
floating-point equality of theta, decides termination.

Inputs may have arbitrary signs: the entry point splits off the sign pattern,
projects the magnitudes, and recombines.  Inputs already inside the ball are
returned unchanged.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

import numpy as np

from .core import as_matrix, norm_l1_inf, norm_linf_l1, sign_decompose
from .simplex import project_simplex

__all__ = [
    "ALGORITHMS",
    "WorkStats",
    "ProjectionOutput",
    "ThetaState",
    "update_theta",
    "recover_solution",
    "naive_projection",
    "total_order_projection",
    "inverse_total_order_projection",
    "project_ball_l1inf",
    "prox_linf_l1",
]

ALGORITHMS = ("naive", "total_order", "inverse_total_order")

# relative drift allowed between incrementally maintained accumulators and a
# from-scratch recomputation (checked in debug mode)
DRIFT_BOUND = 1e-6


@dataclass
class WorkStats:
    """Work accounting for one projection call.

    ``K`` counts the positions of the event total order at or below the final
    theta, which is (up to threshold ties) the number of entries the
    projection modifies: all n entries of a zeroed column, the capped entries
    of a surviving one.  ``J = n*m - K`` is the complexity-governing
    complement: the inverse-total-order walk visits ~J positions.
    """

    K: int = 0
    J: int = 0
    heap_pops: int = 0
    outer_iterations: int = 0
    elapsed: float = 0.0
    theta_log: list[float] | None = None


@dataclass
class ProjectionOutput:
    """Projected matrix plus the certificate that defines it.

    ``mu[j]`` is the cap applied to column j (its maximum after projection),
    ``theta`` the common l1 mass removed from every active column, ``active``
    the mask of columns with ``mu > 0``.
    """

    X: np.ndarray
    theta: float
    mu: np.ndarray
    active: np.ndarray
    stats: WorkStats


@dataclass
class ThetaState:
    """Running sums behind the O(1) theta update.

    Per column j: ``S[j]`` is the sum of the currently selected largest
    entries, ``k[j]`` their count, ``a[j]`` the active flag.  ``k[j]`` holds
    the sentinel ``n + 1`` while a column has never been activated.  The two
    scalars ``num = sum_j a_j * S_j / k_j`` and ``den = sum_j a_j / k_j`` are
    maintained incrementally under the four transitions (activate,
    deactivate, grow, shrink); ``recompute`` rebuilds them from scratch for
    drift checks.
    """

    S: np.ndarray
    k: np.ndarray
    a: np.ndarray
    C: float
    sentinel: int
    num: float = 0.0
    den: float = 0.0
    theta: float = 0.0

    def activate(self, j: int, selected_sum: float, count: int) -> None:
        """Column j joins the active set with the given selection."""
        self.S[j] = selected_sum
        self.k[j] = count
        self.a[j] = True
        self.num += selected_sum / count
        self.den += 1.0 / count

    def deactivate(self, j: int) -> None:
        """Column j leaves the active set; its k reverts to the sentinel."""
        self.num -= self.S[j] / self.k[j]
        self.den -= 1.0 / self.k[j]
        self.a[j] = False
        self.k[j] = self.sentinel

    def resize(self, j: int, selected_sum: float, count: int) -> None:
        """Column j's selection grows or shrinks to ``count`` elements."""
        self.num += selected_sum / count - self.S[j] / self.k[j]
        self.den += 1.0 / count - 1.0 / self.k[j]
        self.S[j] = selected_sum
        self.k[j] = count

    def recompute(self) -> tuple[float, float]:
        """num/den rebuilt from (S, k, a); reference for drift checks."""
        act = self.a
        if not act.any():
            return 0.0, 0.0
        num = float((self.S[act] / self.k[act]).sum())
        den = float((1.0 / self.k[act]).sum())
        return num, den

    def check_drift(self) -> None:
        num, den = self.recompute()
        if abs(self.num - num) > DRIFT_BOUND * (1.0 + abs(num)) or abs(
            self.den - den
        ) > DRIFT_BOUND * (1.0 + abs(den)):
            raise AssertionError(
                f"accumulator drift: num {self.num} vs {num}, den {self.den} vs {den}"
            )


def update_theta(state: ThetaState) -> float:
    """Solve theta = (num - C) / den for the current state, O(1).

    Raises ``ValueError`` when no column is active (den == 0): theta is then
    undefined and the projection is the all-zero matrix, which only happens
    for C = 0 or inputs inside the ball, both handled before any algorithm
    runs.
    """
    if state.den <= 0.0:
        raise ValueError("theta is undefined: no active columns (den = 0)")
    state.theta = float((state.num - state.C) / state.den)
    return state.theta


def recover_solution(Ynn, theta: float, state: ThetaState) -> ProjectionOutput:
    """Build (X, mu, active, accounting) from a converged state.

    mu_j = max(0, (S_j - theta) / k_j) for active columns and 0 otherwise;
    X = min(Y, mu) columnwise.  Columns whose cap comes out 0 are reported
    inactive regardless of the bookkeeping flags, so the output is canonical
    across algorithms even at threshold ties.
    """
    Y = np.asarray(Ynn, dtype=np.float64)
    n, m = Y.shape
    mu = np.zeros(m, dtype=np.float64)
    act = state.a
    if act.any():
        mu[act] = np.maximum(0.0, (state.S[act] - theta) / state.k[act])
    X = np.minimum(Y, mu[np.newaxis, :])
    active = mu > 0.0
    K = int(np.where(active, state.k, n).sum())
    stats = WorkStats(K=K, J=n * m - K)
    return ProjectionOutput(X=X, theta=float(theta), mu=mu, active=active, stats=stats)


def _require_projectable(Ynn, C: float) -> np.ndarray:
    Y = as_matrix(Ynn)
    if np.any(Y < 0):
        raise ValueError("algorithm input must be entrywise nonnegative")
    if not C > 0:
        raise ValueError("radius C must be positive")
    if not norm_l1_inf(Y) > C:
        raise ValueError("input already inside the ball; use project_ball_l1inf")
    return Y


def naive_projection(Ynn, C: float, log_theta: bool = False, debug: bool = False) -> ProjectionOutput:
    """Fixed-point iteration over full passes of per-column simplex projections.

    Each pass projects every surviving column onto the simplex of radius
    theta, drops columns whose l1 mass is below theta, and re-solves theta
    from the collected supports.  The loop ends when a pass changes neither
    the active set nor any support size; theta is then at its fixed point
    exactly, because it is a pure function of that structural state.
    """
    t0 = time.perf_counter()
    Y = _require_projectable(Ynn, C)
    n, m = Y.shape

    # per-column descending sort + prefix sums, cached for the theta formula
    Z = np.sort(Y, axis=0)[::-1]
    cum = np.cumsum(Z, axis=0)
    col_sum = cum[-1]

    active = np.ones(m, dtype=bool)
    k = np.ones(m, dtype=np.int64)
    theta = (Z[0].sum() - C) / m
    log = [float(theta)] if log_theta else None

    passes = 0
    while True:
        passes += 1
        changed = False
        for j in range(m):
            if not active[j]:
                continue
            if col_sum[j] < theta:
                active[j] = False
                changed = True
                continue
            res = project_simplex(Y[:, j], theta)
            if res.support_size != k[j]:
                k[j] = res.support_size
                changed = True
        cols = np.nonzero(active)[0]
        sel = cum[k[cols] - 1, cols]
        num = float((sel / k[cols]).sum())
        den = float((1.0 / k[cols]).sum())
        theta = (num - C) / den
        if log is not None:
            log.append(float(theta))
        if not changed:
            break

    state = ThetaState(
        S=np.where(active, cum[np.minimum(k, n) - 1, np.arange(m)], col_sum),
        k=np.where(active, k, n + 1),
        a=active,
        C=float(C),
        sentinel=n + 1,
        num=num,
        den=den,
        theta=float(theta),
    )
    if debug:
        state.check_drift()
    out = recover_solution(Y, theta, state)
    out.stats.outer_iterations = passes
    out.stats.theta_log = log
    out.stats.elapsed = time.perf_counter() - t0
    return out


def _sorted_events(Y: np.ndarray):
    """Event table of the total order.

    Per column j with descending sort z and prefix sums S: the level at which
    element k joins the selection is rho_k = S_{k-1} - (k-1) z_k (k >= 2;
    element 1 joins at level 0), and the level at which the whole column
    drops out is its full sum.  Within a column rho_2 <= ... <= rho_n <= sum.
    Returns (levels, column, new_count, delta_num, delta_den, order) where
    new_count == 0 marks a column-removal event and ``order`` sorts levels
    ascending, stably, with a column's growth events before its removal.
    """
    n, m = Y.shape
    Z = np.sort(Y, axis=0)[::-1]
    cum = np.cumsum(Z, axis=0)
    col_sum = cum[-1]
    contrib = cum / np.arange(1.0, n + 1.0)[:, np.newaxis]  # S_k / k

    if n > 1:
        counts = np.arange(1, n, dtype=np.float64)[:, np.newaxis]
        rho = cum[:-1] - counts * Z[1:]
        # rho is nondecreasing down each column in exact arithmetic, but
        # rounding can reorder exact ties by ~1e-16; restore monotonicity so
        # the stable sort keeps each column's events in k order (ties are
        # theta-neutral, so the clamp never changes the result)
        np.maximum.accumulate(rho, axis=0, out=rho)
        removal_level = np.maximum(col_sum, rho[-1])
        dnum_add = (contrib[1:] - contrib[:-1]).ravel(order="C")
        dden_add = np.repeat(
            1.0 / np.arange(2.0, n + 1.0) - 1.0 / np.arange(1.0, n), m
        )
        levels = np.concatenate([rho.ravel(order="C"), removal_level])
        ev_col = np.concatenate([np.tile(np.arange(m), n - 1), np.arange(m)])
        ev_k = np.concatenate(
            [np.repeat(np.arange(2, n + 1), m), np.zeros(m, dtype=np.int64)]
        )
        dnum = np.concatenate([dnum_add, -col_sum / n])
        dden = np.concatenate([dden_add, np.full(m, -1.0 / n)])
    else:
        levels = col_sum.copy()
        ev_col = np.arange(m)
        ev_k = np.zeros(m, dtype=np.int64)
        dnum = -col_sum.copy()
        dden = np.full(m, -1.0)

    order = np.argsort(levels, kind="stable")
    return Z, cum, col_sum, contrib, levels, ev_col, ev_k, dnum, dden, order


def total_order_projection(Ynn, C: float, log_theta: bool = False, debug: bool = False) -> ProjectionOutput:
    """Forward scan of the sorted event total order.

    Starts with every column active holding only its top element and walks
    the events by increasing level: a growth event applies while theta
    exceeds its level, a removal while theta has reached the column's full
    sum.  The first event that does not apply ends the scan: by the total
    order, no later event can apply either.
    """
    t0 = time.perf_counter()
    Y = _require_projectable(Ynn, C)
    n, m = Y.shape

    Z, cum, col_sum, contrib, levels, ev_col, ev_k, dnum, dden, order = _sorted_events(Y)

    num = float(contrib[0].sum())
    den = float(m)
    k = np.ones(m, dtype=np.int64)
    active = np.ones(m, dtype=bool)
    theta = (num - C) / den
    log = [theta] if log_theta else None

    lev = levels.tolist()
    col = ev_col.tolist()
    knew = ev_k.tolist()
    dn = dnum.tolist()
    dd = dden.tolist()

    applied = 0
    for idx in order.tolist():
        t = lev[idx]
        kk = knew[idx]
        if kk == 0:
            if theta >= t:
                assert k[col[idx]] == n, "column removal reached before its growth events"
                num += dn[idx]
                den += dd[idx]
                active[col[idx]] = False
                theta = (num - C) / den
                applied += 1
                if log is not None:
                    log.append(theta)
            else:
                break
        else:
            if theta > t:
                assert k[col[idx]] == kk - 1, "growth events applied out of order"
                num += dn[idx]
                den += dd[idx]
                k[col[idx]] = kk
                theta = (num - C) / den
                applied += 1
                if log is not None:
                    log.append(theta)
            else:
                break

    state = ThetaState(
        S=cum[np.minimum(k, n) - 1, np.arange(m)],
        k=np.where(active, k, n + 1),
        a=active,
        C=float(C),
        sentinel=n + 1,
        num=num,
        den=den,
        theta=theta,
    )
    if debug:
        state.check_drift()
    out = recover_solution(Y, theta, state)
    out.stats.outer_iterations = 1
    out.stats.heap_pops = applied
    out.stats.theta_log = log
    out.stats.elapsed = time.perf_counter() - t0
    return out


def inverse_total_order_projection(
    Ynn, C: float, log_theta: bool = False, debug: bool = False
) -> ProjectionOutput:
    """Backward walk over the event total order, visiting only ~J positions.

    The walk starts from the configuration in which every event is applied:
    all columns removed, selections notionally full.  A global heap hands out
    the largest pending event level.  A column's first appearance is its
    removal event: it is tentatively re-activated with its full selection and
    kept unless its total mass is dominated by theta, in which case the
    removal stands and the walk is over (every remaining event sits at a
    lower level and is consistent as applied).  Subsequent appearances undo
    one growth event at a time, popping the column's smallest selected entry
    from its lazily built min-heap, until theta exceeds the pending level:
    that growth event stands and the walk is over.

    Theta never exceeds the level of the last processed event and is
    nondecreasing across accepted transitions, so earlier resolutions stay
    valid and the final state is the fixed point.
    """
    t0 = time.perf_counter()
    Y = _require_projectable(Ynn, C)
    n, m = Y.shape

    col_sum = Y.sum(axis=0)
    state = ThetaState(
        S=col_sum.astype(np.float64).copy(),
        k=np.full(m, n + 1, dtype=np.int64),
        a=np.zeros(m, dtype=bool),
        C=float(C),
        sentinel=n + 1,
    )
    k = state.k
    S = state.S

    # global max-heap on pending event level (heapq is a min-heap: negate);
    # each column's first pending event is its removal, at its full sum
    pending = [(-col_sum[j], j) for j in range(m)]
    heapq.heapify(pending)
    col_heap: list[list[float] | None] = [None] * m

    theta = 0.0
    log = [] if log_theta else None
    pops = 0
    sentinel = n + 1

    while pending:
        neg_level, j = pending[0]
        level = -neg_level
        if k[j] == sentinel:
            # removal event: re-activate with the full selection, then test
            # domination on the updated theta (equivalent to testing first)
            state.activate(j, float(col_sum[j]), n)
            theta = update_theta(state)
            if col_sum[j] < theta:
                state.deactivate(j)
                if state.den > 0.0:
                    theta = update_theta(state)
                break  # removal stands: every pending event is consistent
            if log is not None:
                log.append(theta)
            heap = Y[:, j].tolist()
            heapq.heapify(heap)
            col_heap[j] = heap
            heapq.heapreplace(pending, (heap[0] * n - S[j], j))
            pops += 1
        else:
            if theta > level:
                break  # the pending growth event stands: theta is final
            if k[j] < 2:
                # pending event is the column's first element, level exactly 0.
                # It always stands (final theta > 0); reachable only when the
                # input sits on the ball boundary up to rounding, which drives
                # theta to 0 within float noise.
                break
            heap = col_heap[j]
            z = heapq.heappop(heap)
            pops += 1
            state.resize(j, S[j] - z, k[j] - 1)
            theta = update_theta(state)
            if log is not None:
                log.append(theta)
            heapq.heapreplace(pending, (heap[0] * k[j] - S[j], j))

    if debug:
        state.check_drift()
    out = recover_solution(Y, theta, state)
    out.stats.outer_iterations = 1
    out.stats.heap_pops = pops
    out.stats.theta_log = log
    out.stats.elapsed = time.perf_counter() - t0
    return out


_DISPATCH = {
    "naive": naive_projection,
    "total_order": total_order_projection,
    "inverse_total_order": inverse_total_order_projection,
}


def project_ball_l1inf(
    Y,
    C: float,
    algo: str = "inverse_total_order",
    log_theta: bool = False,
    debug: bool = False,
) -> ProjectionOutput:
    """Euclidean projection of a real matrix onto the l1,inf ball of radius C.

    Parameters
    ----------
    Y : array_like
        Real n x m matrix, any signs.
    C : float
        Ball radius, >= 0.
    algo : str
        One of ``"naive"``, ``"total_order"``, ``"inverse_total_order"``.
    log_theta : bool
        Record the theta value after every accepted transition in
        ``stats.theta_log`` (nondecreasing by construction).
    debug : bool
        Recompute the theta accumulators from scratch and fail on drift
        beyond ``DRIFT_BOUND``.

    Returns
    -------
    ProjectionOutput
        Inputs inside the ball come back unchanged with theta = 0.  Otherwise
        the result sits on the boundary, signs never oppose the input's, and
        magnitudes never exceed it.
    """
    Y = as_matrix(Y)
    if C < 0:
        raise ValueError("radius C must be nonnegative")
    n, m = Y.shape
    t0 = time.perf_counter()

    if norm_l1_inf(Y) <= C:
        mu = np.abs(Y).max(axis=0)
        stats = WorkStats(K=0, J=n * m, elapsed=time.perf_counter() - t0)
        return ProjectionOutput(X=Y.copy(), theta=0.0, mu=mu, active=mu > 0, stats=stats)

    if C == 0.0:
        # ball is the origin; the smallest dominating theta certifies it
        stats = WorkStats(K=n * m, J=0, elapsed=time.perf_counter() - t0)
        return ProjectionOutput(
            X=np.zeros_like(Y),
            theta=norm_linf_l1(Y),
            mu=np.zeros(m),
            active=np.zeros(m, dtype=bool),
            stats=stats,
        )

    try:
        fn = _DISPATCH[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}") from None

    signs, mags = sign_decompose(Y)
    out = fn(mags, C, log_theta=log_theta, debug=debug)
    out.X = np.asfortranarray(signs * out.X)
    out.stats.elapsed = time.perf_counter() - t0
    return out


def prox_linf_l1(Y, C: float, algo: str = "inverse_total_order") -> np.ndarray:
    """Proximity operator of C times the l-inf,1 norm.

    Computed through the Moreau decomposition: prox(Y) = Y - P(Y) where P is
    the projection onto the l1,inf ball of radius C, so prox(Y) + P(Y) == Y
    holds exactly.  Minimizes 0.5 * ||X - Y||_F^2 + C * ||X||_{inf,1}.
    """
    Y = as_matrix(Y)
    if not C > 0:
        raise ValueError("radius C must be positive")
    return Y - project_ball_l1inf(Y, C, algo=algo).X
