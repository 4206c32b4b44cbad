"""Independent reference solvers used to certify the projection algorithms.

Two oracles, deliberately slow and structurally unlike the production
algorithms:

* :func:`theta_by_bisection` exploits the reduction of the matrix problem to
  m per-column simplex projections at a shared level theta.  The total cap
  mass g(theta) is continuous and nonincreasing in theta, so the level that
  makes it equal the radius is found by plain bisection.

* :func:`project_small_kkt` enumerates, for tiny instances, every
  (active-column, per-column support size) configuration, solves each for
  theta, keeps the configurations passing the first-order optimality
  inequalities, and returns the feasible solution nearest the input.

A randomized cross-validation harness (:func:`certify_random_instances`)
drives both oracles against all three algorithms; the CLI ``check``
subcommand wraps it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .core import as_matrix, norm_l1_inf
from .projection import ALGORITHMS, project_ball_l1inf
from .simplex import project_simplex

__all__ = [
    "OracleResult",
    "theta_by_bisection",
    "project_small_kkt",
    "CheckReport",
    "certify_random_instances",
]

KKT_MAX_SIDE = 6


@dataclass(frozen=True)
class OracleResult:
    """Reference solution: projected matrix, level, and solver effort.

    ``residual`` is |sum_j mu_j(theta) - C| at termination; ``iterations``
    counts bisection steps or enumerated configurations.
    """

    X: np.ndarray
    theta: float
    residual: float
    iterations: int


def _cap_mass(Y: np.ndarray, col_sum: np.ndarray, theta: float) -> float:
    """g(theta) = sum over columns of the simplex threshold at radius theta."""
    total = 0.0
    for j in range(Y.shape[1]):
        if col_sum[j] > theta:
            total += project_simplex(Y[:, j], theta).tau
    return total


def theta_by_bisection(Ynn, C: float, tol: float = 1e-12, max_iterations: int = 256) -> OracleResult:
    """Find theta by bisecting g(theta) = sum_j mu_j(theta) against C.

    g decreases from the l1,inf norm at theta = 0 to 0 at the largest column
    sum, so the bracket is always valid for inputs strictly outside the ball.
    Termination needs both |g(theta) - C| <= tol and a bracket width of
    tol * (1 + initial width); the evaluated point with the smallest cap-mass
    error is reported.
    """
    Y = as_matrix(Ynn)
    if np.any(Y < 0):
        raise ValueError("oracle input must be entrywise nonnegative")
    if not C > 0:
        raise ValueError("radius C must be positive")
    if not norm_l1_inf(Y) > C:
        raise ValueError("input inside the ball; the caller fast path applies")
    if not tol > 0:
        raise ValueError("tol must be positive")

    col_sum = Y.sum(axis=0)
    lo, hi = 0.0, float(col_sum.max())
    width0 = hi - lo
    g_lo = norm_l1_inf(Y)  # g(0)
    g_hi = 0.0
    best_theta, best_err = lo, abs(g_lo - C)

    iterations = 0
    slack = 1e-9 * (1.0 + g_lo)
    while iterations < max_iterations:
        mid = 0.5 * (lo + hi)
        g = _cap_mass(Y, col_sum, mid)
        iterations += 1
        # g must stay sandwiched between the bracket values (monotonicity)
        if g > g_lo + slack or g < g_hi - slack:
            raise AssertionError("cap mass g(theta) is not monotone on the bracket")
        err = abs(g - C)
        if err < best_err:
            best_theta, best_err = mid, err
        if g > C:
            lo, g_lo = mid, g
        else:
            hi, g_hi = mid, g
        if err <= tol and (hi - lo) <= tol * (1.0 + width0):
            break
        if (hi - lo) <= np.finfo(np.float64).eps * max(1.0, hi):
            break  # bracket at float resolution; best point stands
    else:
        raise RuntimeError(f"bisection did not converge in {max_iterations} iterations")

    theta = best_theta
    X = np.empty_like(Y)
    for j in range(Y.shape[1]):
        X[:, j] = Y[:, j] - project_simplex(Y[:, j], theta).projected
    return OracleResult(X=X, theta=float(theta), residual=float(best_err), iterations=iterations)


def project_small_kkt(Ynn, C: float) -> OracleResult:
    """Exhaustive first-order-conditions solver for instances up to 6x6.

    For every assignment of a support size k_j in {0, .., n} per column
    (0 meaning the column is dropped; supports of a simplex projection are
    always top-value sets, so only prefixes of the sorted column qualify),
    solve for theta, screen the optimality inequalities with a small slack,
    and keep the feasible candidate closest to the input.
    """
    Y = as_matrix(Ynn)
    n, m = Y.shape
    if n > KKT_MAX_SIDE or m > KKT_MAX_SIDE:
        raise ValueError(f"instance too large for exhaustive search (limit {KKT_MAX_SIDE})")
    if np.any(Y < 0):
        raise ValueError("oracle input must be entrywise nonnegative")
    if not C > 0:
        raise ValueError("radius C must be positive")
    if not norm_l1_inf(Y) > C:
        raise ValueError("input inside the ball; the caller fast path applies")

    Z = np.sort(Y, axis=0)[::-1]
    cum = np.cumsum(Z, axis=0)
    col_sum = cum[-1]
    eps = 1e-9

    # per column: selected-sum and 1/k tables indexed by support size
    sel = [[0.0] + [float(cum[kk - 1, j]) for kk in range(1, n + 1)] for j in range(m)]

    best = None
    examined = 0
    for ks in product(range(n + 1), repeat=m):
        examined += 1
        den = 0.0
        num = 0.0
        for j, kk in enumerate(ks):
            if kk:
                num += sel[j][kk] / kk
                den += 1.0 / kk
        if den == 0.0:
            continue
        theta = (num - C) / den
        if theta < -eps:
            continue
        mu = np.zeros(m)
        ok = True
        for j, kk in enumerate(ks):
            if kk == 0:
                if col_sum[j] > theta + eps:
                    ok = False
                    break
            else:
                mu_j = (sel[j][kk] - theta) / kk
                if mu_j < -eps:
                    ok = False
                    break
                # selected entries sit at or above the cap, the rest below
                if Z[kk - 1, j] < mu_j - eps:
                    ok = False
                    break
                if kk < n and Z[kk, j] > mu_j + eps:
                    ok = False
                    break
                mu[j] = max(mu_j, 0.0)
        if not ok:
            continue
        X = np.minimum(Y, mu[np.newaxis, :])
        dist = float(((X - Y) ** 2).sum())
        if best is None or dist < best[0]:
            best = (dist, float(theta), X, float(abs(mu.sum() - C)))

    if best is None:
        raise RuntimeError("no configuration satisfied the optimality conditions")
    _, theta, X, residual = best
    return OracleResult(X=X, theta=theta, residual=residual, iterations=examined)


@dataclass
class CheckReport:
    """Outcome of a randomized certification run."""

    trials: int = 0
    failures: int = 0
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def certify_random_instances(
    trials: int = 1000,
    max_n: int = 8,
    max_m: int = 8,
    seed: int = 0,
    tol: float = 1e-9,
    kkt_limit: int = 4,
    algos: tuple[str, ...] = ALGORITHMS,
    project_fn=project_ball_l1inf,
) -> CheckReport:
    """Cross-validate the projection algorithms against both oracles.

    Each trial draws a random shape in [1, max_n] x [1, max_m], entries from
    the grid {0, 0.1, ..., 1.0} with random signs (ties on purpose: they
    stress the ordering logic), and a radius spanning (0, 1.5 * norm].
    Radii at or above the norm must reproduce the input exactly; radii below
    it are checked entrywise against the bisection oracle, and against the
    exhaustive solver when both sides are at most ``kkt_limit``.

    ``project_fn`` is injectable so the harness itself can be tested against
    a deliberately broken implementation.
    """
    rng = np.random.default_rng(seed)
    report = CheckReport()

    for trial in range(trials):
        n = int(rng.integers(1, max_n + 1))
        m = int(rng.integers(1, max_m + 1))
        mags = rng.integers(0, 11, size=(n, m)).astype(np.float64) / 10.0
        signs = np.where(rng.random((n, m)) < 0.5, -1.0, 1.0)
        Y = np.asfortranarray(mags * signs)
        norm = norm_l1_inf(Y)
        C = float(rng.uniform(0.0, 1.5) * norm) if norm > 0 else float(rng.uniform(0.1, 1.0))
        report.trials += 1

        def fail(msg: str) -> None:
            report.failures += 1
            if len(report.messages) < 50:
                report.messages.append(
                    f"trial {trial}: {msg}\n  C={C!r}\n  Y={Y.tolist()!r}"
                )

        if C >= norm:
            for algo in algos:
                out = project_fn(Y, C, algo=algo)
                if not np.array_equal(out.X, Y) or out.theta != 0.0:
                    fail(f"{algo}: inside-ball input not returned unchanged")
                _check_accounting(out, n, m, fail, algo)
            continue

        ref = theta_by_bisection(mags, C, tol=1e-12)
        ref_X = signs * ref.X
        thetas = {}
        for algo in algos:
            out = project_fn(Y, C, algo=algo)
            thetas[algo] = out.theta
            if abs(out.theta - ref.theta) > tol:
                fail(f"{algo}: theta {out.theta!r} vs oracle {ref.theta!r}")
            if float(np.abs(out.X - ref_X).max()) > tol:
                fail(f"{algo}: projection differs from oracle by "
                     f"{float(np.abs(out.X - ref_X).max()):.3e}")
            if abs(norm_l1_inf(out.X) - C) > tol:
                fail(f"{algo}: output norm {norm_l1_inf(out.X)!r} != C")
            _check_accounting(out, n, m, fail, algo)
        if n <= kkt_limit and m <= kkt_limit:
            kkt = project_small_kkt(mags, C)
            if abs(kkt.theta - ref.theta) > tol or float(np.abs(kkt.X - ref.X).max()) > tol:
                fail(
                    f"exhaustive solver disagrees with bisection: "
                    f"theta {kkt.theta!r} vs {ref.theta!r}"
                )
    return report


def _check_accounting(out, n: int, m: int, fail, algo: str) -> None:
    if out.stats.K + out.stats.J != n * m or not 0 <= out.stats.J <= n * m:
        fail(f"{algo}: accounting K={out.stats.K} J={out.stats.J} nm={n * m}")
