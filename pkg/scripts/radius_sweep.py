#!/usr/bin/env python3
"""Desk-scale radius sweep: sparsity, theta, J, and time vs the ball radius.

Defaults: one 1000x1000 uniform matrix, 30 log-spaced radii in [1e-3, 8],
all three algorithms, 5 timed repetitions per cell.  Writes a CSV consumed
by any plotting tool.
"""

import argparse

import numpy as np

from l1inf.bench import SweepConfig, emit_csv, sweep_radius
from l1inf.projection import ALGORITHMS


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--m", type=int, default=1000)
    parser.add_argument("--points", type=int, default=30)
    parser.add_argument("--lo", type=float, default=1e-3)
    parser.add_argument("--hi", type=float, default=8.0)
    parser.add_argument("--algo", default="all", help="algorithm name or 'all'")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--out", default="radius_sweep.csv")
    args = parser.parse_args()

    algos = list(ALGORITHMS) if args.algo == "all" else [args.algo]
    cfg = SweepConfig(
        shapes=[(args.n, args.m)],
        radii=[float(c) for c in np.geomspace(args.lo, args.hi, args.points)],
        algos=algos,
        seed=args.seed,
        repetitions=args.reps,
        timing_strict=True,
    )
    records = sweep_radius(cfg)
    emit_csv(records, args.out)
    print(f"wrote {len(records)} rows to {args.out}")


if __name__ == "__main__":
    main()
