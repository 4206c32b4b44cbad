#!/usr/bin/env python3
"""Desk-scale size sweep: projection time as one matrix dimension doubles.

``--fixed n`` holds the row count and doubles the column count (the regime
where sparsity grows with size); ``--fixed m`` does the transpose.
"""

import argparse

from l1inf.bench import SweepConfig, emit_csv, sweep_size
from l1inf.projection import ALGORITHMS


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixed", choices=("n", "m"), default="n")
    parser.add_argument("--base", type=int, default=200, help="the fixed dimension")
    parser.add_argument("--start", type=int, default=100)
    parser.add_argument("--doublings", type=int, default=6)
    parser.add_argument("--radius", type=float, default=1.0)
    parser.add_argument("--algo", default="all", help="algorithm name or 'all'")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--out", default="size_sweep.csv")
    args = parser.parse_args()

    sizes = [args.start * 2**i for i in range(args.doublings)]
    if args.fixed == "n":
        shapes = [(args.base, m) for m in sizes]
    else:
        shapes = [(n, args.base) for n in sizes]
    algos = list(ALGORITHMS) if args.algo == "all" else [args.algo]
    cfg = SweepConfig(
        shapes=shapes,
        radii=[args.radius],
        algos=algos,
        seed=args.seed,
        repetitions=args.reps,
        timing_strict=True,
    )
    records = sweep_size(cfg)
    emit_csv(records, args.out)
    print(f"wrote {len(records)} rows to {args.out}")


if __name__ == "__main__":
    main()
