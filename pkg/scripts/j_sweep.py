#!/usr/bin/env python3
"""J constant vs resulting sparsity for the inverse-total-order walk.

Pairs the entry sparsity of each projected matrix with J/(n*m), the fraction
of the event total order the backward walk had to visit.
"""

import argparse

import numpy as np

from l1inf.bench import measure_J


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=500)
    parser.add_argument("--m", type=int, default=500)
    parser.add_argument("--points", type=int, default=30)
    parser.add_argument("--lo", type=float, default=1e-3)
    parser.add_argument("--hi", type=float, default=8.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="j_sweep.csv")
    args = parser.parse_args()

    radii = [float(c) for c in np.geomspace(args.lo, args.hi, args.points)]
    pairs = measure_J(args.n, args.m, radii, seed=args.seed)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write("entry_sparsity,J_fraction\n")
        for sparsity, j_frac in pairs:
            fh.write(f"{sparsity:.17g},{j_frac:.17g}\n")
    print(f"wrote {len(pairs)} rows to {args.out}")


if __name__ == "__main__":
    main()
