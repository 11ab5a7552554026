#!/usr/bin/env python3
"""Opinion retention on long paths as the threshold shrinks.

For each eps, runs absorbing replicates on the n-vertex path and prints the
minimum and mean retained opinion counts next to the (1 - 12*eps) * n
retention threshold and the 3 * exp(-eps * n) probability bound for falling
below it.

Example:
    python scripts/coexistence_scan.py -n 1000 --eps-grid 0.002,0.005,0.01,0.02 --reps 100
"""

import argparse
import math

from ctvoter.experiments import coexistence_experiment


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=1000, help="path length")
    ap.add_argument("--eps-grid", default="0.002,0.005,0.01,0.02,0.05")
    ap.add_argument("--reps", type=int, default=100)
    ap.add_argument("--seed", type=int, default=91)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    grid = [float(x) for x in args.eps_grid.split(",")]
    print(f"path n={args.n}, {args.reps} replicates per threshold")
    header = f"{'eps':>7}  {'min nu':>7}  {'mean nu':>8}  {'(1-12eps)n':>10}  {'viol freq':>9}  {'bound':>9}"
    print(header)
    for eps in grid:
        rep = coexistence_experiment(args.n, eps, args.reps, args.seed, workers=args.workers)
        agg = rep.aggregates
        bound = min(1.0, 3 * math.exp(-eps * args.n))
        print(
            f"{eps:7.3f}  {agg['min_nu']:7d}  {agg['mean_nu']:8.1f}  "
            f"{agg['violation_threshold']:10.1f}  {agg['violation_freq']:9.4f}  {bound:9.2e}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
