#!/usr/bin/env python3
"""Consensus probability versus threshold, against the 2*eps - 1 lower bound.

For each eps > 1/2 in the grid, runs seeded absorbing replicates and prints
the observed consensus frequency, the frequency with which the extremist set
dies out (expected to sit at 2*eps - 1), and the bound.

Example:
    python scripts/consensus_scan.py --graph path:20 --reps 2000 --seed 42
"""

import argparse

from ctvoter.experiments import consensus_experiment
from ctvoter.graphs import parse_graph_spec


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", default="path:20")
    ap.add_argument("--eps-grid", default="0.55,0.6,0.65,0.7,0.75,0.8,0.9,1.0")
    ap.add_argument("--reps", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    g = parse_graph_spec(args.graph)
    grid = [float(x) for x in args.eps_grid.split(",")]
    print(f"graph {args.graph} ({g.n_vertices} vertices), {args.reps} replicates per threshold")
    print(f"{'eps':>6}  {'P(consensus)':>12}  {'P(no extremists)':>17}  {'2eps-1':>7}  {'all 0/N':>8}")
    for eps in grid:
        rep = consensus_experiment(g, eps, args.reps, args.seed, workers=args.workers)
        agg = rep.aggregates
        ok = "yes" if agg["theta_in_0N_count"] == args.reps else "NO"
        print(
            f"{eps:6.2f}  {agg['consensus_freq']:12.4f}  {agg['theta_zero_freq']:17.4f}"
            f"  {2 * eps - 1:7.3f}  {ok:>8}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
