"""Sum-rate surface over macro-BS and user power at fixed relay power.

    python3 scripts/fig3_surface.py --trials 20 --p-r 5 --out fig3.csv

Prints the surface as a table (rows p_bs, columns p_u) and marks where the
average stops changing along each axis.
"""

import argparse
from pathlib import Path

import numpy as np

from relaynet.harness import SweepConfig, run_surface, surface_to_csv


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=3)
    parser.add_argument("--m", type=int, default=5)
    parser.add_argument("--p-r", type=float, default=5.0)
    parser.add_argument("--p-max", type=float, default=10.0)
    parser.add_argument("--step", type=float, default=1.0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    grid = list(np.round(np.arange(0.0, args.p_max + 0.5 * args.step, args.step), 12))
    cfg = SweepConfig(m=args.m, trials=args.trials, seed=args.seed, mode="surface")
    s = run_surface(cfg, grid, grid, args.p_r, workers=args.workers)
    if args.out:
        Path(args.out).write_text(surface_to_csv(grid, grid, s))

    print("p_bs \\ p_u " + " ".join(f"{x:6g}" for x in grid))
    for p_bs, row in zip(grid, s):
        print(f"{p_bs:10g} " + " ".join(f"{v:6.3f}" for v in row))
    flat_bs = np.abs(np.diff(s, axis=0)).max(axis=1) <= 1e-9
    flat_u = np.abs(np.diff(s, axis=1)).max(axis=0) <= 1e-9
    print("flat along p_bs from", next((grid[k] for k in range(len(flat_bs)) if flat_bs[k:].all()), "never"))
    print("flat along p_u from", next((grid[k] for k in range(len(flat_u)) if flat_u[k:].all()), "never"))


if __name__ == "__main__":
    main()
