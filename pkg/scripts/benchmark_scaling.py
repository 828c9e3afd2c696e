#!/usr/bin/env python3
"""Measure solve time across node counts and recovery budgets.

For each n the script times three budgets: k=0 (stages locked together),
k=n//2 (coupled stages, the LP-heavy regime), and k=n-1 (stages decoupled).
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from rrst.config import SolveConfig
from rrst.gen import generate_instance
from rrst.solver import solve_rrst


def time_solve(n: int, k: int, density: float, seeds, config: SolveConfig):
    samples = []
    iters = 0
    for seed in seeds:
        inst = generate_instance(n, density, k, 50, seed)
        t0 = time.perf_counter()
        sol = solve_rrst(inst, config)
        samples.append(time.perf_counter() - t0)
        iters = max(iters, sol.iterations)
    return statistics.median(samples), max(samples), iters


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="6,10,14,18,22,26,30",
                        help="comma-separated node counts")
    parser.add_argument("--density", type=float, default=0.3)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--mid-k", action="store_true",
                        help="also time k=n//2 (slow for large n)")
    args = parser.parse_args()

    config = SolveConfig()
    sizes = [int(s) for s in args.sizes.split(",")]
    seeds = list(range(1, args.repeats + 1))

    budgets = ["k=0", "k=n-1"] + (["k=n/2"] if args.mid_k else [])
    print(f"{'n':>4}  " + "".join(f"{b + ' med/max (ms)':>26}" for b in budgets))
    for n in sizes:
        cells = []
        ks = [0, n - 1] + ([n // 2] if args.mid_k else [])
        for k in ks:
            med, worst, _ = time_solve(n, k, args.density, seeds, config)
            cells.append(f"{med * 1000:>12.1f}/{worst * 1000:<9.1f}")
        print(f"{n:>4}  " + " ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
