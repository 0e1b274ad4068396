#!/usr/bin/env python
"""Time the per-qubit ensemble kernel at several worker counts.

Runs the fig1b Gaussian (sigma0 = 10) SDD2 series with the direct method and
checks that every worker count reproduces the single-worker output bit for bit.
"""
from __future__ import annotations

import argparse
import os
import time

from qwdisorder.core_state import GaussianSpec
from qwdisorder.ensemble import average_entanglement, bloch_grid
from qwdisorder.schedule import SDD2


def timed(grid, steps, workers, policy):
    t0 = time.perf_counter()
    res = average_entanglement(
        grid, GaussianSpec(10.0), SDD2(), steps, seed=0, policy=policy, method="direct", workers=workers
    )
    return time.perf_counter() - t0, res.mean_entropy


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4, 8])
    p.add_argument("--policy", default="shared", choices=["shared", "per_qubit"])
    args = p.parse_args()

    grid = bloch_grid(args.grid_step, args.grid_step)
    print(f"{len(grid)} qubits x {args.steps} steps, cpu_count={os.cpu_count()}")
    base_time, base = None, None
    for w in args.workers:
        elapsed, series = timed(grid, args.steps, w, args.policy)
        if base is None:
            base_time, base = elapsed, series
        same = series.tobytes() == base.tobytes()
        print(f"workers={w:2d}  {elapsed:8.1f} s  speedup={base_time / elapsed:5.2f}  bitwise_same={same}")


if __name__ == "__main__":
    main()
