#!/usr/bin/env python
"""Regenerate the data behind every figure preset into one directory.

    python scripts/reproduce_figures.py --out results            # full scale
    python scripts/reproduce_figures.py --grid-step 0.5 --only fig5b fig6a
"""
from __future__ import annotations

import argparse
import logging
import time

from qwdisorder.cli import run_scenario
from qwdisorder.config import RunConfig
from qwdisorder.presets import ETA_PRESETS, PSCAN_PRESETS, SERIES_PRESETS


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results")
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--realizations", type=int, default=1)
    p.add_argument("--p-count", type=int, default=1000, help="p values for the fig4 scans")
    p.add_argument("--only", nargs="*", help="subset of figure presets")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    names = args.only or [*SERIES_PRESETS, *ETA_PRESETS, *PSCAN_PRESETS]
    base = RunConfig(
        steps=args.steps,
        grid_step=args.grid_step,
        seed=args.seed,
        realizations=args.realizations,
        out=args.out,
    )
    ps = [k / (args.p_count - 1) for k in range(args.p_count)]
    for name in names:
        t0 = time.perf_counter()
        paths = run_scenario(base.replace(scenario=name), p_values=ps)
        print(f"{name}: {len(paths)} file(s) in {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
