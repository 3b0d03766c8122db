"""Run every experiment on its default grid and write CSV plus SVG figures.

    python scripts/reproduce_all.py --out results --workers 8
"""
import argparse
import os
import time
from pathlib import Path

from enummdl import runner
from enummdl.cache import ComplexityCache
from enummdl.plots import plot_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--cache", default=None)
    ap.add_argument("--only", nargs="*", default=None, help="subset of experiment ids")
    args = ap.parse_args()

    out = Path(args.out)
    cache = ComplexityCache(args.cache) if args.cache else None
    for exp_id in args.only or list(runner.EXPERIMENTS):
        t0 = time.perf_counter()
        rows = runner.run_experiment(exp_id, workers=args.workers, cache=cache)
        runner.write_csv(exp_id, rows, out)
        plot_experiment(exp_id, rows, out / f"{exp_id}.svg")
        print(f"{exp_id:22s} {len(rows):6d} rows  {time.perf_counter() - t0:7.2f}s")


if __name__ == "__main__":
    main()
