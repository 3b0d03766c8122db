"""Lower/upper detection thresholds of a biased coin over a range of biases.

    python scripts/coin_thresholds.py --n-max 100000
"""
import argparse

import numpy as np

from enummdl.experiments import detection_thresholds


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=10**5)
    ap.add_argument("--thetas", default="0.30:0.49:0.01")
    args = ap.parse_args()
    lo, hi, step = (float(x) for x in args.thetas.split(":"))
    print(f"{'theta':>6} {'code':>5} {'lower':>7} {'upper':>7}")
    for theta in np.round(np.arange(lo, hi + step / 2, step), 4):
        for code in ("enum", "nml"):
            th = detection_thresholds(code, float(theta), 2, args.n_max)
            print(f"{theta:6.3f} {code:>5} {th.lower!s:>7} {th.upper!s:>7}")


if __name__ == "__main__":
    main()
