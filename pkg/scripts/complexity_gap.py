"""Gap between enumerative and NML parametric complexity, and how well the
asymptotic NML formulas track the exact value.

    python scripts/complexity_gap.py --m 2 10 100
"""
import argparse

from enummdl.experiments import complexity_row
from enummdl.runner import log_grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, nargs="+", default=[2, 10, 100])
    ap.add_argument("--n-max", type=int, default=10**5)
    args = ap.parse_args()
    for m in args.m:
        print(f"m={m}")
        print(f"{'n':>8} {'enum':>10} {'nml':>10} {'enum/nml':>9} {'riss err':>9} {'szp err':>9}")
        for n in log_grid(1, args.n_max, 2):
            r = complexity_row(n, m)
            e, x = r["comp_enum"], r["comp_nml_exact"]
            print(f"{n:8d} {e:10.4f} {x:10.4f} {e / x:9.4f} "
                  f"{r['comp_rissanen'] - x:9.4f} {r['comp_szpankowski'] - x:9.4f}")


if __name__ == "__main__":
    main()
