"""Threshold curves alpha_th,k for K = 100 users at several cache sizes.

Writes one CSV per t plus a merged table, e.g.::

    python scripts/fig1_thresholds.py --K 100 --t 1 5 10 20 40 --outdir out/
"""
import argparse
import csv
from pathlib import Path

from supercache.analysis import thresholds
from supercache.combinat import fmt_decimal
from supercache.system_model import SystemConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--K", type=int, default=100)
    ap.add_argument("--t", type=int, nargs="+", default=[1, 5, 10, 20, 40])
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    tables = {t: thresholds(SystemConfig(args.K, t, args.K)) for t in args.t}
    with open(out / f"thresholds_K{args.K}.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k"] + [f"gamma={t}/{args.K}" for t in args.t])
        for k in range(1, args.K + 1):
            w.writerow([k] + [fmt_decimal(tables[t].exact[k - 1]) for t in args.t])

    for t, tab in tables.items():
        # share of users that may sit below full capacity without slowing delivery
        free = sum(1 for e in tab.exact if e < 1)
        print(f"t={t:3d} gamma={t / args.K:.2f}: {free}/{args.K} users have threshold < 1, "
              f"alpha_th,1 = {float(tab.exact[0]):.4f}")


if __name__ == "__main__":
    main()
