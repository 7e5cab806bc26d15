"""Distribution of the achievable/converse ratio over random rational-grid instances."""
import argparse
from collections import Counter

from supercache.analysis import delay_naive, delay_superposition, lower_bound
from supercache.oracle import random_config

ap = argparse.ArgumentParser()
ap.add_argument("--trials", type=int, default=5000)
ap.add_argument("--kmax", type=int, default=20)
args = ap.parse_args()

hist = Counter()
worst = (0, None)
gain = 0.0
for seed in range(args.trials):
    cfg, prof = random_config(seed, args.kmax)
    _, gap = lower_bound(cfg, prof)
    T_sc, _ = delay_superposition(cfg, prof)
    gain += float(delay_naive(cfg, prof, check=False) / T_sc)
    hist[min(int(gap * 2), 7)] += 1
    if gap > worst[0]:
        worst = (gap, (seed, cfg.K, cfg.t))

for b in sorted(hist):
    print(f"gap in [{b / 2:.1f}, {(b + 1) / 2:.1f}): {hist[b]}")
print(f"max gap {worst[0]} ({float(worst[0]):.4f}) at seed/K/t {worst[1]}")
print(f"mean speedup over naive delivery: {gain / args.trials:.4f}")
