"""One slow user at capacity 1/K + gamma: naive XOR delivery vs superposition layers."""
from fractions import Fraction

from supercache.analysis import delay_mn, delay_naive, delay_superposition, thresholds
from supercache.system_model import CapacityProfile, SystemConfig

print(f"{'K':>4} {'t':>3} {'T_MN':>10} {'naive':>10} {'naive/T_MN':>10} {'T_sc':>10}")
for K, t in [(4, 1), (8, 2), (16, 4), (32, 8), (64, 4), (100, 10)]:
    cfg = SystemConfig(K, t, K)
    prof = CapacityProfile.from_sequence([Fraction(1 + t, K)] + [1] * (K - 1))
    assert thresholds(cfg).met_by(prof)
    T_mn = delay_mn(cfg)
    T_uc = delay_naive(cfg, prof, check=False)
    T_sc, _ = delay_superposition(cfg, prof)
    print(f"{K:>4} {t:>3} {str(T_mn):>10} {str(T_uc):>10} {float(T_uc / T_mn):>10.3f} {str(T_sc):>10}")
