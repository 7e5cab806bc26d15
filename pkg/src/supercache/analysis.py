"""Closed-form delays, capacity thresholds, converse bound and gap ratio.

All delays are exact Fractions in normalized time units (one unit file over
a unit-capacity link takes time 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .combinat import binom, fmt_decimal, fmt_rational
from .scheduler import LayerPlan, cumulative, find_bottleneck
from .system_model import CapacityProfile, ConfigError, SystemConfig

GAP_BOUND = 4


class PremiseViolated(ConfigError):
    pass


def delay_mn(cfg: SystemConfig) -> Fraction:
    """K(1 - gamma) / (t + 1), the all-unit-capacity delay."""
    return cfg.K * (1 - cfg.gamma) / (cfg.t + 1)


def delay_naive_enumerated(cfg: SystemConfig, profile: CapacityProfile) -> Fraction:
    if cfg.t == cfg.K:
        return Fraction(0)
    total = sum(max(1 / profile.alpha(i) for i in s)
                for s in combinations(range(1, cfg.K + 1), cfg.t + 1))
    return Fraction(total) / binom(cfg.K, cfg.t)


def delay_naive_grouped(cfg: SystemConfig, profile: CapacityProfile) -> Fraction:
    if cfg.t == cfg.K:
        return Fraction(0)
    # C(K-k, t) subsets have rank k as their weakest member
    total = sum(Fraction(binom(cfg.K - k, cfg.t)) / profile.alpha(k) for k in range(1, cfg.K + 1))
    return total / binom(cfg.K, cfg.t)


def delay_naive(cfg: SystemConfig, profile: CapacityProfile, check: bool = True) -> Fraction:
    """Worst-case delay when each XOR is sent alone at its weakest member's rate."""
    grouped = delay_naive_grouped(cfg, profile)
    if check and binom(cfg.K, cfg.t + 1) <= 50_000:
        enum = delay_naive_enumerated(cfg, profile)
        if enum != grouped:
            raise ArithmeticError(f"naive delay mismatch: enumerated {enum} != grouped {grouped}")
    return grouped


def delay_superposition(cfg: SystemConfig, profile: CapacityProfile) -> tuple[Fraction, int]:
    """(T_sc, w) with w the smallest maximizer of cumulative(k) / alpha_k."""
    w, M = find_bottleneck(cfg, profile)
    return M / binom(cfg.K, cfg.t), w


@dataclass(frozen=True)
class ThresholdTable:
    cfg: SystemConfig
    exact: tuple[Fraction, ...]
    approx: tuple[float, ...]

    def rows(self):
        for k, (e, a) in enumerate(zip(self.exact, self.approx), start=1):
            yield k, e, a

    def met_by(self, profile: CapacityProfile) -> bool:
        return all(a >= th for a, th in zip(profile.alphas, self.exact))


def threshold_exact(cfg: SystemConfig, k: int) -> Fraction:
    if cfg.t == cfg.K:
        return Fraction(0)
    return 1 - Fraction(binom(cfg.K - k, cfg.t + 1), binom(cfg.K, cfg.t + 1))


def threshold_approx(cfg: SystemConfig, k: int) -> float:
    return 1 - math.exp(-k * cfg.t / cfg.K)


def thresholds(cfg: SystemConfig) -> ThresholdTable:
    ks = range(1, cfg.K + 1)
    return ThresholdTable(cfg, tuple(threshold_exact(cfg, k) for k in ks),
                          tuple(threshold_approx(cfg, k) for k in ks))


def threshold_profile(cfg: SystemConfig) -> CapacityProfile:
    """Every user sits exactly at its threshold (t = K falls back to unit capacity)."""
    return CapacityProfile.from_sequence([th if th > 0 else Fraction(1) for th in thresholds(cfg).exact])


def lower_bound(cfg: SystemConfig, profile: CapacityProfile) -> tuple[Fraction, Optional[Fraction]]:
    """Converse (1/alpha_w) * (1/2) * w(1-gamma)/(1+w*gamma) and the ratio T_sc / bound.

    Obtained by raising the first w users to alpha_w and the rest to 1. The
    ratio is None when the bound is 0 (t = K).
    """
    T_sc, w = delay_superposition(cfg, profile)
    g = cfg.gamma
    T_lb = (1 / profile.alpha(w)) * Fraction(1, 2) * w * (1 - g) / (1 + w * g)
    if T_lb == 0:
        return T_lb, None
    gap = T_sc / T_lb
    if gap > GAP_BOUND:
        raise ArithmeticError(f"gap {gap} exceeds {GAP_BOUND}")
    return T_lb, gap


def example1_naive(K: int, t: int) -> Fraction:
    """Naive delay with a single slow user at capacity 1/K + gamma."""
    slow = Fraction(1, K) + Fraction(t, K)
    if slow >= 1:
        raise PremiseViolated(f"1/K + gamma = {slow} is not below 1")
    cfg = SystemConfig(K, t, K)
    return delay_naive(cfg, CapacityProfile.from_sequence([slow] + [1] * (K - 1)))


def appendix_inequality(K: int, t: int, m: int) -> tuple[Fraction, Fraction, bool]:
    """[C(K,t+1) - C(K-m,t+1)] / C(K,t) <= m(1 - gamma), both sides exact."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n = max(K - m, 0)
    lhs = Fraction(binom(K, t + 1) - binom(n, t + 1), binom(K, t))
    rhs = m * (1 - Fraction(t, K))
    return lhs, rhs, lhs <= rhs


@dataclass(frozen=True)
class DelayReport:
    T_mn: Fraction
    T_uc: Fraction
    T_sc: Fraction
    T_lb: Fraction
    w: int
    gap_ratio: Optional[Fraction]
    speedup_vs_naive: Optional[Fraction]
    plan: Optional[LayerPlan] = None
    user_of_rank: tuple = ()

    def to_json(self) -> dict:
        def opt(q):
            return "undefined" if q is None else fmt_rational(q)
        out = {
            "T_mn": fmt_rational(self.T_mn),
            "T_uc": fmt_rational(self.T_uc),
            "T_sc": fmt_rational(self.T_sc),
            "T_lb": fmt_rational(self.T_lb),
            "gap_ratio": opt(self.gap_ratio),
            "speedup_vs_naive": opt(self.speedup_vs_naive),
            "T_sc_decimal": fmt_decimal(self.T_sc),
            "w": self.w,
        }
        if self.plan is not None:
            out["betas"] = [fmt_rational(b) for b in self.plan.beta]
            out["rates"] = [fmt_rational(r) for r in self.plan.rates]
        if self.user_of_rank:
            out["user_of_rank"] = list(self.user_of_rank)
        return out


def full_report(cfg: SystemConfig, profile: CapacityProfile, plan: Optional[LayerPlan] = None,
                completion: Optional[Fraction] = None) -> DelayReport:
    """All delays for one instance; cross-checks against a schedule's completion if given."""
    T_mn = delay_mn(cfg)
    T_uc = delay_naive(cfg, profile)
    T_sc, w = delay_superposition(cfg, profile)
    T_lb, gap = lower_bound(cfg, profile)
    if completion is not None and completion != T_sc:
        raise ArithmeticError(f"schedule completes at {completion}, closed form gives {T_sc}")
    if plan is not None and plan.M != Fraction(cumulative(cfg, w)) / profile.alpha(w):
        raise ArithmeticError("plan bottleneck disagrees with closed form")
    speedup = T_uc / T_sc if T_sc else None
    return DelayReport(T_mn, T_uc, T_sc, T_lb, w, gap, speedup, plan, profile.user_of_rank)
