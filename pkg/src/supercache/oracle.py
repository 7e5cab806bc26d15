"""Brute-force cross-checks.

Nothing here imports :mod:`supercache.analysis`; naive delays are found by
literal subset enumeration and the superposition delay by a direct max over
users, so agreement with the closed forms is an independent confirmation.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional

from .channel_sim import completion_time, simulate_delivery
from .placement import FileStore, build_caches, subpacketize
from .scheduler import schedule_delivery
from .system_model import CapacityProfile, SystemConfig, validate_config

ENUM_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    quantity: str
    brute: Fraction
    formula: Fraction

    @property
    def agree(self) -> bool:
        return self.brute == self.formula


def brute_naive_delay(cfg: SystemConfig, profile: CapacityProfile) -> Fraction:
    K, t = cfg.K, cfg.t
    if t == K:
        return Fraction(0)
    if math.comb(K, t + 1) > ENUM_BUDGET:
        raise BudgetExceeded(f"C({K},{t + 1}) subsets exceed the enumeration budget")
    total = Fraction(0)
    for sigma in combinations(range(K), t + 1):
        total += max(1 / profile.alphas[i] for i in sigma)
    return total / math.comb(K, t)


def brute_superposition_delay(cfg: SystemConfig, profile: CapacityProfile) -> Fraction:
    """max over w of (1/alpha_w) * #{sigma : min sigma <= w} / C(K, t), counting subsets directly."""
    K, t = cfg.K, cfg.t
    if t == K:
        return Fraction(0)
    if math.comb(K, t + 1) > ENUM_BUDGET:
        raise BudgetExceeded(f"C({K},{t + 1}) subsets exceed the enumeration budget")
    weakest = [0] * (K + 1)
    for sigma in combinations(range(1, K + 1), t + 1):
        weakest[sigma[0]] += 1
    best, running = Fraction(0), 0
    for w in range(1, K + 1):
        running += weakest[w]
        best = max(best, Fraction(running) / profile.alphas[w - 1])
    return best / math.comb(K, t)


def brute_decode_check(cfg: SystemConfig, profile: CapacityProfile, all_demands: bool = True,
                       subfile_len: int = 16, seed: int = 0) -> OracleResult:
    """Byte-level delivery for every distinct-demand permutation (or just the identity).

    ``brute`` holds the worst observed completion; it only agrees with the
    closed-form value if every run also reconstructed every file exactly.
    """
    K = cfg.K
    if all_demands and K > 5:
        raise BudgetExceeded(f"{math.factorial(K)} demand permutations for K={K}")
    store = FileStore.random(cfg.N, subfile_len * math.comb(K, cfg.t), seed)
    subfiles = subpacketize(store, cfg)
    caches = build_caches(cfg, subfiles)
    expected = brute_superposition_delay(cfg, profile)
    demands: Iterable[tuple[int, ...]] = (
        permutations(range(1, K + 1)) if all_demands else [tuple(range(1, K + 1))])
    worst: Optional[Fraction] = None
    ok = True
    for d in demands:
        sched = schedule_delivery(cfg, profile, d, subfiles)
        rep = simulate_delivery(sched, caches, d, store, profile)
        ok = ok and rep.verified and rep.completion == expected == completion_time(sched)
        if worst is None or rep.completion > worst:
            worst = rep.completion
    if not ok:
        # force disagreement: a mismatch anywhere must not be masked by the max
        return OracleResult("decode", Fraction(-1), expected)
    return OracleResult("decode", worst if worst is not None else Fraction(0), expected)


def random_config(seed: int, K_max: int = 12, grid: int = 64) -> tuple[SystemConfig, CapacityProfile]:
    rng = random.Random(seed)
    K = rng.randint(2, max(2, K_max))
    t = rng.randint(0, K - 1)
    alphas = [Fraction(rng.randint(1, grid), grid) for _ in range(K)]
    return validate_config(SystemConfig(K, t, K)), CapacityProfile.from_sequence(alphas)


@dataclass
class TrialFailure:
    seed: int
    cfg: SystemConfig
    profile: CapacityProfile
    check: str
    detail: str


def check_instance(cfg: SystemConfig, profile: CapacityProfile,
                   naive_formula: Callable, sc_formula: Callable) -> Optional[tuple[str, str]]:
    """Returns (check name, detail) for the first failing property, else None.

    The closed forms are passed in so this module stays free of analysis imports.
    """
    brute_uc = brute_naive_delay(cfg, profile)
    uc = naive_formula(cfg, profile)
    if brute_uc != uc:
        return "naive_delay", f"enumeration {brute_uc} != closed form {uc}"
    sched = schedule_delivery(cfg, profile, tuple(range(1, cfg.K + 1)))
    plan = sched.plan
    T = completion_time(sched)
    sc = sc_formula(cfg, profile)
    if T != sc:
        return "completion", f"schedule {T} != closed form {sc}"
    if brute_superposition_delay(cfg, profile) != sc:
        return "completion", "brute superposition delay disagrees"
    ends = set(sched.layer_completion().values())
    if len(ends) > 1:
        return "equal_layers", f"layer completions {sorted(ends)}"
    b = plan.beta
    if any(b[k] > profile.alphas[k - 1] for k in range(1, len(b))):
        return "decodability", f"beta {b} exceeds alphas {profile.alphas}"
    if any(b[k] <= b[k - 1] for k in range(1, len(b))) or b[-1] > 1:
        return "decodability", f"beta not strictly increasing within [0,1]: {b}"
    T_mn = Fraction(cfg.K - cfg.t, cfg.t + 1)
    if not T_mn <= sc <= uc:
        return "ordering", f"T_mn={T_mn}, T_sc={sc}, T_uc={uc}"
    return None


def run_trials(seeds: Iterable[int], K_max: int, naive_formula: Callable, sc_formula: Callable,
               grid: int = 64) -> tuple[int, Optional[TrialFailure]]:
    n = 0
    for seed in seeds:
        cfg, profile = random_config(seed, K_max, grid)
        n += 1
        bad = check_instance(cfg, profile, naive_formula, sc_formula)
        if bad is not None:
            return n, TrialFailure(seed, cfg, profile, *bad)
    return n, None
