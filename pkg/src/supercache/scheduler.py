"""Superposition-coded delivery.

Every (t+1)-subset sigma gets one XOR X_sigma. XORs are grouped into power
layers by their weakest member min(sigma); layer k occupies the SNR-exponent
slice [beta_{k-1}, beta_k] and all layers are transmitted at once.

The layer count is K - t (one more than the K - t - 1 written in the
original algorithm), otherwise X_{K-t, ..., K} is never sent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .combinat import SubsetId, binom, fmt_rational, ksubsets
from .placement import SubfileIndex
from .system_model import CapacityProfile, SystemConfig


class InfeasibleLayer(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class XorMessage:
    sigma: SubsetId
    payload: Optional[bytes] = None

    @property
    def layer(self) -> int:
        return self.sigma[0]


def xor_bytes(chunks: Sequence[bytes]) -> bytes:
    n = len(chunks[0])
    acc = 0
    for c in chunks:
        acc ^= int.from_bytes(c, "little")
    return acc.to_bytes(n, "little")


def generate_xors(cfg: SystemConfig, demand: Sequence[int],
                  subfiles: Optional[dict[SubfileIndex, bytes]] = None) -> list[XorMessage]:
    """X_sigma = XOR over k in sigma of W^{d_k}_{sigma minus k}, lexicographic in sigma."""
    sigmas = ksubsets(cfg.K, cfg.t + 1) if cfg.t < cfg.K else []
    if subfiles is None:
        return [XorMessage(s) for s in sigmas]
    out = []
    for s in sigmas:
        parts = [subfiles[SubfileIndex(demand[k - 1], tuple(j for j in s if j != k))] for k in s]
        out.append(XorMessage(s, xor_bytes(parts)))
    return out


def layer_count(cfg: SystemConfig) -> int:
    return cfg.K - cfg.t


def layer_size(cfg: SystemConfig, k: int) -> int:
    """|X_k| = C(K-k, t)."""
    return binom(cfg.K - k, cfg.t)


def cumulative(cfg: SystemConfig, k: int) -> int:
    """Number of XORs in layers 1..k: C(K, t+1) - C(K-k, t+1)."""
    return binom(cfg.K, cfg.t + 1) - binom(cfg.K - k, cfg.t + 1)


def partition_layers(xors: Sequence[XorMessage], cfg: SystemConfig) -> dict[int, list[XorMessage]]:
    layers: dict[int, list[XorMessage]] = {k: [] for k in range(1, layer_count(cfg) + 1)}
    for x in xors:
        layers[x.layer].append(x)
    return layers


def find_bottleneck(cfg: SystemConfig, profile: CapacityProfile) -> tuple[int, Fraction]:
    """Smallest k maximizing cumulative(k) / alpha_k, and that maximum."""
    w, M = 1, None
    for k in range(1, cfg.K + 1):
        v = Fraction(cumulative(cfg, k)) / profile.alpha(k)
        if M is None or v > M:
            w, M = k, v
    return w, M


@dataclass(frozen=True)
class LayerPlan:
    w: int
    M: Fraction
    beta: tuple[Fraction, ...]      # beta_0 .. beta_{K-t}
    rates: tuple[Fraction, ...]     # r_1 .. r_{K-t}
    layer_sizes: tuple[int, ...]

    @property
    def n_layers(self) -> int:
        return len(self.rates)

    def to_json(self) -> dict:
        return {
            "w": self.w,
            "M": fmt_rational(self.M),
            "betas": [fmt_rational(b) for b in self.beta],
            "rates": [fmt_rational(r) for r in self.rates],
            "layer_sizes": list(self.layer_sizes),
        }


def power_coefficients(cfg: SystemConfig, profile: CapacityProfile, w: int) -> LayerPlan:
    L = layer_count(cfg)
    cum_w = cumulative(cfg, w)
    if cum_w == 0:  # t = K: nothing to send
        return LayerPlan(w, Fraction(0), (Fraction(0),), (), ())
    aw = profile.alpha(w)
    beta = tuple(Fraction(cumulative(cfg, k), cum_w) * aw for k in range(L + 1))
    for k in range(1, L + 1):
        if beta[k] > profile.alpha(k):
            raise InfeasibleLayer(
                f"beta_{k} = {beta[k]} exceeds alpha_{k} = {profile.alpha(k)} (w={w} is not a bottleneck)")
    rates = tuple(beta[k] - beta[k - 1] for k in range(1, L + 1))
    sizes = tuple(layer_size(cfg, k) for k in range(1, L + 1))
    return LayerPlan(w, Fraction(cum_w) / aw, beta, rates, sizes)


def plan_delivery(cfg: SystemConfig, profile: CapacityProfile) -> LayerPlan:
    w, _ = find_bottleneck(cfg, profile)
    return power_coefficients(cfg, profile, w)


def symbolic_powers(plan: LayerPlan) -> list[tuple[Fraction, Fraction]]:
    """Layer k transmits with power P^-beta_{k-1} - P^-beta_k."""
    return [(plan.beta[k - 1], plan.beta[k]) for k in range(1, plan.n_layers + 1)]


def numeric_powers(plan: LayerPlan, P: float) -> list[float]:
    return [P ** -float(lo) - P ** -float(hi) for lo, hi in symbolic_powers(plan)]


@dataclass(frozen=True, slots=True)
class Slot:
    msg: XorMessage
    start: Fraction
    end: Fraction


@dataclass(frozen=True)
class Schedule:
    cfg: SystemConfig
    plan: LayerPlan
    layers: dict[int, list[Slot]]

    def layer_completion(self) -> dict[int, Fraction]:
        return {k: (slots[-1].end if slots else Fraction(0)) for k, slots in self.layers.items()}

    def to_json(self) -> dict:
        return {
            "layers": {
                str(k): [{"sigma": list(s.msg.sigma), "start": fmt_rational(s.start),
                          "end": fmt_rational(s.end)} for s in slots]
                for k, slots in self.layers.items()
            },
            "layer_completion": {str(k): fmt_rational(v) for k, v in self.layer_completion().items()},
        }


def build_schedule(layers: dict[int, list[XorMessage]], plan: LayerPlan, cfg: SystemConfig) -> Schedule:
    """Each layer sends its XORs back to back from time 0 at rate r_k.

    An XOR carries 1/C(K,t) file units, so it lasts (1/C(K,t)) / r_k.
    """
    s = Fraction(1, binom(cfg.K, cfg.t))
    out = {}
    for k, msgs in layers.items():
        dur = s / plan.rates[k - 1]
        out[k] = [Slot(m, j * dur, (j + 1) * dur) for j, m in enumerate(msgs)]
    return Schedule(cfg, plan, out)


def schedule_delivery(cfg: SystemConfig, profile: CapacityProfile, demand: Sequence[int],
                      subfiles: Optional[dict[SubfileIndex, bytes]] = None) -> Schedule:
    plan = plan_delivery(cfg, profile)
    layers = partition_layers(generate_xors(cfg, demand, subfiles), cfg)
    return build_schedule(layers, plan, cfg)
