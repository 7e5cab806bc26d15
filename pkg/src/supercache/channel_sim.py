"""GDoF receiver model.

User k sees every layer superposed. With successive interference
cancellation it peels layers from the top: layer m is decodable once layers
1..m-1 are removed, provided beta_m <= alpha_k (the layers below act as noise
at power P^-beta_m). No noise or channel coefficients are sampled.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinat import SubsetId, fmt_decimal, fmt_rational, ksubsets
from .placement import (CacheContents, FileStore, MissingPayload, SubfileIndex,
                        cache_lookup)
from .scheduler import LayerPlan, Schedule, xor_bytes
from .system_model import CapacityProfile


class UndeliverableSubfile(RuntimeError):
    """A demanded subfile is neither cached nor recoverable. Indicates a scheme bug."""


def decodable_layers(k: int, plan: LayerPlan, alpha_k: Fraction) -> int:
    L = 0
    for m in range(1, plan.n_layers + 1):
        if plan.beta[m] > alpha_k:
            break
        L = m
    return L


@dataclass(frozen=True)
class DecodeEvent:
    user: int
    sigma: SubsetId
    time: Fraction
    recovered: SubfileIndex


@dataclass
class SimReport:
    user_completion: dict[int, Fraction]
    completion: Fraction
    files: dict[int, bytes] = field(repr=False)
    verified: bool
    events: list[DecodeEvent] = field(default_factory=list, repr=False)
    user_of_rank: tuple = ()

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "completion": fmt_rational(self.completion),
            "completion_decimal": fmt_decimal(self.completion),
            "users": [
                {"rank": k,
                 "user": self.user_of_rank[k - 1] if self.user_of_rank else k,
                 "completion": fmt_rational(c),
                 "completion_decimal": fmt_decimal(c)}
                for k, c in sorted(self.user_completion.items())
            ],
        }


def completion_time(schedule: Schedule) -> Fraction:
    return max(schedule.layer_completion().values(), default=Fraction(0))


def simulate_delivery(schedule: Schedule, caches: dict[int, CacheContents], demand: Sequence[int],
                      store: FileStore, profile: CapacityProfile) -> SimReport:
    cfg, plan = schedule.cfg, schedule.plan
    taus = ksubsets(cfg.K, cfg.t)
    user_done: dict[int, Fraction] = {}
    files: dict[int, bytes] = {}
    events: list[DecodeEvent] = []
    verified = True

    for k in range(1, cfg.K + 1):
        cache = caches[k]
        if cache.data is None:
            raise MissingPayload(f"user {k}: simulation needs materialized caches")
        want = demand[k - 1]
        L = decodable_layers(k, plan, profile.alpha(k))
        recovered: dict[SubsetId, bytes] = {}
        done = Fraction(0)
        for m in range(1, L + 1):
            for slot in schedule.layers[m]:
                sigma = slot.msg.sigma
                if k not in sigma:
                    continue  # decoded only to be cancelled
                if slot.msg.payload is None:
                    raise MissingPayload(f"X_{sigma} has no payload")
                side = []
                for j in sigma:
                    if j == k:
                        continue
                    idx = SubfileIndex(demand[j - 1], tuple(i for i in sigma if i != j))
                    chunk = cache_lookup(cache, idx)
                    if chunk is None:
                        raise UndeliverableSubfile(f"user {k} lacks side information {idx}")
                    side.append(chunk)
                tau = tuple(i for i in sigma if i != k)
                recovered[tau] = xor_bytes([slot.msg.payload, *side]) if side else slot.msg.payload
                events.append(DecodeEvent(k, sigma, slot.end, SubfileIndex(want, tau)))
                done = max(done, slot.end)

        parts = []
        for tau in taus:
            if k in tau:
                parts.append(cache_lookup(cache, SubfileIndex(want, tau)))
            elif tau in recovered:
                parts.append(recovered[tau])
            else:
                raise UndeliverableSubfile(
                    f"user {k} (decodes {L} layers) cannot obtain W^{want}_{tau}")
        files[k] = b"".join(parts)
        user_done[k] = done
        verified = verified and files[k] == store.files[want - 1]

    return SimReport(user_done, max(user_done.values(), default=Fraction(0)), files,
                     verified, events, profile.user_of_rank)
