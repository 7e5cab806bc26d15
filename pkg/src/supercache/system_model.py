"""Validated configuration of the K-user cache-aided broadcast channel."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Mapping, Sequence

from .combinat import RationalLike, as_rational


class ConfigError(ValueError):
    """Base class for invalid-input errors (CLI exit code 2)."""


class NonIntegerCache(ConfigError):
    pass


class BadRange(ConfigError):
    pass


class OutOfRange(ConfigError):
    pass


@dataclass(frozen=True)
class SystemConfig:
    """K users, integer cache parameter t = K*gamma, N library files."""

    K: int
    t: int
    N: int

    @property
    def gamma(self) -> Fraction:
        return Fraction(self.t, self.K)

    @classmethod
    def from_gamma(cls, K: int, gamma: RationalLike, N: int) -> "SystemConfig":
        t = as_rational(gamma) * K
        return validate_config(cls(K, t, N))  # type: ignore[arg-type]


def validate_config(raw: SystemConfig) -> SystemConfig:
    K, t, N = raw.K, raw.t, raw.N
    for name, v in (("K", K), ("N", N)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise BadRange(f"{name} must be an integer, got {v!r}")
    if isinstance(t, bool):
        raise BadRange(f"t must be an integer, got {t!r}")
    if not isinstance(t, int):
        try:
            tq = as_rational(t)
        except (TypeError, ValueError) as exc:
            raise BadRange(f"t must be an integer, got {t!r}") from exc
        if tq.denominator != 1:
            raise NonIntegerCache(f"K*gamma = {tq} is not an integer (memory sharing unsupported)")
        t = int(tq)
    if K < 1:
        raise BadRange(f"K must be >= 1, got {K}")
    if not 0 <= t <= K:
        raise BadRange(f"t must lie in [0, K={K}], got {t}")
    if N < K:
        raise BadRange(f"N={N} < K={K}: distinct worst-case demands impossible")
    return SystemConfig(K, t, N)


@dataclass(frozen=True)
class CapacityProfile:
    """Capacities sorted ascending; ``user_of_rank[k-1]`` is the original id of rank k."""

    alphas: tuple[Fraction, ...]
    user_of_rank: tuple[Any, ...]

    @property
    def K(self) -> int:
        return len(self.alphas)

    def alpha(self, k: int) -> Fraction:
        """Capacity of the rank-k user (1-based)."""
        return self.alphas[k - 1]

    def by_user(self) -> dict[Any, Fraction]:
        return dict(zip(self.user_of_rank, self.alphas))

    @classmethod
    def uniform(cls, K: int, alpha: RationalLike = 1) -> "CapacityProfile":
        return sort_capacities({u: alpha for u in range(1, K + 1)})

    @classmethod
    def from_sequence(cls, alphas: Sequence[RationalLike]) -> "CapacityProfile":
        """User ids are positions 1..K of `alphas`."""
        return sort_capacities({u: a for u, a in enumerate(alphas, start=1)})


def sort_capacities(raw: Mapping[Hashable, RationalLike], K: int | None = None) -> CapacityProfile:
    if K is not None and len(raw) != K:
        raise BadRange(f"expected {K} capacities, got {len(raw)}")
    if not raw:
        raise BadRange("no capacities given")
    items = []
    for user, a in raw.items():
        q = as_rational(a)
        if not 0 < q <= 1:
            raise OutOfRange(f"capacity of user {user!r} is {q}, must lie in (0, 1]")
        items.append((q, user))
    items.sort(key=lambda it: (it[0], it[1]))
    return CapacityProfile(tuple(q for q, _ in items), tuple(u for _, u in items))


def validate_demand(cfg: SystemConfig, demand: Sequence[int]) -> tuple[int, ...]:
    """Demand indexed by rank; repeated files are allowed."""
    d = tuple(demand)
    if len(d) != cfg.K:
        raise BadRange(f"demand has {len(d)} entries, expected K={cfg.K}")
    for k, n in enumerate(d, start=1):
        if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= cfg.N:
            raise BadRange(f"demand of rank {k} is {n!r}, must be a file index in [1, {cfg.N}]")
    return d


def distinct_demand(cfg: SystemConfig) -> tuple[int, ...]:
    return tuple(range(1, cfg.K + 1))
