"""Uncoded placement: split every file into C(K, t) subfiles W^n_tau, |tau| = t,
and let user k store every W^n_tau with k in tau.

Placement never sees the capacity profile.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .combinat import SubsetId, binom, ksubsets
from .system_model import ConfigError, SystemConfig


class IndivisibleFileLength(ConfigError):
    pass


class MissingPayload(RuntimeError):
    """Raised when a byte-level operation is run on index-only data."""


class SubfileIndex(NamedTuple):
    file: int
    tau: SubsetId


@dataclass(frozen=True)
class FileStore:
    files: tuple[bytes, ...]

    def __post_init__(self):
        if len({len(f) for f in self.files}) > 1:
            raise ValueError("all library files must have the same length")

    @property
    def N(self) -> int:
        return len(self.files)

    @property
    def file_len(self) -> int:
        return len(self.files[0]) if self.files else 0

    def subfile_len(self, cfg: SystemConfig) -> int:
        S = binom(cfg.K, cfg.t)
        if self.file_len % S:
            raise IndivisibleFileLength(
                f"file length {self.file_len} is not divisible by C({cfg.K},{cfg.t}) = {S}")
        return self.file_len // S

    @classmethod
    def random(cls, N: int, file_len: int, seed: int = 0) -> "FileStore":
        rng = random.Random(seed)
        return cls(tuple(rng.randbytes(file_len) for _ in range(N)))


def subpacketize(store: FileStore, cfg: SystemConfig) -> dict[SubfileIndex, bytes]:
    """Contiguous equal chunks, assigned to tau in lexicographic order."""
    L = store.subfile_len(cfg)
    taus = ksubsets(cfg.K, cfg.t)
    out = {}
    for n, data in enumerate(store.files, start=1):
        for j, tau in enumerate(taus):
            out[SubfileIndex(n, tau)] = data[j * L:(j + 1) * L]
    return out


def reassemble(subfiles: dict[SubfileIndex, bytes], n: int, cfg: SystemConfig) -> bytes:
    return b"".join(subfiles[SubfileIndex(n, tau)] for tau in ksubsets(cfg.K, cfg.t))


@dataclass
class CacheContents:
    user: int
    entries: frozenset
    data: Optional[dict[SubfileIndex, bytes]] = field(default=None, repr=False)

    def holds(self, idx: SubfileIndex) -> bool:
        return idx in self.entries

    def fraction_of_library(self, cfg: SystemConfig) -> Fraction:
        """Stored subfiles over library subfiles; equals gamma by construction."""
        return Fraction(len(self.entries), cfg.N * binom(cfg.K, cfg.t))

    def nbytes(self) -> int:
        if self.data is None:
            raise MissingPayload("index-only cache has no bytes")
        return sum(len(b) for b in self.data.values())


def build_cache(k: int, cfg: SystemConfig,
                subfiles: Optional[dict[SubfileIndex, bytes]] = None) -> CacheContents:
    entries = frozenset(
        SubfileIndex(n, tau)
        for tau in ksubsets(cfg.K, cfg.t) if k in tau
        for n in range(1, cfg.N + 1)
    )
    data = None
    if subfiles is not None:
        data = {idx: subfiles[idx] for idx in entries}
    return CacheContents(k, entries, data)


def build_caches(cfg: SystemConfig,
                 subfiles: Optional[dict[SubfileIndex, bytes]] = None) -> dict[int, CacheContents]:
    return {k: build_cache(k, cfg, subfiles) for k in range(1, cfg.K + 1)}


def cache_lookup(cache: CacheContents, idx: SubfileIndex) -> Optional[bytes]:
    if idx not in cache.entries:
        return None
    if cache.data is None:
        raise MissingPayload(f"user {cache.user} cache is index-only")
    return cache.data[idx]
