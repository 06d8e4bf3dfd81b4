"""Deterministic seed derivation.

A run's generator is ``PCG64(SeedSequence(seed))``.  Sub-streams for
ensembles and CLI subcommands come from

    SeedSequence(entropy=base_seed, spawn_key=(crc32(label), index))

collapsed to one 64-bit integer, so each derived run can also be replayed on
its own from the integer alone.
"""

from __future__ import annotations

import zlib

import numpy as np


def label_key(label: str) -> int:
    return zlib.crc32(label.encode("utf-8"))


def derive_seed(base_seed: int, label: str, index: int) -> int:
    ss = np.random.SeedSequence(entropy=int(base_seed), spawn_key=(label_key(label), int(index)))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(hi) << 32 | int(lo)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))
