"""Deterministic RNG stream derivation.

A master seed is mixed with a component tag and a replication index through a
SplitMix-style 64-bit finalizer, so that every component (demand generator,
outcome sampler, policy, ...) of every replication owns an independent,
reproducible stream.
"""

from __future__ import annotations

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF


def _splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _fold_tag(tag: str) -> int:
    # FNV-1a over the UTF-8 bytes keeps tags order-sensitive and stable.
    h = 0xCBF29CE484222325
    for b in tag.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK
    return h


def mix64(master_seed: int, tag: str, index: int = 0) -> int:
    """Mix (master seed, component tag, replication index) into one 64-bit seed."""
    s = master_seed & _MASK
    s = _splitmix64(s ^ _fold_tag(tag))
    s = _splitmix64(s ^ (index & _MASK))
    return s


def substream(master_seed: int, tag: str, index: int = 0) -> np.random.Generator:
    """Independent generator for one component of one replication."""
    return np.random.Generator(np.random.PCG64(mix64(master_seed, tag, index)))
