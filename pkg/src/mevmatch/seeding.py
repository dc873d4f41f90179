"""Deterministic substream derivation for reproducible sampling.

A master seed and a nonnegative index map to an independent-looking
child seed; the same (seed, index) pair always yields the same stream,
so parallel or restarted runs reproduce byte-identical results.
"""

from __future__ import annotations

import random


def substream_seed(seed: int, index: int) -> int:
    if index < 0:
        raise ValueError("substream index must be nonnegative")
    return seed * (1 << 64) + index


def substream(seed: int, index: int) -> random.Random:
    return random.Random(substream_seed(seed, index))
