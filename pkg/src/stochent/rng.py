"""Deterministic, splittable random streams.

Every sampler takes either an integer seed or a ``numpy.random.Generator``.
Integer seeds are expanded through ``SeedSequence`` into a Philox
(counter-based) bit generator, so a stream is fully determined by the seed
plus any integer keys used to split it.
"""

from __future__ import annotations

import zlib

import numpy as np


def make_rng(seed, *keys: int) -> np.random.Generator:
    """Return a Philox generator for ``seed`` split along ``keys``.

    If ``seed`` is already a Generator it is returned unchanged (keys are
    ignored), which lets samplers be chained inside one stream.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(k) & 0xFFFFFFFF for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def name_key(name: str) -> int:
    """Stable 32-bit key for a string, used to give each suite its own stream."""
    return zlib.crc32(name.encode("utf-8"))
