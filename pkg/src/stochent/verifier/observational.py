"""Observational quantities: the entropy defect s̃ and channel χ-quantities.

These relate statements whose equivalence cannot be checked on samples, so
the functions only compute both sides; nothing here asserts a relation.
"""

from __future__ import annotations

import math
from typing import Sequence

from .. import classical as cl
from .. import quantum as qu
from ..errors import ShapeError


def s_tilde(phi: qu.KrausChannel) -> float:
    """``H(B(Φ)) - S^map(Φ)``; bounded below by ``-log2 N``."""
    smap = qu.map_entropy(phi)
    return cl.weighted_entropy(qu.kraus_matrix(phi)) - smap


def _same_dimension(channels: Sequence[qu.KrausChannel]) -> int:
    dims = {(c.in_dim, c.out_dim) for c in channels}
    if len(dims) != 1:
        raise ShapeError(f"channels have different dimensions: {sorted(dims)}")
    return channels[0].in_dim


def channel_chi(weights, channels: Sequence[qu.KrausChannel]) -> tuple[float, float]:
    """Both χ-quantities of a channel ensemble.

    Returns ``(Σ λ_k S(Φ_k || Φ̄), χ({λ_k, B(Φ_k)}))`` where ``Φ̄ = Σ λ_k Φ_k``
    and the second term uses uniform weights over columns.
    """
    lam = cl.prob_vector(weights)
    if lam.size != len(channels):
        raise ShapeError(f"{lam.size} weights for {len(channels)} channels")
    _same_dimension(channels)
    mean = qu.mix_channels(lam, channels)
    chi_channels = 0.0
    for l, c in zip(lam, channels):
        if l > 0.0:
            chi_channels += l * qu.channel_relative_entropy(c, mean)
    chi_kraus = cl.chi_quantity(lam, [qu.kraus_matrix(c) for c in channels])
    return float(chi_channels), float(chi_kraus)


def s_tilde_convexity_gap(weights, channels: Sequence[qu.KrausChannel]) -> float:
    """``s̃(Σ λ_k Φ_k) - Σ λ_k s̃(Φ_k)``; non-positive where s̃ behaves convexly."""
    lam = cl.prob_vector(weights)
    _same_dimension(channels)
    mixed = s_tilde(qu.mix_channels(lam, channels))
    return mixed - math.fsum(l * s_tilde(c) for l, c in zip(lam, channels))
