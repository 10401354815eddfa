"""Entropies of probability vectors and column-stochastic matrices.

Conventions
-----------
* Logarithms are base 2 everywhere.
* Stochastic matrices are *column* stochastic: column ``t[:, v]`` is a
  probability vector, and ``T @ p`` maps distributions to distributions.
* An infinite relative entropy is returned as ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ShapeError, ValidationError

PROB_TOL = 1e-10
NEG_TOL = 1e-12
SUPPORT_TOL = 1e-12


@dataclass(frozen=True)
class StochClass:
    is_stochastic: bool
    is_bistochastic: bool
    is_permutation: bool


def prob_vector(p) -> np.ndarray:
    """Validate ``p`` as a probability vector and return a normalized copy.

    Entries in ``[-1e-12, 0)`` are set to zero and the total is rescaled to
    exactly one; a total off by more than ``1e-10`` is rejected.
    """
    p = np.array(p, dtype=float).reshape(-1)
    if p.size == 0:
        raise ValidationError("empty probability vector")
    if not np.all(np.isfinite(p)):
        raise ValidationError("probability vector has non-finite entries")
    if p.min() < -NEG_TOL:
        raise ValidationError(f"negative probability {p.min():.3e}")
    p[p < 0.0] = 0.0
    total = p.sum()
    if abs(total - 1.0) > PROB_TOL:
        raise ValidationError(f"probabilities sum to {float(total)!r}, not 1")
    return p / total


def stochastic_matrix(m) -> np.ndarray:
    """Validate a square column-stochastic matrix; columns are renormalized."""
    m = np.array(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"stochastic matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("stochastic matrix has non-finite entries")
    if m.min() < -NEG_TOL:
        raise ValidationError(f"negative entry {m.min():.3e} in stochastic matrix")
    m[m < 0.0] = 0.0
    sums = m.sum(axis=0)
    bad = np.abs(sums - 1.0) > PROB_TOL
    if np.any(bad):
        j = int(np.argmax(bad))
        raise ValidationError(f"column {j} sums to {float(sums[j])!r}, not 1")
    return m / sums


def _weights(p, n: int) -> np.ndarray:
    if p is None:
        return np.full(n, 1.0 / n)
    p = prob_vector(p)
    if p.size != n:
        raise ShapeError(f"weight vector has length {p.size}, expected {n}")
    return p


def _plogp(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    nz = p > 0.0
    out[nz] = p[nz] * np.log2(p[nz])
    return out


def shannon_entropy(p) -> float:
    """``-Σ p_i log2 p_i`` with ``0 log 0 = 0``."""
    p = prob_vector(p)
    return float(max(-_plogp(p).sum(), 0.0))


def _column_entropies(t: np.ndarray) -> np.ndarray:
    return np.maximum(-_plogp(t).sum(axis=0), 0.0)


def _rel_entropy(p: np.ndarray, q: np.ndarray) -> float:
    supp = p > SUPPORT_TOL
    if np.any(q[supp] <= SUPPORT_TOL):
        return math.inf
    ps, qs = p[supp], q[supp]
    return float(max(np.sum(ps * (np.log2(ps) - np.log2(qs))), 0.0))


def relative_entropy_vec(p, q) -> float:
    """Relative entropy ``H(p||q)`` in bits, or ``math.inf`` if supp(p) ⊄ supp(q)."""
    p, q = prob_vector(p), prob_vector(q)
    if p.size != q.size:
        raise ShapeError(f"length mismatch: {p.size} vs {q.size}")
    return _rel_entropy(p, q)


def weighted_entropy(t, p=None) -> float:
    """``H_p(T) = Σ_v p_v H(t_v)``; ``p`` defaults to uniform, giving ``H(T)``."""
    t = stochastic_matrix(t)
    w = _weights(p, t.shape[1])
    return float(w @ _column_entropies(t))


def relative_entropy_stoch(a, b, p=None) -> float:
    """``H_p(A||B) = Σ_v p_v H(a_v||b_v)``; columns with ``p_v = 0`` are skipped."""
    a, b = stochastic_matrix(a), stochastic_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    w = _weights(p, a.shape[1])
    total = 0.0
    for v in range(a.shape[1]):
        if w[v] == 0.0:
            continue
        h = _rel_entropy(a[:, v], b[:, v])
        if math.isinf(h):
            return math.inf
        total += w[v] * h
    return float(total)


def mixture(weights, mats: Sequence) -> np.ndarray:
    """``Σ_i λ_i B_i``."""
    lam = prob_vector(weights)
    if lam.size != len(mats):
        raise ShapeError(f"{lam.size} weights for {len(mats)} matrices")
    mats = [stochastic_matrix(m) for m in mats]
    if len({m.shape for m in mats}) != 1:
        raise ShapeError("matrices in a mixture must share one dimension")
    return sum(l * m for l, m in zip(lam, mats))


def chi_quantity(weights, mats: Sequence, p=None) -> float:
    """Holevo-type quantity ``χ_p = Σ_i λ_i H_p(B_i || B̄)`` with ``B̄ = Σ_i λ_i B_i``."""
    lam = prob_vector(weights)
    bbar = mixture(lam, mats)
    total = 0.0
    for l, m in zip(lam, mats):
        if l > 0.0:
            total += l * relative_entropy_stoch(m, bbar, p)
    return float(total)


def classify(m) -> StochClass:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"classify needs a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        return StochClass(False, False, False)
    nonneg = bool(m.min() >= -PROB_TOL)
    stoch = nonneg and bool(np.all(np.abs(m.sum(axis=0) - 1.0) <= PROB_TOL))
    bist = stoch and bool(np.all(np.abs(m.sum(axis=1) - 1.0) <= PROB_TOL))
    perm = bist and bool(np.all(np.minimum(np.abs(m), np.abs(m - 1.0)) <= PROB_TOL))
    return StochClass(stoch, bist, perm)


def vector_majorizes(p, q, tol: float = PROB_TOL) -> bool:
    """True iff ``p ≺ q``: every partial sum of sorted(p, desc) is ≤ that of q."""
    return majorization_gap(p, q) <= tol


def majorization_gap(p, q) -> float:
    """Largest excess of a descending partial sum of ``p`` over that of ``q``.

    Non-positive means ``p ≺ q`` exactly; the final (total) partial sums are
    compared in absolute value.
    """
    p = np.asarray(p, dtype=float).reshape(-1)
    q = np.asarray(q, dtype=float).reshape(-1)
    if p.size != q.size:
        raise ShapeError(f"length mismatch: {p.size} vs {q.size}")
    sp = np.cumsum(np.sort(p)[::-1])
    sq = np.cumsum(np.sort(q)[::-1])
    gaps = sp - sq
    gaps[-1] = abs(gaps[-1])
    return float(gaps.max())
