"""Structure algorithms and saturation constructors for stochastic matrices.

Besides the Birkhoff decomposition, stationary vectors and the random
samplers used by the verifier, this module builds matrices that make the
entropy inequalities hold with equality: block structures of the form
``T = ⊕_k P(π_k) ⊗ T_k`` for relative-entropy monotonicity, tensor and
direct-sum factorizations for (strong) additivity, and the test
``TᵗTA = A`` for entropy-preserving bistochastic maps.

Permutations are 0-based integer arrays; ``perm[j]`` is the image of ``j``
and ``P(perm)`` has ones at ``(perm[j], j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import maximum_bipartite_matching

from .classical import (
    PROB_TOL,
    SUPPORT_TOL,
    classify,
    prob_vector,
    relative_entropy_stoch,
    relative_entropy_vec,
    stochastic_matrix,
    weighted_entropy,
)
from .errors import ConvergenceError, ShapeError, ValidationError
from .linalg import direct_sum, kron, permutation_matrix
from .rng import make_rng

SATURATION_TOL = 1e-9
STATIONARY_MAX_ITER = 10_000
SINKHORN_TOL = 1e-12
SINKHORN_MAX_ITER = 10_000


# --------------------------------------------------------------------------
# Birkhoff decomposition
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BirkhoffDecomposition:
    weights: tuple[float, ...]
    perms: tuple[tuple[int, ...], ...]

    @property
    def terms(self) -> list[tuple[float, tuple[int, ...]]]:
        return list(zip(self.weights, self.perms))

    def reconstruct(self) -> np.ndarray:
        n = len(self.perms[0])
        out = np.zeros((n, n))
        for w, perm in self.terms:
            out += w * permutation_matrix(perm)
        return out


def birkhoff_decompose(b) -> BirkhoffDecomposition:
    """Write a bistochastic matrix as a convex combination of permutations.

    Greedy extraction: find a perfect matching on the positive support with
    Hopcroft-Karp, peel off the smallest matched entry, repeat.
    """
    b = np.asarray(b, dtype=float)
    if not classify(b).is_bistochastic:
        raise ValidationError("Birkhoff decomposition needs a bistochastic matrix")
    n = b.shape[0]
    residual = np.where(b > SUPPORT_TOL, b, 0.0)
    weights: list[float] = []
    perms: list[tuple[int, ...]] = []
    max_terms = n * n - 2 * n + 2
    cols = np.arange(n)
    while residual.sum() / n > SUPPORT_TOL:
        graph = sp.csr_matrix(residual > SUPPORT_TOL)
        match = maximum_bipartite_matching(graph, perm_type="row")
        if np.any(match < 0):
            if residual.max() <= PROB_TOL:
                break
            raise ConvergenceError("no perfect matching on the support; input is numerically damaged")
        w = float(residual[match, cols].min())
        residual[match, cols] -= w
        residual[residual <= SUPPORT_TOL] = 0.0
        weights.append(w)
        perms.append(tuple(int(i) for i in match))
        if len(weights) > max_terms:
            raise ConvergenceError(f"Birkhoff extraction exceeded {max_terms} terms")
    return BirkhoffDecomposition(tuple(weights), tuple(perms))


# --------------------------------------------------------------------------
# Stationary vectors and samplers
# --------------------------------------------------------------------------


def stationary_vector(t) -> np.ndarray:
    """A probability vector ``p`` with ``T p = p``.

    Power iteration on the lazy chain ``(T + I)/2`` from the uniform vector;
    if that has not reached a residual of 1e-12 after 10^4 steps the
    eigenvector of ``T`` closest to eigenvalue 1 is used instead.
    """
    t = stochastic_matrix(t)
    n = t.shape[0]
    lazy = 0.5 * (t + np.eye(n))
    p = np.full(n, 1.0 / n)
    for _ in range(STATIONARY_MAX_ITER):
        nxt = lazy @ p
        nxt /= nxt.sum()
        done = np.abs(nxt - p).sum() <= 1e-15
        p = nxt
        if done:
            break
    if np.abs(t @ p - p).sum() > 1e-12:
        w, v = np.linalg.eig(t)
        k = int(np.argmin(np.abs(w - 1.0)))
        vec = np.abs(np.real(v[:, k]))
        p = vec / vec.sum()
    return prob_vector(p)


def random_stochastic(n: int, seed) -> np.ndarray:
    """Columns are normalized vectors of squared standard normals."""
    if n < 1:
        raise ValidationError("dimension must be at least 1")
    rng = make_rng(seed)
    g = rng.standard_normal((n, n)) ** 2
    return g / g.sum(axis=0)


def random_simplex(n: int, seed) -> np.ndarray:
    """Uniform (flat Dirichlet) point on the probability simplex."""
    rng = make_rng(seed)
    return rng.dirichlet(np.ones(n))


def random_permutation(n: int, seed) -> np.ndarray:
    return make_rng(seed).permutation(n)


def random_bistochastic(n: int, terms: int, seed) -> np.ndarray:
    """``Σ λ_i P_i`` with flat-Dirichlet weights and uniform random permutations."""
    if n < 1 or terms < 1:
        raise ValidationError("n and terms must be at least 1")
    rng = make_rng(seed)
    lam = rng.dirichlet(np.ones(terms))
    out = np.zeros((n, n))
    for l in lam:
        out[rng.permutation(n), np.arange(n)] += l
    return out


def sinkhorn(k: np.ndarray, row_marginal: np.ndarray, col_marginal: np.ndarray) -> np.ndarray:
    """Scale a positive matrix to the given row and column sums."""
    k = np.array(k, dtype=float)
    for _ in range(SINKHORN_MAX_ITER):
        k *= (row_marginal / k.sum(axis=1))[:, None]
        k *= (col_marginal / k.sum(axis=0))[None, :]
        err = np.abs(k.sum(axis=1) - row_marginal).sum() + np.abs(k.sum(axis=0) - col_marginal).sum()
        if err <= SINKHORN_TOL:
            return k
    raise ConvergenceError(f"Sinkhorn scaling did not converge in {SINKHORN_MAX_ITER} iterations")


def random_invariant_stochastic(p, seed, spread: float = 1.0) -> np.ndarray:
    """A random stochastic ``T`` with ``T p = p`` for a strictly positive ``p``.

    A positive matrix with log-normal entries (log-scale ``spread``) is
    Sinkhorn-scaled to a coupling ``K`` with both marginals ``p``; then
    ``T = K diag(p)^-1``.
    """
    p = prob_vector(p)
    if np.any(p <= 0.0):
        raise ValidationError("invariant vector must be strictly positive")
    rng = make_rng(seed)
    n = p.size
    k = np.exp(spread * rng.standard_normal((n, n)))
    coupling = sinkhorn(k, p, p)
    t = coupling / p[None, :]
    return t / t.sum(axis=0)


# --------------------------------------------------------------------------
# Relative-entropy saturation (vectors and matrices)
# --------------------------------------------------------------------------


@dataclass
class Theorem1Block:
    """One block ``k``: weights μ_k, ν_k, vectors p_k, q_k (length m_k), r_k (length n_k),
    permutation π_k of ``range(m_k)`` and an ``n_k × n_k`` stochastic ``T_k``."""

    mu: float
    nu: float
    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    perm: np.ndarray
    t: np.ndarray

    @property
    def m(self) -> int:
        return len(self.p)

    @property
    def n(self) -> int:
        return len(self.r)


@dataclass
class Theorem1Spec:
    blocks: list[Theorem1Block] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return sum(b.m * b.n for b in self.blocks)


def _check_block_common(k: int, r, perm, t, m: int):
    r = _field(f"blocks[{k}].r", prob_vector, r)
    perm = np.asarray(perm, dtype=int)
    if perm.size != m:
        raise ValidationError(f"blocks[{k}].perm: length {perm.size}, expected {m}")
    pm = _field(f"blocks[{k}].perm", permutation_matrix, perm)
    t = _field(f"blocks[{k}].T", stochastic_matrix, t)
    if t.shape[0] != r.size:
        raise ShapeError(f"blocks[{k}].T: shape {t.shape}, expected {r.size}x{r.size}")
    return r, pm, t


def _field(name: str, fn, value):
    try:
        return fn(value)
    except (ValidationError, ShapeError) as exc:
        raise type(exc)(f"{name}: {exc}") from None


def construct_theorem1(spec: Theorem1Spec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Build ``(T, p, q)`` with ``H(Tp||Tq) = H(p||q)``.

    ``T = ⊕ P(π_k) ⊗ T_k``, ``p = ⊕ μ_k p_k ⊗ r_k``, ``q = ⊕ ν_k q_k ⊗ r_k``.
    """
    if not spec.blocks:
        raise ValidationError("blocks: at least one block is required")
    mus = np.array([b.mu for b in spec.blocks], dtype=float)
    nus = np.array([b.nu for b in spec.blocks], dtype=float)
    _field("blocks[*].mu", prob_vector, mus)
    _field("blocks[*].nu", prob_vector, nus)
    t_blocks, p_parts, q_parts = [], [], []
    for k, blk in enumerate(spec.blocks):
        pk = _field(f"blocks[{k}].p", prob_vector, blk.p)
        qk = _field(f"blocks[{k}].q", prob_vector, blk.q)
        if pk.size != qk.size:
            raise ShapeError(f"blocks[{k}]: p and q lengths differ ({pk.size} vs {qk.size})")
        r, pm, tk = _check_block_common(k, blk.r, blk.perm, blk.t, pk.size)
        t_blocks.append(kron(pm, tk))
        p_parts.append(max(blk.mu, 0.0) * np.kron(pk, r))
        q_parts.append(max(blk.nu, 0.0) * np.kron(qk, r))
    t = direct_sum(t_blocks)
    return t, np.concatenate(p_parts), np.concatenate(q_parts)


def theorem1_sides(t, p, q) -> tuple[float, float]:
    """``(H(Tp||Tq), H(p||q))``."""
    t = np.asarray(t)
    return relative_entropy_vec(t @ p, t @ q), relative_entropy_vec(p, q)


@dataclass
class Theorem2Block:
    """Shared structure ``(r_k, π_k, T_k)`` plus per-column data for block ``k``.

    ``left``/``right`` are ``m_k × N`` column-stochastic matrices whose column
    ``j`` is p_k^(j) / q_k^(j); ``mu``/``nu`` hold the column weights μ_k^(j), ν_k^(j).
    """

    r: np.ndarray
    perm: np.ndarray
    t: np.ndarray
    left: np.ndarray
    right: np.ndarray
    mu: np.ndarray
    nu: np.ndarray


@dataclass
class Theorem2Spec:
    blocks: list[Theorem2Block] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return sum(len(b.perm) * len(b.r) for b in self.blocks)


def _column_stochastic(name: str, m, rows: int, cols: int) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (rows, cols):
        raise ShapeError(f"{name}: shape {m.shape}, expected {rows}x{cols}")
    if m.min() < -1e-12 or np.any(np.abs(m.sum(axis=0) - 1.0) > PROB_TOL):
        raise ValidationError(f"{name}: columns must be probability vectors")
    return np.clip(m, 0.0, None) / m.sum(axis=0)


def construct_theorem2(spec: Theorem2Spec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Build ``(T, A, B)`` with ``H_p(TA||TB) = H_p(A||B)`` for every ``p``.

    Column ``j`` of ``A`` is ``⊕_k μ_k^(j) p_k^(j) ⊗ r_k`` (likewise ``B``), i.e.
    ``A = ⊕_k (L^(k) E^(k)) ⊗ r_k`` stacked over blocks.
    """
    if not spec.blocks:
        raise ValidationError("blocks: at least one block is required")
    n_total = spec.dim
    mu = np.array([np.asarray(b.mu, dtype=float) for b in spec.blocks])
    nu = np.array([np.asarray(b.nu, dtype=float) for b in spec.blocks])
    if mu.shape != (len(spec.blocks), n_total) or nu.shape != mu.shape:
        raise ShapeError(f"blocks[*].mu/nu: every block needs {n_total} column weights")
    for name, w in (("mu", mu), ("nu", nu)):
        if w.min() < 0.0:
            raise ValidationError(f"blocks[*].{name}: weights must be nonnegative")
        bad = np.abs(w.sum(axis=0) - 1.0) > PROB_TOL
        if np.any(bad):
            j = int(np.argmax(bad))
            raise ValidationError(f"blocks[*].{name}: weights of column {j} sum to {float(w[:, j].sum())!r}, not 1")
    t_blocks, a_rows, b_rows = [], [], []
    for k, blk in enumerate(spec.blocks):
        m = len(blk.perm)
        r, pm, tk = _check_block_common(k, blk.r, blk.perm, blk.t, m)
        left = _column_stochastic(f"blocks[{k}].left", blk.left, m, n_total)
        right = _column_stochastic(f"blocks[{k}].right", blk.right, m, n_total)
        t_blocks.append(kron(pm, tk))
        a_rows.append(np.kron(left * mu[k][None, :], r[:, None]))
        b_rows.append(np.kron(right * nu[k][None, :], r[:, None]))
    return direct_sum(t_blocks), np.vstack(a_rows), np.vstack(b_rows)


def theorem2_sides(t, a, b, p=None) -> tuple[float, float]:
    """``(H_p(TA||TB), H_p(A||B))``."""
    t = np.asarray(t)
    return relative_entropy_stoch(t @ a, t @ b, p), relative_entropy_stoch(a, b, p)


# --------------------------------------------------------------------------
# Additivity constructions
# --------------------------------------------------------------------------


def construct_additivity(xl, pi_l, yr, pi_r) -> tuple[np.ndarray, np.ndarray]:
    """``X = X_L ⊗ P(π_R)`` and ``Y = P(π_L) ⊗ Y_R``, so that ``H(XY) = H(X) + H(Y)``."""
    xl = _field("xl", stochastic_matrix, xl)
    yr = _field("yr", stochastic_matrix, yr)
    pl = _field("pi_l", permutation_matrix, pi_l)
    pr = _field("pi_r", permutation_matrix, pi_r)
    if pl.shape != xl.shape:
        raise ShapeError(f"pi_l: length {pl.shape[0]}, expected {xl.shape[0]}")
    if pr.shape != yr.shape:
        raise ShapeError(f"pi_r: length {pr.shape[0]}, expected {yr.shape[0]}")
    return kron(xl, pr), kron(pl, yr)


def additivity_sides(x, y) -> tuple[float, float]:
    """``(H(XY), H(X) + H(Y))``."""
    return weighted_entropy(x @ y), weighted_entropy(x) + weighted_entropy(y)


@dataclass
class StrongAdditivityBlock:
    xl: np.ndarray
    yl: np.ndarray
    yr: np.ndarray
    zr: np.ndarray
    pi_l: np.ndarray
    pi_r: np.ndarray


def construct_strong_additivity(blocks: Sequence[StrongAdditivityBlock]):
    """``X = ⊕ X^L_k ⊗ P(π^R_k)``, ``Y = ⊕ Y^L_k ⊗ Y^R_k``, ``Z = ⊕ P(π^L_k) ⊗ Z^R_k``.

    These satisfy ``H(XYZ) + H(Y) = H(XY) + H(YZ)``.
    """
    if not blocks:
        raise ValidationError("blocks: at least one block is required")
    xs, ys, zs = [], [], []
    for k, blk in enumerate(blocks):
        xl = _field(f"blocks[{k}].xl", stochastic_matrix, blk.xl)
        yl = _field(f"blocks[{k}].yl", stochastic_matrix, blk.yl)
        yr = _field(f"blocks[{k}].yr", stochastic_matrix, blk.yr)
        zr = _field(f"blocks[{k}].zr", stochastic_matrix, blk.zr)
        pl = _field(f"blocks[{k}].pi_l", permutation_matrix, blk.pi_l)
        pr = _field(f"blocks[{k}].pi_r", permutation_matrix, blk.pi_r)
        m, n = xl.shape[0], yr.shape[0]
        for name, mat, size in (("yl", yl, m), ("pi_l", pl, m), ("zr", zr, n), ("pi_r", pr, n)):
            if mat.shape[0] != size:
                raise ShapeError(f"blocks[{k}].{name}: dimension {mat.shape[0]}, expected {size}")
        xs.append(kron(xl, pr))
        ys.append(kron(yl, yr))
        zs.append(kron(pl, zr))
    return direct_sum(xs), direct_sum(ys), direct_sum(zs)


def strong_additivity_sides(x, y, z) -> tuple[float, float]:
    """``(H(XYZ) + H(Y), H(XY) + H(YZ))``."""
    lhs = weighted_entropy(x @ y @ z) + weighted_entropy(y)
    rhs = weighted_entropy(x @ y) + weighted_entropy(y @ z)
    return lhs, rhs


def check_entropy_saturation(t, a, p) -> tuple[bool, bool]:
    """Evaluate both sides of the bistochastic saturation criterion.

    Returns ``(equality_holds, condition_holds)`` where the first is
    ``|H_p(TA) - H_p(A)| <= 1e-9`` and the second ``||TᵗTA - A||_∞ <= 1e-9``.
    """
    t = np.asarray(t, dtype=float)
    if not classify(t).is_bistochastic:
        raise ValidationError("T must be bistochastic")
    a = stochastic_matrix(a)
    p = prob_vector(p)
    if np.any(p <= 0.0):
        raise ValidationError("p must be strictly positive")
    equality = abs(weighted_entropy(t @ a, p) - weighted_entropy(a, p)) <= SATURATION_TOL
    condition = float(np.max(np.abs(t.T @ t @ a - a))) <= SATURATION_TOL
    return equality, condition


# --------------------------------------------------------------------------
# Random specs
# --------------------------------------------------------------------------

_BLOCK_SHAPES = {1: [(1, 1)], 2: [(1, 2), (2, 1)], 3: [(1, 3), (3, 1)], 4: [(2, 2)],
                 6: [(2, 3), (3, 2)], 9: [(3, 3)]}


def random_block_shapes(dim: int, seed) -> list[tuple[int, int]]:
    """Random ``(m_k, n_k)`` pairs with ``m_k, n_k <= 3`` and ``Σ m_k n_k = dim``."""
    rng = make_rng(seed)
    shapes = []
    left = dim
    while left > 0:
        sizes = [s for s in _BLOCK_SHAPES if s <= left]
        s = sizes[rng.integers(len(sizes))]
        options = _BLOCK_SHAPES[s]
        shapes.append(options[rng.integers(len(options))])
        left -= s
    return shapes


def _positive_simplex(rng, n: int) -> np.ndarray:
    w = rng.dirichlet(np.ones(n))
    w = np.maximum(w, 1e-3)
    return w / w.sum()


def random_theorem1_spec(seed, shapes: Sequence[tuple[int, int]]) -> Theorem1Spec:
    """Random spec with strictly positive weights for the given block shapes."""
    rng = make_rng(seed)
    mu = _positive_simplex(rng, len(shapes))
    nu = _positive_simplex(rng, len(shapes))
    blocks = []
    for k, (m, n) in enumerate(shapes):
        blocks.append(Theorem1Block(
            mu=float(mu[k]), nu=float(nu[k]),
            p=_positive_simplex(rng, m), q=_positive_simplex(rng, m), r=_positive_simplex(rng, n),
            perm=rng.permutation(m), t=random_stochastic(n, rng)))
    return Theorem1Spec(blocks)


def random_theorem2_spec(seed, shapes: Sequence[tuple[int, int]]) -> Theorem2Spec:
    rng = make_rng(seed)
    n_total = sum(m * n for m, n in shapes)
    kk = len(shapes)
    mu = np.column_stack([_positive_simplex(rng, kk) for _ in range(n_total)])
    nu = np.column_stack([_positive_simplex(rng, kk) for _ in range(n_total)])
    blocks = []
    for k, (m, n) in enumerate(shapes):
        left = np.column_stack([_positive_simplex(rng, m) for _ in range(n_total)])
        right = np.column_stack([_positive_simplex(rng, m) for _ in range(n_total)])
        blocks.append(Theorem2Block(
            r=_positive_simplex(rng, n), perm=rng.permutation(m), t=random_stochastic(n, rng),
            left=left, right=right, mu=mu[k], nu=nu[k]))
    return Theorem2Spec(blocks)


def random_strong_additivity_blocks(seed, shapes: Sequence[tuple[int, int]]) -> list[StrongAdditivityBlock]:
    rng = make_rng(seed)
    return [StrongAdditivityBlock(
        xl=random_stochastic(m, rng), yl=random_stochastic(m, rng),
        yr=random_stochastic(n, rng), zr=random_stochastic(n, rng),
        pi_l=rng.permutation(m), pi_r=rng.permutation(n)) for m, n in shapes]


def random_saturating_pair(n: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Bistochastic ``T`` and stochastic ``A`` with ``TᵗTA = A`` exactly.

    ``F`` averages within the groups of a random set partition, ``T = P F``
    for a random permutation ``P``, and ``A = F A0``; then ``TᵗT = F`` is
    idempotent and fixes ``A``.
    """
    rng = make_rng(seed)
    order = rng.permutation(n)
    cuts = np.sort(rng.choice(np.arange(1, n), size=rng.integers(0, n), replace=False)) if n > 1 else []
    f = np.zeros((n, n))
    for group in np.split(order, cuts):
        f[np.ix_(group, group)] = 1.0 / len(group)
    t = permutation_matrix(rng.permutation(n)) @ f
    a = f @ random_stochastic(n, rng)
    return t, a
