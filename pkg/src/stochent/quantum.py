"""Density matrices, Kraus-form channels and their entropies.

Vectorization is row-major: ``vec(M)[a*N + i] = M[a, i]``. With that choice
the Jamiołkowski operator

    J(Φ) = (Φ ⊗ id)(Σ_ij |ii⟩⟨jj|) = Σ_k vec(M_k) vec(M_k)†

carries legs in the order (output, ancilla), and the Kraus matrix is its
diagonal read as an ``N × N`` array: ``B(Φ)[m, μ] = ⟨mμ|J(Φ)|mμ⟩``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classical import (
    _plogp,
    majorization_gap,
    stochastic_matrix,
    weighted_entropy,
)
from .errors import ShapeError, ValidationError
from .linalg import HERMITIAN_TOL, as_matrix, clamp_spectrum, hermitian_eigh
from .rng import make_rng

CHANNEL_TOL = 1e-9
ZERO_KRAUS_TOL = 1e-12
SPECTRAL_SUPPORT_TOL = 1e-10
TRACE_TOL = 1e-10


# --------------------------------------------------------------------------
# States
# --------------------------------------------------------------------------


def density_matrix(mat, trace_tol: float = TRACE_TOL, check_psd: bool = True) -> np.ndarray:
    """Validate a density matrix and return its Hermitian part as complex128.

    ``check_psd=False`` skips the eigenvalue check for callers that
    diagonalize (and clamp) the result anyway.
    """
    rho = as_matrix(mat).astype(np.complex128)
    if rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ValidationError("density matrix is not Hermitian")
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise ValidationError(f"density matrix has trace {complex(tr)!r}, not 1")
    if check_psd:
        clamp_spectrum(hermitian_eigh(rho).eigenvalues)
    return rho


def spectrum(rho) -> np.ndarray:
    """Clamped eigenvalues (ascending) of a positive semi-definite matrix."""
    return clamp_spectrum(hermitian_eigh(rho).eigenvalues)


def _entropy_of_spectrum(w: np.ndarray) -> float:
    return float(max(-_plogp(w).sum(), 0.0))


def von_neumann_entropy(rho) -> float:
    """``-Tr ρ log2 ρ``, computed as the Shannon entropy of the clamped spectrum."""
    return _entropy_of_spectrum(spectrum(density_matrix(rho, check_psd=False)))


def quantum_relative_entropy(rho, sigma) -> float:
    """``Tr ρ(log2 ρ - log2 σ)``, or ``math.inf`` when supp(ρ) ⊄ supp(σ).

    σ is diagonalized and its support taken as eigenvalues above 1e-10; if
    ρ puts more than 1e-10 weight outside it the result is infinite.
    """
    rho, sigma = density_matrix(rho, check_psd=False), density_matrix(sigma, check_psd=False)
    if rho.shape != sigma.shape:
        raise ShapeError(f"shape mismatch: {rho.shape} vs {sigma.shape}")
    return _relative_entropy(rho, sigma)


def _relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    s_w, s_v = hermitian_eigh(sigma)
    s_w = clamp_spectrum(s_w)
    supp = s_w > SPECTRAL_SUPPORT_TOL
    # diagonal of ρ in σ's eigenbasis
    rho_in_sigma = np.real(np.einsum("ij,ik,kj->j", s_v.conj(), rho, s_v))
    if np.sum(rho_in_sigma[~supp]) > SPECTRAL_SUPPORT_TOL:
        return math.inf
    r_w = clamp_spectrum(hermitian_eigh(rho).eigenvalues)
    neg_entropy = _plogp(r_w).sum()
    cross = np.sum(rho_in_sigma[supp] * np.log2(s_w[supp]))
    return float(neg_entropy - cross)


# --------------------------------------------------------------------------
# Channels
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A completely positive map ``X ↦ Σ_k M_k X M_k†``.

    Kraus operators with Frobenius norm below 1e-12 are dropped. An all-zero
    list is kept as a single zero operator so the dimensions survive.
    """

    kraus: tuple[np.ndarray, ...]
    in_dim: int
    out_dim: int

    def __init__(self, kraus: Sequence, in_dim: int | None = None, out_dim: int | None = None):
        ops = [as_matrix(k).astype(np.complex128) for k in kraus]
        if not ops:
            if in_dim is None or out_dim is None:
                raise ValidationError("empty Kraus list needs explicit dimensions")
            ops = [np.zeros((out_dim, in_dim), dtype=np.complex128)]
        shape = ops[0].shape
        if out_dim is not None and in_dim is not None and shape != (out_dim, in_dim):
            raise ShapeError(f"Kraus operator has shape {shape}, expected {(out_dim, in_dim)}")
        for i, op in enumerate(ops):
            if op.shape != shape:
                raise ShapeError(f"Kraus operator {i} has shape {op.shape}, expected {shape}")
        kept = [op for op in ops if np.linalg.norm(op) >= ZERO_KRAUS_TOL]
        if not kept:
            kept = [np.zeros(shape, dtype=np.complex128)]
        for op in kept:
            op.setflags(write=False)
        object.__setattr__(self, "kraus", tuple(kept))
        object.__setattr__(self, "out_dim", shape[0])
        object.__setattr__(self, "in_dim", shape[1])

    def __len__(self) -> int:
        return len(self.kraus)

    @property
    def is_square(self) -> bool:
        return self.in_dim == self.out_dim

    def completeness_defect(self) -> float:
        """``||Σ M†M - I||_max``."""
        s = sum(m.conj().T @ m for m in self.kraus)
        return float(np.max(np.abs(s - np.eye(self.in_dim))))

    def unitality_defect(self) -> float:
        s = sum(m @ m.conj().T for m in self.kraus)
        return float(np.max(np.abs(s - np.eye(self.out_dim))))

    @property
    def is_stochastic(self) -> bool:
        return self.completeness_defect() <= CHANNEL_TOL

    @property
    def is_bistochastic(self) -> bool:
        return self.is_square and self.is_stochastic and self.unitality_defect() <= CHANNEL_TOL


def _require_stochastic(*channels: KrausChannel) -> None:
    for c in channels:
        if not c.is_square:
            raise ValidationError(f"channel must be square, got {c.out_dim}x{c.in_dim}")
        if not c.is_stochastic:
            raise ValidationError(
                f"channel is not trace preserving (defect {c.completeness_defect():.3e})")


def apply(phi: KrausChannel, x) -> np.ndarray:
    x = as_matrix(x)
    if x.shape != (phi.in_dim, phi.in_dim):
        raise ShapeError(f"input has shape {x.shape}, channel expects {phi.in_dim}x{phi.in_dim}")
    return sum(m @ x @ m.conj().T for m in phi.kraus)


def compose(phi: KrausChannel, psi: KrausChannel) -> KrausChannel:
    """``Φ∘Ψ`` (apply ``psi`` first) with Kraus list ``{M_i N_j}``."""
    if psi.out_dim != phi.in_dim:
        raise ShapeError(f"cannot compose: psi outputs {psi.out_dim}, phi expects {phi.in_dim}")
    return KrausChannel([m @ n for m in phi.kraus for n in psi.kraus], psi.in_dim, phi.out_dim)


def tensor(phi: KrausChannel, psi: KrausChannel) -> KrausChannel:
    return KrausChannel([np.kron(m, n) for m in phi.kraus for n in psi.kraus])


def transpose_channel(psi: KrausChannel) -> KrausChannel:
    return KrausChannel([n.T for n in psi.kraus])


def adjoint_channel(phi: KrausChannel) -> KrausChannel:
    """Hilbert-Schmidt adjoint: Kraus list ``{M_k†}``."""
    return KrausChannel([m.conj().T for m in phi.kraus])


def mix_channels(weights, channels: Sequence[KrausChannel]) -> KrausChannel:
    """``Σ λ_k Φ_k`` realized by scaling each Kraus list by ``√λ_k`` and concatenating."""
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(channels):
        raise ShapeError(f"{len(weights)} weights for {len(channels)} channels")
    ops = [math.sqrt(w) * m for w, c in zip(weights, channels) for m in c.kraus if w > 0.0]
    return KrausChannel(ops, channels[0].in_dim, channels[0].out_dim)


def vec(m: np.ndarray) -> np.ndarray:
    """Row-major vectorization."""
    return np.asarray(m).reshape(-1)


def jamiolkowski(phi: KrausChannel) -> np.ndarray:
    """``J(Φ) = Σ_k vec(M_k) vec(M_k)†`` on ``H ⊗ H`` (legs: output, ancilla)."""
    if not phi.is_square:
        raise ValidationError(f"Jamiołkowski operator needs a square channel, got {phi.out_dim}x{phi.in_dim}")
    vs = np.array([vec(m) for m in phi.kraus])
    return vs.T @ vs.conj()


def jamiolkowski_state(phi: KrausChannel) -> np.ndarray:
    """``ρ(Φ) = J(Φ)/N``."""
    return jamiolkowski(phi) / phi.in_dim


def reorder_tensor_legs(j: np.ndarray, n1: int, n2: int) -> np.ndarray:
    """Map an operator on ``(H1⊗H1')⊗(H2⊗H2')`` to ``(H1⊗H2)⊗(H1'⊗H2')``.

    ``reorder_tensor_legs(kron(J(Φ), J(Ψ)), N1, N2)`` equals ``J(Φ⊗Ψ)``.
    """
    t = np.asarray(j).reshape(n1, n1, n2, n2, n1, n1, n2, n2)
    t = t.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    d = n1 * n1 * n2 * n2
    return t.reshape(d, d)


def map_entropy(phi: KrausChannel) -> float:
    """von Neumann entropy of the Jamiołkowski state ``J(Φ)/N``, in ``[0, 2 log2 N]``."""
    _require_stochastic(phi)
    return _entropy_of_spectrum(spectrum(jamiolkowski_state(phi)))


def channel_relative_entropy(phi: KrausChannel, psi: KrausChannel) -> float:
    """``S(ρ(Φ) || ρ(Ψ))``."""
    _require_stochastic(phi, psi)
    if phi.in_dim != psi.in_dim:
        raise ValidationError(f"dimension mismatch: {phi.in_dim} vs {psi.in_dim}")
    return _relative_entropy(jamiolkowski_state(phi), jamiolkowski_state(psi))


def kraus_matrix(phi: KrausChannel) -> np.ndarray:
    """``B(Φ) = Σ_μ T_μ • T_μ*``, i.e. ``b_ij = Σ_μ |t^μ_ij|²``."""
    return sum(np.abs(m) ** 2 for m in phi.kraus)


def channel_from_stochastic_matrix(b) -> KrausChannel:
    """Channel with diagonal ``J``: Kraus operators ``√b_mi |m⟩⟨i|``.

    It maps ``diag(p)`` to ``diag(B p)`` and has ``kraus_matrix(Φ) == B``.
    """
    b = stochastic_matrix(b)
    n = b.shape[0]
    ops = []
    for m in range(n):
        for i in range(n):
            if b[m, i] > 0.0:
                op = np.zeros((n, n), dtype=np.complex128)
                op[m, i] = math.sqrt(b[m, i])
                ops.append(op)
    return KrausChannel(ops, n, n)


def spectral_majorization_gap(x, y, trace_tol: float = 1e-9) -> float:
    """Majorization gap between the spectra of two Hermitian matrices."""
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise ShapeError(f"shape mismatch: {x.shape} vs {y.shape}")
    tx, ty = np.trace(x).real, np.trace(y).real
    if abs(tx - ty) > trace_tol:
        raise ValidationError(f"traces differ: {complex(tx)!r} vs {complex(ty)!r}")
    return majorization_gap(hermitian_eigh(x).eigenvalues, hermitian_eigh(y).eigenvalues)


def spectral_majorizes(x, y, tol: float = 1e-10) -> bool:
    """True iff ``x ≺ y``: the spectrum of ``x`` is majorized by that of ``y``."""
    return spectral_majorization_gap(x, y) <= tol


# --------------------------------------------------------------------------
# Samplers
# --------------------------------------------------------------------------


def _ginibre(rng, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2.0)


def random_unitary(n: int, seed) -> np.ndarray:
    """Haar unitary via QR with the phase correction on R's diagonal."""
    rng = make_rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, n, n))
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def random_channel(n: int, kraus_count: int, seed) -> KrausChannel:
    """Stochastic channel from an isometry ``C^n -> C^(k n)`` sliced into ``k`` blocks."""
    if n < 1 or kraus_count < 1:
        raise ValidationError("n and kraus_count must be at least 1")
    rng = make_rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, kraus_count * n, n))
    d = np.diag(r)
    q = q * (d / np.abs(d))[None, :]
    return KrausChannel([q[k * n:(k + 1) * n] for k in range(kraus_count)], n, n)


def random_unitary_channel(n: int, seed) -> KrausChannel:
    return KrausChannel([random_unitary(n, seed)])


def random_bistochastic_channel(n: int, terms: int, seed) -> KrausChannel:
    """Random mixture of ``terms`` unitary channels."""
    rng = make_rng(seed)
    lam = rng.dirichlet(np.ones(terms))
    return KrausChannel([math.sqrt(l) * random_unitary(n, rng) for l in lam], n, n)


def random_density(n: int, seed) -> np.ndarray:
    """``G G† / Tr(G G†)`` for a complex Gaussian ``G``."""
    rng = make_rng(seed)
    g = _ginibre(rng, n, n)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def depolarizing_channel(n: int) -> KrausChannel:
    """``X ↦ Tr(X) I/N`` with Kraus operators ``N^{-1/2}|m⟩⟨μ|``."""
    ops = []
    for m in range(n):
        for mu in range(n):
            op = np.zeros((n, n), dtype=np.complex128)
            op[m, mu] = 1.0 / math.sqrt(n)
            ops.append(op)
    return KrausChannel(ops, n, n)


def dephasing_channel(n: int) -> KrausChannel:
    ops = []
    for i in range(n):
        op = np.zeros((n, n), dtype=np.complex128)
        op[i, i] = 1.0
        ops.append(op)
    return KrausChannel(ops, n, n)


def identity_channel(n: int) -> KrausChannel:
    return KrausChannel([np.eye(n, dtype=np.complex128)])


def unitary_channel(u) -> KrausChannel:
    return KrausChannel([u])


def kraus_matrix_entropy(phi: KrausChannel, p=None) -> float:
    """``H_p(B(Φ))``."""
    return weighted_entropy(kraus_matrix(phi), p)

