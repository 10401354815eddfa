"""Dense complex matrix kernel.

Matrices are plain ``numpy.ndarray`` objects (complex128 or float64, 2-D).
The functions here add shape checking and finiteness guarantees on top of
numpy, plus a self-contained Hermitian eigensolver based on cyclic complex
Jacobi rotations.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numba
import numpy as np

from .errors import ConvergenceError, ShapeError, ValidationError

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
CLAMP_TOL = 1e-10


class EigDecomposition(NamedTuple):
    """Eigenvalues (ascending, real) and unit eigenvectors stored as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, dtype=None) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D array. 1-D input becomes a column."""
    arr = np.asarray(a, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got {arr.ndim} dimensions")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix has non-finite entries")
    return arr


def _finite(out: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(out)):
        raise ValidationError("operation produced non-finite entries")
    return out


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return _finite(a @ b)


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product with the block convention ``(a⊗b)[i*rb+k, j*cb+l] = a[i,j]*b[k,l]``."""
    return _finite(np.kron(as_matrix(a), as_matrix(b)))


def direct_sum(blocks: Sequence) -> np.ndarray:
    """Block-diagonal assembly; blocks may be rectangular."""
    if len(blocks) == 0:
        raise ValidationError("direct_sum needs at least one block")
    mats = [as_matrix(b) for b in blocks]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    dtype = np.result_type(*mats)
    out = np.zeros((rows, cols), dtype=dtype)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def schur_product(a, b) -> np.ndarray:
    """Entry-wise (Hadamard) product."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"Schur product needs equal shapes, got {a.shape} and {b.shape}")
    return _finite(a * b)


@numba.njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    scale = np.sqrt(scale)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j].real ** 2 + a[i, j].imag ** 2
        off = np.sqrt(2.0 * off)
        if off <= tol * scale or off == 0.0:
            return a, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                e = apq / r
                ec = e.conjugate()
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = diag-phase(q) · real rotation; A <- U^† A U, V <- V U
                u_qp = -s * ec
                u_qq = c * ec
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * c + akq * u_qp
                    a[k, q] = akp * s + akq * u_qq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * e * aqk
                    a[q, k] = s * apk + c * e * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * c + vkq * u_qp
                    v[k, q] = vkp * s + vkq * u_qq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return a, v, -1


def hermitian_eigh(h, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigDecomposition:
    """Eigen-decompose a Hermitian matrix with cyclic complex Jacobi rotations.

    The input is symmetrized as ``(h + h†)/2`` after checking that its
    Hermitian defect is at most ``1e-10`` (max-entry norm). Sweeps stop once
    the off-diagonal Frobenius norm drops to ``tol`` times the Frobenius norm
    of the input.

    Returns
    -------
    EigDecomposition
        Ascending eigenvalues and the matching unit eigenvectors as columns.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ShapeError(f"eigensolver needs a square matrix, got {h.shape}")
    defect = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if defect > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian (defect {defect:.3e})")
    work = np.ascontiguousarray(0.5 * (h + h.conj().T), dtype=np.complex128)
    a, v, sweeps = _jacobi(work, tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return EigDecomposition(w[order], v[:, order])


def eigvalsh(h) -> np.ndarray:
    return hermitian_eigh(h).eigenvalues


def clamp_spectrum(w: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Zero eigenvalues in ``[-tol, 0)``; anything more negative is an error."""
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < -tol:
        raise ValidationError(f"matrix is not positive semi-definite (eigenvalue {w.min():.3e})")
    return np.where(w < 0.0, 0.0, w)


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix ``C`` with ``C[perm[j], j] = 1``, so that ``C e_j = e_{perm[j]}``."""
    perm = np.asarray(perm, dtype=int)
    n = perm.size
    if n == 0 or sorted(perm.tolist()) != list(range(n)):
        raise ValidationError(f"not a permutation of 0..{n - 1}: {perm.tolist()}")
    out = np.zeros((n, n))
    out[perm, np.arange(n)] = 1.0
    return out
