import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochent.errors import ConvergenceError, ShapeError, ValidationError
from stochent.linalg import (
    clamp_spectrum,
    dagger,
    direct_sum,
    eigvalsh,
    hermitian_eigh,
    kron,
    matmul,
    permutation_matrix,
    schur_product,
)


def _cmat(rng, r, c):
    return rng.normal(size=(r, c)) + 1j * rng.normal(size=(r, c))


def _herm(rng, n):
    a = _cmat(rng, n, n)
    return (a + a.conj().T) / 2


def _triple_loop(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            for k in range(a.shape[1]):
                out[i, j] += a[i, k] * b[k, j]
    return out


def _kron_loop(a, b):
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            for k in range(b.shape[0]):
                for l in range(b.shape[1]):
                    out[i * b.shape[0] + k, j * b.shape[1] + l] = a[i, j] * b[k, l]
    return out


seeds = st.integers(0, 2**32 - 1)


class TestMatmul:
    def test_identity(self):
        x = _cmat(np.random.default_rng(0), 2, 3)
        np.testing.assert_array_equal(matmul(np.eye(2), x), x)

    def test_permutation_action(self):
        np.testing.assert_array_equal(matmul([[0, 1], [1, 0]], [[1], [0]]), [[0], [1]])

    def test_triple_loop_oracle(self):
        rng = np.random.default_rng(1)
        a, b = _cmat(rng, 3, 3), _cmat(rng, 3, 3)
        assert np.max(np.abs(matmul(a, b) - _triple_loop(a, b))) <= 1e-14

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))

    def test_rejects_nan(self):
        with pytest.raises(ValidationError):
            matmul([[np.nan]], [[1.0]])


class TestDagger:
    def test_scalar(self):
        assert dagger([[1j]])[0, 0] == -1j

    def test_hermitian_fixed_point(self):
        h = _herm(np.random.default_rng(2), 4)
        np.testing.assert_array_equal(dagger(h), h)

    def test_entrywise(self):
        a = _cmat(np.random.default_rng(3), 2, 3)
        d = dagger(a)
        assert d.shape == (3, 2)
        for i in range(2):
            for j in range(3):
                assert d[j, i] == np.conj(a[i, j])

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_reverses_products(self, seed):
        rng = np.random.default_rng(seed)
        a, b = _cmat(rng, 3, 4), _cmat(rng, 4, 2)
        assert np.max(np.abs(dagger(a @ b) - dagger(b) @ dagger(a))) <= 1e-14 * max(1.0, np.abs(a @ b).max())


class TestKron:
    def test_identities(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_loop_oracle(self):
        rng = np.random.default_rng(4)
        a, b = _cmat(rng, 2, 3), _cmat(rng, 3, 2)
        assert np.max(np.abs(kron(a, b) - _kron_loop(a, b))) <= 1e-14

    def test_associative(self):
        rng = np.random.default_rng(5)
        a, b, c = _cmat(rng, 2, 2), _cmat(rng, 2, 3), _cmat(rng, 3, 1)
        assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-14

    def test_trace_multiplicative(self):
        rng = np.random.default_rng(6)
        a, b = _cmat(rng, 3, 3), _cmat(rng, 2, 2)
        assert np.trace(kron(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-12)

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_mixed_product(self, seed):
        rng = np.random.default_rng(seed)
        a, c = _cmat(rng, 2, 3), _cmat(rng, 3, 2)
        b, d = _cmat(rng, 3, 2), _cmat(rng, 2, 4)
        assert np.linalg.norm(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)) <= 1e-12


class TestDirectSum:
    def test_ones(self):
        np.testing.assert_array_equal(direct_sum([[[1]], [[1]]]), np.eye(2))

    def test_off_blocks_zero(self):
        rng = np.random.default_rng(7)
        out = direct_sum([_cmat(rng, 2, 2), _cmat(rng, 3, 3)])
        assert out.shape == (5, 5)
        assert np.all(out[:2, 2:] == 0) and np.all(out[2:, :2] == 0)

    def test_empty(self):
        with pytest.raises(ValidationError):
            direct_sum([])

    @given(seeds, st.lists(st.integers(1, 4), min_size=1, max_size=4))
    @settings(max_examples=30, deadline=None)
    def test_stochastic_blocks(self, seed, sizes):
        rng = np.random.default_rng(seed)
        blocks = []
        for n in sizes:
            m = rng.random((n, n)) + 0.01
            blocks.append(m / m.sum(axis=0))
        out = direct_sum(blocks)
        assert np.max(np.abs(out.sum(axis=0) - 1)) <= 1e-12


class TestSchur:
    def test_ones_and_zero(self):
        a = _cmat(np.random.default_rng(8), 3, 2)
        np.testing.assert_array_equal(schur_product(a, np.ones((3, 2))), a)
        np.testing.assert_array_equal(schur_product(a, np.zeros((3, 2))), 0)

    def test_modulus_squared(self):
        t = _cmat(np.random.default_rng(9), 3, 3)
        out = schur_product(t, t.conj())
        # z * conj(z) can carry a rounding-level imaginary part
        assert np.max(np.abs(out.imag)) <= 1e-14 * np.abs(t).max() ** 2
        assert np.all(out.real >= 0)
        np.testing.assert_allclose(out.real, np.abs(t) ** 2, rtol=1e-14)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            schur_product(np.ones((2, 2)), np.ones((2, 3)))


class TestEigh:
    def test_diagonal(self):
        w, v = hermitian_eigh(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(w, [1, 2, 3], atol=1e-15)

    def test_pauli_x(self):
        w, _ = hermitian_eigh([[0, 1], [1, 0]])
        np.testing.assert_allclose(w, [-1, 1], atol=1e-15)

    def test_random_6x6_reconstruction(self):
        h = _herm(np.random.default_rng(10), 6)
        w, v = hermitian_eigh(h)
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) <= 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(6))) <= 1e-10

    def test_matches_lapack(self):
        h = _herm(np.random.default_rng(11), 9)
        np.testing.assert_allclose(eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-12)

    def test_degenerate(self):
        u = np.linalg.qr(_cmat(np.random.default_rng(12), 4, 4))[0]
        h = u @ np.diag([1.0, 1.0, 1.0, -2.0]) @ u.conj().T
        w, v = hermitian_eigh(h)
        np.testing.assert_allclose(w, [-2, 1, 1, 1], atol=1e-12)
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) <= 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            hermitian_eigh([[0, 1], [0, 0]])

    def test_rejects_non_square(self):
        with pytest.raises(ShapeError):
            hermitian_eigh(np.ones((2, 3)))

    def test_sweep_limit(self):
        with pytest.raises(ConvergenceError):
            hermitian_eigh(_herm(np.random.default_rng(13), 8), max_sweeps=1)

    @given(seeds, st.integers(1, 8))
    @settings(max_examples=30, deadline=None)
    def test_density_trace(self, seed, n):
        rng = np.random.default_rng(seed)
        g = _cmat(rng, n, n)
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        assert abs(eigvalsh(rho).sum() - 1.0) <= 1e-12


class TestClamp:
    def test_small_negatives_zeroed(self):
        np.testing.assert_array_equal(clamp_spectrum(np.array([-5e-11, 0.5])), [0.0, 0.5])

    def test_large_negative_rejected(self):
        with pytest.raises(ValidationError):
            clamp_spectrum(np.array([-1e-6, 1.0]))


class TestPermutationMatrix:
    def test_column_convention(self):
        p = permutation_matrix([2, 0, 1])
        np.testing.assert_array_equal(p @ np.eye(3)[:, 0], np.eye(3)[:, 2])

    @pytest.mark.parametrize("bad", [[0, 0], [1, 2], [-1, 0]])
    def test_rejects_non_permutations(self, bad):
        with pytest.raises(ValidationError):
            permutation_matrix(bad)
