import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochent.classical import classify, relative_entropy_stoch, relative_entropy_vec, weighted_entropy
from stochent.errors import ShapeError, ValidationError
from stochent.linalg import permutation_matrix
from stochent.structure import (
    StrongAdditivityBlock,
    Theorem1Block,
    Theorem1Spec,
    Theorem2Block,
    Theorem2Spec,
    additivity_sides,
    birkhoff_decompose,
    check_entropy_saturation,
    construct_additivity,
    construct_strong_additivity,
    construct_theorem1,
    construct_theorem2,
    random_bistochastic,
    random_block_shapes,
    random_invariant_stochastic,
    random_saturating_pair,
    random_simplex,
    random_stochastic,
    random_strong_additivity_blocks,
    random_theorem1_spec,
    random_theorem2_spec,
    stationary_vector,
    strong_additivity_sides,
    theorem1_sides,
    theorem2_sides,
)

seeds = st.integers(0, 2**32 - 1)


class TestBirkhoff:
    def test_permutation_single_term(self):
        dec = birkhoff_decompose(permutation_matrix([1, 2, 0]))
        assert dec.terms == [(1.0, (1, 2, 0))]

    def test_flat_2x2(self):
        dec = birkhoff_decompose(np.full((2, 2), 0.5))
        assert sorted(dec.perms) == [(0, 1), (1, 0)]
        np.testing.assert_allclose(dec.weights, [0.5, 0.5])

    def test_random_5x5(self):
        b = random_bistochastic(5, 8, 0)
        dec = birkhoff_decompose(b)
        assert np.max(np.abs(dec.reconstruct() - b)) <= 1e-10
        assert len(dec.weights) <= 5 * 5 - 2 * 5 + 2
        assert sum(dec.weights) == pytest.approx(1.0, abs=1e-10)

    def test_rejects_non_bistochastic(self):
        with pytest.raises(ValidationError):
            birkhoff_decompose([[1, 0.5], [0, 0.5]])

    @given(seeds, st.integers(2, 8))
    @settings(max_examples=50, deadline=None)
    def test_round_trip(self, seed, n):
        rng = np.random.default_rng(seed)
        b = random_bistochastic(n, int(rng.integers(1, 2 * n)), rng)
        dec = birkhoff_decompose(b)
        assert np.max(np.abs(dec.reconstruct() - b)) <= 1e-10
        assert len(dec.weights) <= n * n - 2 * n + 2
        assert all(w > 0 for w in dec.weights)


class TestStationary:
    def test_two_state_oracle(self):
        # (3/4 - 1) p0 + 1/2 p1 = 0 with p0 + p1 = 1
        np.testing.assert_allclose(stationary_vector([[0.75, 0.5], [0.25, 0.5]]), [2 / 3, 1 / 3], atol=1e-12)

    def test_bistochastic(self):
        t = random_bistochastic(4, 3, 1)
        p = stationary_vector(t)
        assert np.abs(t @ p - p).sum() <= 1e-12

    def test_identity(self):
        p = stationary_vector(np.eye(3))
        assert np.abs(np.eye(3) @ p - p).sum() <= 1e-12 and p.sum() == pytest.approx(1.0)

    def test_periodic_chain(self):
        t = permutation_matrix([1, 2, 0])
        p = stationary_vector(t)
        assert np.abs(t @ p - p).sum() <= 1e-12

    @given(seeds, st.integers(1, 7))
    @settings(deadline=None)
    def test_residual(self, seed, n):
        t = random_stochastic(n, seed)
        p = stationary_vector(t)
        assert np.abs(t @ p - p).sum() <= 1e-12


class TestSamplers:
    def test_random_stochastic_n1(self):
        np.testing.assert_array_equal(random_stochastic(1, 0), [[1.0]])

    def test_random_stochastic_classified(self):
        rng = np.random.default_rng(0)
        assert all(classify(random_stochastic(4, rng)).is_stochastic for _ in range(100))

    def test_determinism(self):
        np.testing.assert_array_equal(random_stochastic(5, 42), random_stochastic(5, 42))
        assert not np.array_equal(random_stochastic(5, 42), random_stochastic(5, 43))

    def test_one_term_is_permutation(self):
        assert classify(random_bistochastic(5, 1, 3)).is_permutation

    def test_bistochastic_always(self):
        rng = np.random.default_rng(1)
        assert all(classify(random_bistochastic(4, 6, rng)).is_bistochastic for _ in range(100))

    def test_bistochastic_mean(self):
        rng = np.random.default_rng(2)
        mean = sum(random_bistochastic(2, 10, rng) for _ in range(10_000)) / 10_000
        assert np.max(np.abs(mean - 0.5)) <= 0.05

    def test_invariant_uniform_is_bistochastic(self):
        assert classify(random_invariant_stochastic(np.full(4, 0.25), 0)).is_bistochastic

    def test_invariant_fixed_point(self):
        p = np.array([2 / 3, 1 / 3])
        t = random_invariant_stochastic(p, 5)
        assert np.max(np.abs(t @ p - p)) <= 1e-9

    @given(seeds, st.integers(1, 6))
    @settings(deadline=None)
    def test_invariant_columns(self, seed, n):
        rng = np.random.default_rng(seed)
        p = random_simplex(n, rng) + 0.01
        p /= p.sum()
        t = random_invariant_stochastic(p, rng)
        assert np.max(np.abs(t.sum(axis=0) - 1)) <= 1e-9
        assert np.max(np.abs(t @ p - p)) <= 1e-9


def _spec1(mu, nu, blocks):
    return Theorem1Spec([Theorem1Block(mu=m, nu=v, **b) for m, v, b in zip(mu, nu, blocks)])


class TestTheorem1:
    def test_trivial(self):
        spec = _spec1([1.0], [1.0], [dict(p=[1.0], q=[1.0], r=[0.3, 0.7], perm=[0], t=random_stochastic(2, 0))])
        t, p, q = construct_theorem1(spec)
        assert theorem1_sides(t, p, p) == (0.0, 0.0)
        assert theorem1_sides(t, p, q) == (0.0, 0.0)

    def test_pure_permutation_block(self):
        rng = np.random.default_rng(1)
        perm = [2, 0, 1]
        spec = _spec1([1.0], [1.0], [dict(p=random_simplex(3, rng), q=random_simplex(3, rng), r=[1.0],
                                          perm=perm, t=[[1.0]])])
        t, p, q = construct_theorem1(spec)
        np.testing.assert_array_equal(t, permutation_matrix(perm))
        lhs, rhs = theorem1_sides(t, p, q)
        assert abs(lhs - rhs) <= 1e-12

    def test_two_block_example(self):
        rng = np.random.default_rng(2)
        blocks = [dict(p=[1.0], q=[1.0], r=random_simplex(2, rng), perm=[0], t=random_stochastic(2, rng))
                  for _ in range(2)]
        t, p, q = construct_theorem1(_spec1([0.3, 0.7], [0.6, 0.4], blocks))
        assert classify(t).is_stochastic and t.shape == (4, 4)
        assert abs(relative_entropy_vec(t @ p, t @ q) - relative_entropy_vec(p, q)) <= 1e-10
        # with m_k = 1 both sides are the weight divergence H(μ||ν)
        assert relative_entropy_vec(p, q) == pytest.approx(relative_entropy_vec([0.3, 0.7], [0.6, 0.4]), abs=1e-12)

    def test_bad_weights(self):
        blocks = [dict(p=[1.0], q=[1.0], r=[1.0], perm=[0], t=[[1.0]])] * 2
        with pytest.raises(ValidationError, match="mu"):
            construct_theorem1(_spec1([0.5, 0.6], [0.5, 0.5], blocks))

    def test_field_diagnostic(self):
        blocks = [dict(p=[1.0], q=[1.0], r=[1.0], perm=[0], t=[[1.0]]),
                  dict(p=[0.5, 0.5], q=[0.5, 0.5], r=[1.0], perm=[0, 0], t=[[1.0]])]
        with pytest.raises(ValidationError, match=r"blocks\[1\]\.perm"):
            construct_theorem1(_spec1([0.5, 0.5], [0.5, 0.5], blocks))

    @given(seeds, st.integers(1, 9))
    @settings(max_examples=50, deadline=None)
    def test_random_specs_saturate(self, seed, dim):
        rng = np.random.default_rng(seed)
        spec = random_theorem1_spec(rng, random_block_shapes(dim, rng))
        t, p, q = construct_theorem1(spec)
        assert t.shape == (dim, dim)
        lhs, rhs = theorem1_sides(t, p, q)
        assert abs(lhs - rhs) <= 1e-10


class TestTheorem2:
    def test_identity(self):
        rng = np.random.default_rng(3)
        left = random_stochastic(2, rng)
        right = random_stochastic(2, rng)
        spec = Theorem2Spec([Theorem2Block(r=[1.0], perm=[0, 1], t=[[1.0]], left=left, right=right,
                                           mu=[1.0, 1.0], nu=[1.0, 1.0])])
        t, a, b = construct_theorem2(spec)
        np.testing.assert_array_equal(t, np.eye(2))
        np.testing.assert_allclose(a, left)
        lhs, rhs = theorem2_sides(t, a, b)
        assert lhs == rhs

    def test_identical_columns_reduce_to_theorem1(self):
        rng = np.random.default_rng(4)
        shapes = [(1, 2), (2, 1)]
        s1 = random_theorem1_spec(rng, shapes)
        n = 4
        blocks = [Theorem2Block(r=b.r, perm=b.perm, t=b.t,
                                left=np.tile(b.p[:, None], (1, n)), right=np.tile(b.q[:, None], (1, n)),
                                mu=np.full(n, b.mu), nu=np.full(n, b.nu)) for b in s1.blocks]
        t2, a, b = construct_theorem2(Theorem2Spec(blocks))
        t1, p, q = construct_theorem1(s1)
        np.testing.assert_allclose(t2, t1)
        for j in range(n):
            np.testing.assert_allclose(a[:, j], p, atol=1e-15)
            np.testing.assert_allclose(b[:, j], q, atol=1e-15)

    def test_random_n4(self):
        rng = np.random.default_rng(5)
        spec = random_theorem2_spec(rng, [(1, 2), (2, 1)])
        t, a, b = construct_theorem2(spec)
        p = random_simplex(4, rng) + 0.01
        p /= p.sum()
        lhs, rhs = theorem2_sides(t, a, b, p)
        assert abs(relative_entropy_stoch(t @ a, t @ b, p) - relative_entropy_stoch(a, b, p)) <= 1e-10
        assert abs(lhs - rhs) <= 1e-10

    def test_zero_weights_allowed(self):
        rng = np.random.default_rng(6)
        spec = random_theorem2_spec(rng, [(1, 1), (1, 1)])
        for blk, w in zip(spec.blocks, ([1.0, 0.0], [0.0, 1.0])):
            blk.mu = np.array(w)
        t, a, b = construct_theorem2(spec)
        assert classify(a).is_stochastic

    def test_bad_column_weights(self):
        rng = np.random.default_rng(7)
        spec = random_theorem2_spec(rng, [(1, 1), (1, 1)])
        spec.blocks[0].mu = np.array([0.9, 0.9])
        with pytest.raises(ValidationError, match="mu"):
            construct_theorem2(spec)

    @given(seeds, st.integers(1, 9))
    @settings(max_examples=50, deadline=None)
    def test_random_specs_saturate(self, seed, dim):
        rng = np.random.default_rng(seed)
        t, a, b = construct_theorem2(random_theorem2_spec(rng, random_block_shapes(dim, rng)))
        p = random_simplex(dim, rng)
        lhs, rhs = theorem2_sides(t, a, b, p)
        assert abs(lhs - rhs) <= 1e-10


class TestAdditivity:
    def test_identities(self):
        x, y = construct_additivity(np.eye(2), [0, 1], np.eye(3), [0, 1, 2])
        assert additivity_sides(x, y) == (0.0, 0.0)

    def test_flat_times_identity(self):
        x, y = construct_additivity(np.full((2, 2), 0.5), [0, 1], np.eye(2), [0, 1])
        lhs, rhs = additivity_sides(x, y)
        assert lhs == pytest.approx(1.0, abs=1e-15) and rhs == pytest.approx(1.0, abs=1e-15)
        assert weighted_entropy(x) == pytest.approx(1.0) and weighted_entropy(y) == pytest.approx(0.0)

    def test_random_2x3(self):
        rng = np.random.default_rng(8)
        x, y = construct_additivity(random_stochastic(2, rng), [1, 0], random_stochastic(3, rng), [2, 0, 1])
        assert abs(weighted_entropy(x @ y) - weighted_entropy(x) - weighted_entropy(y)) <= 1e-10

    def test_size_mismatch(self):
        with pytest.raises(ShapeError, match="pi_l"):
            construct_additivity(np.eye(2), [0, 1, 2], np.eye(2), [0, 1])

    def test_strong_identity(self):
        blk = StrongAdditivityBlock(np.eye(2), np.eye(2), np.eye(2), np.eye(2), [0, 1], [0, 1])
        x, y, z = construct_strong_additivity([blk])
        assert strong_additivity_sides(x, y, z) == (0.0, 0.0)

    def test_strong_random_2x2(self):
        rng = np.random.default_rng(9)
        (blk,) = random_strong_additivity_blocks(rng, [(2, 2)])
        x, y, z = construct_strong_additivity([blk])
        lhs, rhs = strong_additivity_sides(x, y, z)
        assert abs(lhs - rhs) <= 1e-10

    def test_strong_mixed_sizes(self):
        rng = np.random.default_rng(10)
        blocks = random_strong_additivity_blocks(rng, [(1, 2), (2, 1)])
        x, y, z = construct_strong_additivity(blocks)
        assert x.shape == (4, 4)
        h = weighted_entropy
        assert abs(h(x @ y @ z) + h(y) - h(x @ y) - h(y @ z)) <= 1e-10

    @given(seeds, st.integers(1, 9))
    @settings(max_examples=50, deadline=None)
    def test_strong_random(self, seed, dim):
        rng = np.random.default_rng(seed)
        x, y, z = construct_strong_additivity(random_strong_additivity_blocks(rng, random_block_shapes(dim, rng)))
        lhs, rhs = strong_additivity_sides(x, y, z)
        assert abs(lhs - rhs) <= 1e-10


class TestSaturation:
    def test_permutation(self):
        rng = np.random.default_rng(11)
        t = permutation_matrix(rng.permutation(4))
        for _ in range(5):
            assert check_entropy_saturation(t, random_stochastic(4, rng), [0.1, 0.2, 0.3, 0.4]) == (True, True)

    def test_flat_on_identity(self):
        assert check_entropy_saturation(np.full((2, 2), 0.5), np.eye(2), [0.5, 0.5]) == (False, False)

    def test_flat_on_flat(self):
        flat = np.full((2, 2), 0.5)
        assert check_entropy_saturation(flat, flat, [0.3, 0.7]) == (True, True)

    def test_requires_positive_p(self):
        with pytest.raises(ValidationError):
            check_entropy_saturation(np.eye(2), np.eye(2), [1.0, 0.0])

    def test_designed_pairs(self):
        for seed in range(50):
            t, a = random_saturating_pair(int(2 + seed % 5), seed)
            p = np.full(t.shape[0], 1 / t.shape[0])
            assert check_entropy_saturation(t, a, p) == (True, True)

    @given(seeds, st.integers(2, 5))
    @settings(deadline=None)
    def test_agreement(self, seed, n):
        rng = np.random.default_rng(seed)
        t = random_bistochastic(n, int(rng.integers(1, 4)), rng)
        p = random_simplex(n, rng) + 0.01
        eq, cond = check_entropy_saturation(t, random_stochastic(n, rng), p / p.sum())
        assert eq == cond


class TestSlomczynski:
    @given(seeds, st.integers(1, 6))
    @settings(deadline=None)
    def test_inequalities(self, seed, n):
        rng = np.random.default_rng(seed)
        p = random_simplex(n, rng) + 0.02
        p /= p.sum()
        x, y, z = (random_invariant_stochastic(p, rng) for _ in range(3))
        h = lambda m: weighted_entropy(m, p)
        assert h(y) <= h(x @ y) + 1e-9
        assert h(x @ y) <= h(x) + h(y) + 1e-9
        assert h(x @ y @ z) + h(y) <= h(x @ y) + h(y @ z) + 1e-9


def test_block_shapes_cover_dimension():
    for dim, seed in itertools.product(range(1, 10), range(5)):
        shapes = random_block_shapes(dim, seed)
        assert sum(m * n for m, n in shapes) == dim
        assert all(1 <= m <= 3 and 1 <= n <= 3 for m, n in shapes)


def test_theorem1_dim_property():
    spec = random_theorem1_spec(0, [(2, 3), (1, 1)])
    assert spec.dim == 7
    t, p, q = construct_theorem1(spec)
    assert t.shape == (7, 7) and math.isclose(p.sum(), 1.0)
