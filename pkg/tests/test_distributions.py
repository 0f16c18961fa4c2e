import numpy as np
import pytest

import phientropy as pe
from phientropy.distributions import (
    normalize,
    rng_for_seed,
    sample_neighbor,
    sample_simplex,
    sample_sparse,
    sample_uniform,
)
from phientropy.errors import (
    IdenticalPdfs,
    LengthMismatch,
    NegativeWeight,
    ParamError,
    ShrinkError,
    SumError,
)

from conftest import random_pdf


class TestValidate:
    def test_accepts_simple(self):
        p = pe.validate([0.5, 0.5])
        assert p.n == 2 and p.weights.tolist() == [0.5, 0.5]

    def test_sum_error_carries_actual(self):
        with pytest.raises(SumError) as exc:
            pe.validate([0.5, 0.4])
        assert exc.value.actual_sum == pytest.approx(0.9)

    def test_negative_weight_carries_index(self):
        with pytest.raises(NegativeWeight) as exc:
            pe.validate([-0.1, 1.1])
        assert exc.value.index == 0

    def test_never_renormalizes(self):
        with pytest.raises(SumError):
            pe.validate([0.3, 0.3, 0.3])

    def test_explicit_normalize(self):
        p = normalize([3.0, 1.0])
        assert p.weights.tolist() == [0.75, 0.25]
        with pytest.raises(ParamError):
            normalize([0.0, 0.0])

    def test_immutability(self):
        p = pe.validate([0.5, 0.5])
        with pytest.raises(ValueError):
            p.weights[0] = 0.9

    def test_rejects_nan_and_shapes(self):
        with pytest.raises(ParamError):
            pe.validate([np.nan, 1.0])
        with pytest.raises(ParamError):
            pe.validate([])


class TestTvNorm:
    def test_identical(self):
        p = pe.validate([0.3, 0.7])
        assert pe.tv_norm(p, p) == 0.0

    def test_disjoint_maximal(self):
        assert pe.tv_norm(pe.validate([1.0, 0.0]), pe.validate([0.0, 1.0])) == 2.0

    def test_direct_summation(self):
        got = pe.tv_norm(pe.validate([0.5, 0.5]), pe.validate([0.25, 0.75]))
        assert got == pytest.approx(0.5, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            pe.tv_norm(pe.validate([1.0]), pe.validate([0.5, 0.5]))

    def test_triangle_inequality(self, rng):
        for _ in range(300):
            n = int(rng.integers(2, 12))
            p, q, r = (random_pdf(rng, n) for _ in range(3))
            assert pe.tv_norm(p, r) <= pe.tv_norm(p, q) + pe.tv_norm(q, r) + 1e-12


class TestSymDiff:
    def test_disjoint(self):
        d = pe.sym_diff(pe.validate([1.0, 0.0]), pe.validate([0.0, 1.0]))
        assert d.weights.tolist() == [0.5, 0.5]

    def test_direct(self):
        d = pe.sym_diff(pe.validate([0.5, 0.5]), pe.validate([0.25, 0.75]))
        assert d.weights.tolist() == [0.5, 0.5]

    def test_identical_rejected(self):
        p = pe.validate([0.4, 0.6])
        with pytest.raises(IdenticalPdfs):
            pe.sym_diff(p, p)

    def test_mixture_invariance(self, rng):
        # sym_diff(lam*p + (1-lam)*q, q) does not depend on lam in (0, 1]
        p, q = random_pdf(rng, 6), random_pdf(rng, 6)
        ref = pe.sym_diff(p, q)
        for lam in (1.0, 0.7, 0.25, 1e-3):
            mix = pe.Pdf(lam * p.weights + (1 - lam) * q.weights)
            got = pe.sym_diff(mix, q)
            assert np.allclose(got.weights, ref.weights, rtol=0, atol=1e-12)

    def test_entries_at_most_half_and_valid(self, rng):
        for _ in range(300):
            n = int(rng.integers(2, 20))
            p, q = random_pdf(rng, n, sparse=True), random_pdf(rng, n, sparse=True)
            if pe.tv_norm(p, q) == 0.0:
                continue
            d = pe.sym_diff(p, q)
            assert np.all(d.weights <= 0.5 + 1e-15)
            pe.validate(d.weights, tol=1e-9)


class TestPad:
    def test_appends_zeros(self):
        assert pe.pad(pe.validate([1.0]), 3).weights.tolist() == [1.0, 0.0, 0.0]

    def test_shrink_rejected(self):
        with pytest.raises(ShrinkError):
            pe.pad(pe.validate([0.5, 0.5]), 1)

    def test_tv_unchanged(self, rng):
        p, q = random_pdf(rng, 5), random_pdf(rng, 5)
        assert pe.tv_norm(pe.pad(p, 9), pe.pad(q, 9)) == pe.tv_norm(p, q)


class TestSampling:
    def test_deterministic_given_seed(self):
        a = sample_simplex(8, seed=42, mode="uniform")
        b = sample_simplex(8, seed=42, mode="uniform")
        assert np.array_equal(a.weights, b.weights)
        c = sample_simplex(8, seed=43, mode="uniform")
        assert not np.array_equal(a.weights, c.weights)

    def test_single_state(self):
        assert sample_simplex(1, seed=0, mode="uniform").weights.tolist() == [1.0]

    def test_all_modes_valid(self, rng):
        for mode in ("uniform", "sparse"):
            for n in (1, 2, 7, 33):
                p = sample_simplex(n, seed=11, mode=mode)
                pe.validate(p.weights, tol=1e-9)

    def test_neighbor_radius(self, rng):
        for eps in (1e-1, 1e-3, 1e-6):
            p = sample_uniform(10, rng)
            q = sample_neighbor(p, eps, rng)
            assert pe.tv_norm(p, q) <= eps * (1 + 1e-12)
            pe.validate(q.weights, tol=1e-9)

    def test_neighbor_needs_args(self):
        with pytest.raises(ParamError):
            sample_simplex(4, seed=1, mode="neighbor")

    def test_unknown_mode(self):
        with pytest.raises(ParamError):
            sample_simplex(4, seed=1, mode="gaussian")

    def test_sparse_has_zeros_often(self):
        rng = rng_for_seed(5)
        zero_seen = any(np.any(sample_sparse(12, rng).weights == 0.0) for _ in range(50))
        assert zero_seen

    def test_uniform_coordinate_mean(self):
        # flat Dirichlet: per-coordinate mean 1/n within 3 standard errors
        n, draws = 5, 10_000
        rng = rng_for_seed(99)
        acc = np.zeros(n)
        for _ in range(draws):
            acc += sample_uniform(n, rng).weights
        mean = acc / draws
        var = (1.0 / n) * (1.0 - 1.0 / n) / (n + 1.0)
        se = np.sqrt(var / draws)
        assert np.all(np.abs(mean - 1.0 / n) <= 3.0 * se)
