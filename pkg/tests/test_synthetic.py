import math

import numpy as np
import pytest

from hurstlab import FbmSpec, InvalidH, fgn_autocovariance, generate_drifted_cohort, generate_fbm
from hurstlab.synthetic import _fgn_circulant, _fgn_hosking

DRIFTS = {0.3: 0.0, 0.5: 0.0002, 0.7: 0.0004}


class TestFbmSpec:
    def test_invalid_h(self):
        for h in (0.0, 1.0, -0.2, 1.7):
            with pytest.raises(InvalidH):
                FbmSpec(h=h, length=64, seed=1)

    def test_invalid_length_and_scale(self):
        with pytest.raises(ValueError):
            FbmSpec(h=0.5, length=4, seed=1)
        with pytest.raises(ValueError):
            FbmSpec(h=0.5, length=64, seed=1, scale=0.0)


class TestGenerateFbm:
    def test_path_shape_and_origin(self):
        path = generate_fbm(FbmSpec(h=0.5, length=100, seed=1))
        assert len(path) == 100
        assert path.values[0] == 0.0
        assert path.dates.tolist() == list(range(100))

    def test_deterministic_bit_identical(self):
        spec = FbmSpec(h=0.7, length=256, seed=123456789)
        a = generate_fbm(spec)
        b = generate_fbm(spec)
        assert np.array_equal(a.values, b.values)

    def test_different_seeds_differ(self):
        a = generate_fbm(FbmSpec(h=0.7, length=256, seed=1))
        b = generate_fbm(FbmSpec(h=0.7, length=256, seed=2))
        assert not np.array_equal(a.values, b.values)

    def test_brownian_increments_uncorrelated(self):
        # gamma(k) = 0 for k >= 1 at H = 0.5
        path = generate_fbm(FbmSpec(h=0.5, length=4097, seed=123))
        inc = np.diff(path.values)
        r1 = np.corrcoef(inc[:-1], inc[1:])[0, 1]
        assert abs(r1) <= 3.0 / math.sqrt(4096)

    @pytest.mark.parametrize("h", [0.3, 0.5, 0.7])
    def test_sampler_covariance_matches_analytic(self, h):
        # both sampling routes against the closed-form autocovariance oracle
        n, reps = 8, 20000
        analytic = fgn_autocovariance(h, np.arange(n))
        rng = np.random.Generator(np.random.PCG64(1))
        for sampler in (_fgn_circulant, _fgn_hosking):
            draws = np.array([sampler(n, h, 1.0, rng) for _ in range(reps)])
            empirical = np.array([np.mean(draws[:, 0] * draws[:, k]) for k in range(n)])
            assert np.max(np.abs(empirical - analytic)) < 0.04

    @pytest.mark.parametrize("h", [0.3, 0.7])
    def test_hosking_route_agrees_with_circulant(self, h):
        # terminal variance of both routes against self-similar scaling
        reps = 4000
        rng = np.random.Generator(np.random.PCG64(31337))
        var_c = np.var(
            [generate_fbm(FbmSpec(h=h, length=64, seed=800_000 + i)).values[-1] for i in range(reps)]
        )
        var_h = np.var(
            [np.sum(_fgn_hosking(63, h, 1.0, rng)) for _ in range(reps)]
        )
        analytic = 63.0 ** (2.0 * h)
        assert var_c == pytest.approx(analytic, rel=0.10)
        assert var_h == pytest.approx(analytic, rel=0.10)

    def test_forced_methods_and_scale(self):
        spec = FbmSpec(h=0.5, length=64, seed=7, scale=0.01)
        a = generate_fbm(spec, method="circulant")
        b = generate_fbm(spec, method="auto")
        assert np.array_equal(a.values, b.values)  # auto picks circulant for valid h
        c = generate_fbm(spec, method="hosking")
        assert len(c) == 64 and c.values[0] == 0.0
        with pytest.raises(ValueError):
            generate_fbm(spec, method="bogus")

    @pytest.mark.parametrize("h,seed", [(0.3, 777), (0.7, 777)])
    def test_stationary_increments_across_halves(self, h, seed):
        path = generate_fbm(FbmSpec(h=h, length=4096, seed=seed))
        inc = np.diff(path.values)
        n = len(inc) // 2
        first, second = inc[:n], inc[n:]
        # long-range dependence inflates the sd of a running mean:
        # Var(m1 - m2) = n**(2H-2) * (4 - 2**2H) for unit-scale increments
        sd_mean_diff = n ** (h - 1.0) * math.sqrt(4.0 - 2.0 ** (2.0 * h))
        assert abs(first.mean() - second.mean()) <= 3.0 * sd_mean_diff
        se_var = math.sqrt(2.0 * (first.var() ** 2 + second.var() ** 2) / (n - 1))
        assert abs(first.var() - second.var()) <= 3.0 * se_var

    @pytest.mark.parametrize("h,base", [(0.3, 310_000), (0.5, 320_000)])
    def test_variance_scaling_law(self, h, base):
        # Var[X(t+tau) - X(t)] ~ tau**2H, slope over lags 1..16 within 0.05
        lags = np.array([1, 2, 4, 8, 16])
        acc = np.zeros((500, len(lags)))
        for i in range(500):
            v = generate_fbm(FbmSpec(h=h, length=1024, seed=base + i)).values
            acc[i] = [np.var(v[lag:] - v[:-lag]) for lag in lags]
        slope = np.polyfit(np.log(lags), np.log(acc.mean(axis=0)), 1)[0]
        assert slope == pytest.approx(2.0 * h, abs=0.05)

    def test_increments_are_gaussian(self):
        pooled = np.concatenate(
            [
                np.diff(generate_fbm(FbmSpec(h=0.7, length=1024, seed=600_000 + i)).values)
                for i in range(500)
            ]
        )
        z = (pooled - pooled.mean()) / pooled.std()
        assert abs(np.mean(z ** 3)) <= 0.2
        assert abs(np.mean(z ** 4) - 3.0) <= 0.5


class TestDriftedCohort:
    def test_zero_drift_brownian_prices_start_at_one(self):
        (series,) = generate_drifted_cohort(1, 64, [0.5], {0.5: 0.0}, seed=3)
        assert series.prices[0] == 1.0
        assert np.all(series.prices > 0)

    def test_h_values_cycle_across_series(self):
        cohort = generate_drifted_cohort(6, 64, [0.3, 0.5, 0.7], DRIFTS, seed=5)
        assert [s.instrument_id for s in cohort] == [f"SYN{i:03d}" for i in range(6)]
        # series i uses h_values[i % 3]; regenerate singles with the same seed stream
        seeder = np.random.Generator(np.random.PCG64(5))
        for i, series in enumerate(cohort):
            h = (0.3, 0.5, 0.7)[i % 3]
            sub_seed = int(seeder.integers(0, 2 ** 63, dtype=np.int64))
            path = generate_fbm(FbmSpec(h=h, length=64, seed=sub_seed, scale=0.005))
            expected = np.exp(path.values + DRIFTS[h] * np.arange(64))
            assert np.array_equal(series.prices, expected)

    def test_deterministic(self):
        a = generate_drifted_cohort(4, 32, [0.5], {0.5: 0.0}, seed=11)
        b = generate_drifted_cohort(4, 32, [0.5], {0.5: 0.0}, seed=11)
        for s, t in zip(a, b):
            assert s.instrument_id == t.instrument_id
            assert np.array_equal(s.prices, t.prices)

    def test_invalid_inputs(self):
        with pytest.raises(InvalidH):
            generate_drifted_cohort(2, 32, [1.5], {1.5: 0.0}, seed=1)
        with pytest.raises(ValueError):
            generate_drifted_cohort(0, 32, [0.5], {0.5: 0.0}, seed=1)
        with pytest.raises(ValueError):
            generate_drifted_cohort(2, 32, [], {}, seed=1)
