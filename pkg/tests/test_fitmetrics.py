import math

import numpy as np
import pytest

from fgextract import (
    DegenerateVarianceError,
    PairedSeries,
    fit_stats,
    r_square,
    residuals,
    sse,
    ssr,
    sst,
)


def random_series(seed, weighted=False):
    rng = np.random.RandomState(seed)
    n = rng.randint(2, 200)
    w = rng.uniform(0.1, 3.0, n) if weighted else None
    return PairedSeries(rng.normal(0, 5, n), rng.normal(0, 5, n), w)


class TestSeriesValidation:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            PairedSeries([1.0, 2.0], [1.0])

    def test_empty(self):
        with pytest.raises(ValueError):
            PairedSeries([], [])

    def test_weights_length(self):
        with pytest.raises(ValueError):
            PairedSeries([1.0, 2.0], [1.0, 2.0], [1.0])

    def test_weights_must_be_positive(self):
        with pytest.raises(ValueError):
            PairedSeries([1.0, 2.0], [1.0, 2.0], [1.0, 0.0])
        with pytest.raises(ValueError):
            PairedSeries([1.0, 2.0], [1.0, 2.0], [1.0, -2.0])

    def test_must_be_one_dimensional(self):
        with pytest.raises(ValueError):
            PairedSeries(np.zeros((2, 2)), np.zeros((2, 2)))

    def test_default_weights_are_ones(self):
        s = PairedSeries([1.0, 2.0], [0.0, 0.0])
        assert np.array_equal(s.weights, [1.0, 1.0])


class TestSse:
    def test_perfect_fit_is_zero(self):
        s = PairedSeries([1.5, 2.5, -3.0], [1.5, 2.5, -3.0])
        assert sse(s) == 0.0

    def test_direct_evaluation(self):
        assert sse(PairedSeries([1, 2, 3], [1, 2, 4])) == 1.0

    def test_linear_in_weights(self):
        s1 = PairedSeries([1, 2, 3], [0, 1, 5], [1.0, 1.0, 1.0])
        s2 = PairedSeries([1, 2, 3], [0, 1, 5], [2.0, 2.0, 2.0])
        assert sse(s2) == 2.0 * sse(s1)

    def test_zero_iff_equal(self):
        for seed in range(20):
            s = random_series(seed)
            assert (sse(s) == 0.0) == bool(np.array_equal(s.observed, s.predicted))
            perfect = PairedSeries(s.observed, s.observed, s.weights)
            assert sse(perfect) == 0.0


class TestSsr:
    def test_mean_prediction_is_zero(self):
        y = [1.0, 4.0, 7.0]
        ybar = 4.0
        assert ssr(PairedSeries(y, [ybar] * 3)) == 0.0

    def test_perfect_fit_equals_sst(self):
        for seed in range(10):
            s = random_series(seed, weighted=True)
            perfect = PairedSeries(s.observed, s.observed, s.weights)
            assert ssr(perfect) == pytest.approx(sst(perfect), rel=1e-15)

    def test_direct_evaluation(self):
        assert ssr(PairedSeries([0.0, 2.0], [1.0, 1.0])) == 0.0


class TestSst:
    def test_constant_data_is_zero(self):
        assert sst(PairedSeries([3.0, 3.0, 3.0], [0.0, 1.0, 2.0])) == 0.0

    def test_direct_evaluation(self):
        assert sst(PairedSeries([0.0, 2.0], [1.0, 1.0])) == 2.0

    def test_quadratic_scaling(self):
        y = np.array([1.0, 2.0, 5.0])
        base = sst(PairedSeries(y, y * 0))
        scaled = sst(PairedSeries(3.0 * y, y * 0))
        assert scaled == pytest.approx(9.0 * base, rel=1e-12)


class TestRSquare:
    def test_perfect_fit_is_one(self):
        s = PairedSeries([1.0, 2.0, 5.0], [1.0, 2.0, 5.0])
        assert r_square(s) == 1.0

    def test_mean_only_fit_is_zero(self):
        y = [1.0, 4.0, 7.0]
        assert r_square(PairedSeries(y, [4.0] * 3)) == 0.0

    def test_degenerate_variance_raises(self):
        with pytest.raises(DegenerateVarianceError):
            r_square(PairedSeries([2.0, 2.0], [1.0, 3.0]))

    def test_least_squares_line_fixture(self):
        x = np.arange(10, dtype=float)
        y = np.array([1.2, 1.9, 3.3, 3.9, 5.4, 5.8, 7.2, 7.7, 9.1, 9.6])
        yhat = np.polyval(np.polyfit(x, y, 1), x)
        s = PairedSeries(y, yhat)
        # frozen values, cross-checked against a direct numpy evaluation
        assert sse(s) == pytest.approx(0.512969696969698, rel=1e-12)
        assert r_square(s) == pytest.approx(0.9932900404587411, rel=1e-12)
        oracle_sse = float(np.sum((y - yhat) ** 2))
        oracle_sst = float(np.sum((y - y.mean()) ** 2))
        assert sse(s) == pytest.approx(oracle_sse, rel=1e-12)
        assert r_square(s) == pytest.approx(1.0 - oracle_sse / oracle_sst, rel=1e-12)
        # for a least-squares fit the cross term vanishes, so the two
        # R-square forms agree and SST decomposes into SSR + SSE
        cross = math.fsum((s.predicted - y.mean()) * (y - s.predicted))
        assert abs(cross) < 1e-9
        assert ssr(s) / sst(s) == pytest.approx(r_square(s), abs=1e-9)
        assert sst(s) == pytest.approx(ssr(s) + sse(s), rel=1e-9)


class TestResiduals:
    def test_perfect_fit_all_zero(self):
        s = PairedSeries([1.0, 2.0], [1.0, 2.0])
        assert np.array_equal(residuals(s), [0.0, 0.0])

    def test_single_element(self):
        assert np.array_equal(residuals(PairedSeries([3.0], [1.0])), [2.0])

    def test_weighted_square_sum_equals_sse(self):
        for seed in range(10):
            s = random_series(seed, weighted=True)
            r = residuals(s)
            assert math.fsum(s.weights * r * r) == sse(s)


class TestIdentities:
    def test_generalized_decomposition(self):
        # SST = SSR + SSE + 2 * sum w (yhat - ybar)(y - yhat), all inputs
        for seed in range(50):
            s = random_series(seed, weighted=seed % 2 == 0)
            ybar = math.fsum(s.weights * s.observed) / math.fsum(s.weights)
            cross = math.fsum(s.weights * (s.predicted - ybar) * (s.observed - s.predicted))
            lhs = sst(s)
            rhs = ssr(s) + sse(s) + 2.0 * cross
            assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))

    def test_permutation_invariance(self):
        for seed in range(10):
            s = random_series(seed, weighted=True)
            rng = np.random.RandomState(seed + 1000)
            p = rng.permutation(s.n)
            shuffled = PairedSeries(s.observed[p], s.predicted[p], s.weights[p])
            # fsum accumulation is exact, so reordering changes nothing at all
            assert sse(shuffled) == sse(s)
            assert ssr(shuffled) == ssr(s)
            assert sst(shuffled) == sst(s)


class TestFitStats:
    def test_bundle_matches_parts(self):
        s = random_series(3, weighted=True)
        stats = fit_stats(s)
        assert stats.sse == sse(s)
        assert stats.ssr == ssr(s)
        assert stats.sst == sst(s)
        assert stats.r_square == r_square(s)
        assert np.array_equal(stats.residuals, residuals(s))

    def test_degenerate_propagates(self):
        with pytest.raises(DegenerateVarianceError):
            fit_stats(PairedSeries([1.0, 1.0], [0.0, 2.0]))
