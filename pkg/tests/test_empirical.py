"""Tests for empirical distributions."""

import math

import numpy as np
import pytest

from dpathsim.empirical import (
    as_delays,
    build_ecdf,
    ecdf_eval,
    evaluate_many,
    ks_distance,
    quantile,
    relative_frequencies,
    sample,
    sample_many,
    summarize,
)
from dpathsim.exceptions import EmptyTraceError, InvalidProbabilityError, InvalidQueryError, InvalidSampleError
from dpathsim.model_registry import ModelRegistry
from tests.conftest import point_mass


@pytest.fixture
def four_samples():
    return build_ecdf([10, 10, 20, 30])


@pytest.mark.unit
class TestBuildEcdf:
    """Building step ECDFs from samples."""

    def test_repeated_values(self, four_samples):
        assert four_samples.support == (10.0, 20.0, 30.0)
        assert four_samples.cum_prob == (0.5, 0.75, 1.0)
        assert four_samples.n_samples == 4

    def test_single_sample_is_point_mass(self):
        dist = build_ecdf([5.0])
        assert dist.support == (5.0,)
        assert dist.cum_prob == (1.0,)

    def test_order_does_not_matter(self):
        assert build_ecdf([30, 10, 20, 10]) == build_ecdf([10, 10, 20, 30])

    def test_rounds_to_nanoseconds(self):
        dist = build_ecdf([1.0004, 0.9996, 2.0])
        assert dist.support == (1.0, 2.0)
        assert dist.cum_prob[0] == pytest.approx(2 / 3)

    def test_negative_zero_folds_into_zero(self):
        dist = build_ecdf([-0.0, 0.0])
        assert dist.support == (0.0,)
        assert math.copysign(1.0, dist.support[0]) == 1.0

    def test_last_probability_is_exactly_one(self, rng):
        for _ in range(50):
            dist = build_ecdf(rng.uniform(0, 100, size=int(rng.integers(1, 500))).tolist())
            assert dist.cum_prob[-1] == 1.0

    def test_empty_trace(self):
        with pytest.raises(EmptyTraceError) as exc:
            build_ecdf([])
        assert exc.value.code == "empty-trace"

    @pytest.mark.parametrize("bad", [-1.0, math.nan, math.inf, "3", None, True])
    def test_invalid_sample_names_index(self, bad):
        with pytest.raises(InvalidSampleError) as exc:
            build_ecdf([1.0, 2.0, bad])
        assert exc.value.index == 2
        assert exc.value.code == "invalid-sample"

    def test_numpy_input(self):
        assert as_delays(np.array([3, 1, 2])).tolist() == [3.0, 1.0, 2.0]


@pytest.mark.unit
class TestRelativeFrequencies:
    """Per-value relative frequencies."""

    def test_values(self):
        assert relative_frequencies([10, 10, 20, 30]) == {10.0: 0.5, 20.0: 0.25, 30.0: 0.25}

    def test_sum_to_one_and_cumulate_to_ecdf(self, rng):
        for _ in range(200):
            samples = np.round(rng.uniform(0, 50, size=int(rng.integers(1, 1000))), 1).tolist()
            freqs = relative_frequencies(samples)
            assert abs(sum(freqs.values()) - 1.0) <= 1e-12
            dist = build_ecdf(samples)
            assert tuple(freqs) == dist.support
            np.testing.assert_allclose(np.cumsum(list(freqs.values())), dist.cum_prob, rtol=0, atol=1e-12)


@pytest.mark.unit
class TestEcdfEval:
    """Evaluating F(x)."""

    @pytest.mark.parametrize(
        ("x", "expected"),
        [(5.0, 0.0), (10.0, 0.5), (15.0, 0.5), (20.0, 0.75), (29.999, 0.75), (30.0, 1.0), (1e9, 1.0), (math.inf, 1.0), (-math.inf, 0.0)],
    )
    def test_steps(self, four_samples, x, expected):
        assert ecdf_eval(four_samples, x) == expected

    @pytest.mark.parametrize("bad", [math.nan, "10", None])
    def test_invalid_query(self, four_samples, bad):
        with pytest.raises(InvalidQueryError):
            ecdf_eval(four_samples, bad)

    @pytest.mark.slow
    def test_matches_brute_force_count(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n = int(rng.integers(1, 1001))
            values = as_delays(np.round(rng.exponential(20.0, size=n), int(rng.integers(0, 4))))
            dist = build_ecdf(values)
            queries = list(dist.support) + rng.uniform(-1.0, values.max() + 1.0, size=50).tolist()
            for x in queries:
                assert ecdf_eval(dist, x) == int(np.count_nonzero(values <= x)) / n

    def test_evaluate_many_agrees(self, four_samples):
        xs = np.array([0.0, 10.0, 12.0, 20.0, 31.0])
        assert evaluate_many(four_samples, xs).tolist() == [ecdf_eval(four_samples, float(x)) for x in xs]


@pytest.mark.unit
class TestQuantile:
    """Generalized inverse."""

    @pytest.mark.parametrize(("p", "expected"), [(0.01, 10.0), (0.5, 10.0), (0.51, 20.0), (0.75, 20.0), (0.76, 30.0), (1.0, 30.0)])
    def test_values(self, four_samples, p, expected):
        assert quantile(four_samples, p) == expected

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.0000001, math.nan, "0.5"])
    def test_invalid_probability(self, four_samples, bad):
        with pytest.raises(InvalidProbabilityError):
            quantile(four_samples, bad)

    def test_inverse_of_eval(self, rng):
        for _ in range(100):
            dist = build_ecdf(rng.integers(0, 40, size=int(rng.integers(1, 200))).tolist())
            for p in rng.uniform(1e-9, 1.0, size=20):
                q = quantile(dist, float(p))
                assert ecdf_eval(dist, q) >= p
                position = dist.support.index(q)
                if position:
                    assert ecdf_eval(dist, dist.support[position - 1]) < p


@pytest.mark.unit
class TestSampling:
    """Inverse-transform sampling."""

    def test_point_mass(self, rng):
        dist = point_mass(7.5)
        assert all(sample(dist, rng) == 7.5 for _ in range(100))

    def test_draws_from_support(self, four_samples, rng):
        draws = [sample(four_samples, rng) for _ in range(1000)]
        assert set(draws) <= set(four_samples.support)
        assert set(draws) == set(four_samples.support)

    def test_same_seed_same_draws(self, four_samples):
        first = [sample(four_samples, np.random.default_rng(9)) for _ in range(3)]
        a = np.random.default_rng(9)
        b = np.random.default_rng(9)
        assert [sample(four_samples, a) for _ in range(200)] == [sample(four_samples, b) for _ in range(200)]
        assert len(set(first)) == 1

    def test_sample_many(self, four_samples, rng):
        draws = sample_many(four_samples, rng, 5000)
        assert draws.shape == (5000,)
        assert set(draws.tolist()) <= set(four_samples.support)
        assert abs(float(np.mean(draws == 10.0)) - 0.5) < 0.03

    @pytest.mark.slow
    def test_resampling_fidelity(self):
        model = ModelRegistry().get_model("voi-576b-750kbps")
        rng = np.random.default_rng(7)
        for stage, dist in model.stages().items():
            rebuilt = build_ecdf(sample_many(dist, rng, 100_000))
            assert ks_distance(dist, rebuilt) < 0.01, stage


@pytest.mark.unit
class TestKsDistance:
    """Two-sample KS distance."""

    def test_self_is_zero(self, four_samples):
        assert ks_distance(four_samples, four_samples) == 0.0

    def test_disjoint_supports(self):
        assert ks_distance(point_mass(5.0), point_mass(6.0)) == 1.0

    def test_known_value(self, four_samples):
        assert ks_distance(four_samples, build_ecdf([10, 20, 20, 30])) == 0.25

    def test_symmetric_and_triangle(self, rng):
        for _ in range(100):
            a, b, c = (build_ecdf(rng.integers(0, 30, size=int(rng.integers(1, 100))).tolist()) for _ in range(3))
            assert ks_distance(a, b) == ks_distance(b, a)
            assert 0.0 <= ks_distance(a, b) <= 1.0
            assert ks_distance(a, c) <= ks_distance(a, b) + ks_distance(b, c) + 1e-12


@pytest.mark.unit
class TestSummarize:
    """Scalar summaries."""

    def test_four_samples(self, four_samples):
        summary = summarize(four_samples)
        assert summary.min == 10.0
        assert summary.max == 30.0
        assert summary.mean == pytest.approx(17.5)
        assert summary.median == 10.0
        assert summary.p95 == 30.0
        assert summary.p99 == 30.0
        assert summary.variance == pytest.approx(68.75)
        assert summary.n == 4

    def test_point_mass_has_no_variance(self):
        summary = summarize(point_mass(3.0))
        assert summary.mean == 3.0
        assert summary.variance == 0.0

    def test_mean_matches_samples(self, rng):
        samples = np.round(rng.uniform(0, 10, size=1000), 3)
        assert summarize(build_ecdf(samples)).mean == pytest.approx(float(np.mean(samples)))
