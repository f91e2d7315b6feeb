"""Quantiles, summaries, boxplot data, and the base-rate posterior."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from baserates.stats import (
    Metric,
    Observation,
    base_rate_posterior,
    boxplot_data,
    quantile,
    summarize,
    tukey_fences,
)


def observations(values, project="p"):
    return [Observation(f"{project}{i}", 2012, v) for i, v in enumerate(values)]


class TestQuantile:
    def test_even_count_median_interpolates(self):
        assert quantile([1, 2, 3, 4], 0.5) == 2.5

    def test_singleton_any_fraction(self):
        for p in (0.0, 0.25, 0.5, 1.0):
            assert quantile([5], p) == 5.0

    def test_first_quartile_of_eight(self):
        # h = (8-1)*0.25 + 1 = 2.75 on the 1-based sorted sample:
        # x2 + 0.75*(x3 - x2) = 2 + 0.75
        assert quantile([1, 2, 3, 4, 5, 6, 7, 8], 0.25) == 2.75

    def test_extremes(self):
        values = [9, 1, 5]
        assert quantile(values, 0.0) == 1.0
        assert quantile(values, 1.0) == 9.0

    def test_unsorted_input_is_sorted_internally(self):
        assert quantile([4, 1, 3, 2], 0.5) == 2.5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            quantile([], 0.5)

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_fraction_out_of_range_rejected(self, p):
        with pytest.raises(ValueError):
            quantile([1, 2], p)

    def test_matches_reference_implementation(self):
        rng = random.Random(5)
        for _ in range(50):
            values = [rng.uniform(-1000, 1000) for _ in range(rng.randint(1, 200))]
            p = rng.random()
            expected = float(np.quantile(np.array(values), p, method="linear"))
            assert quantile(values, p) == pytest.approx(expected, rel=1e-12, abs=1e-9)


class TestSummarize:
    def test_four_ones_and_a_hundred(self):
        obs = observations([1, 1, 1, 1, 100])
        summary = summarize(obs, Metric.CS)
        assert summary.median == 1
        assert summary.iqr == 0
        assert summary.outliers == 1  # brute force: only 100 is outside [1, 1]
        assert summary.observations == 5
        assert summary.outlier_rate == pytest.approx(0.2)
        assert len(summary.median_attainers) == 4  # the four exact 1s

    def test_single_observation(self):
        summary = summarize(observations([42]), Metric.CGA)
        assert summary.median == 42
        assert summary.iqr == 0
        assert summary.outliers == 0
        assert summary.median_attainers == (("p0", 2012),)

    def test_interpolated_median_names_bracketing_observations(self):
        obs = [
            Observation("low", 2010, 1.0),
            Observation("mid_a", 2011, 2.0),
            Observation("mid_b", 2012, 3.0),
            Observation("high", 2013, 4.0),
        ]
        summary = summarize(obs, Metric.CS)
        assert summary.median == 2.5
        assert summary.median_attainers == (("mid_a", 2011), ("mid_b", 2012))

    def test_exact_median_with_duplicates_names_all(self):
        obs = [
            Observation("a", 2010, 5.0),
            Observation("b", 2011, 5.0),
            Observation("c", 2012, 1.0),
            Observation("d", 2013, 9.0),
        ]
        summary = summarize(obs, Metric.CGA)
        assert summary.median == 5.0
        assert summary.median_attainers == (("a", 2010), ("b", 2011))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            summarize([], Metric.CGI)

    def test_outliers_match_brute_force_oracle(self):
        rng = random.Random(77)
        for _ in range(30):
            n = rng.randint(1, 2000)
            values = [rng.lognormvariate(5, 2) for _ in range(n)]
            if rng.random() < 0.5:
                values = [round(v) for v in values]  # force duplicates
            obs = observations(values)
            summary = summarize(obs, Metric.CS)
            # independent fences from the reference quantile implementation
            q1 = float(np.quantile(values, 0.25, method="linear"))
            q3 = float(np.quantile(values, 0.75, method="linear"))
            low, high = q1 - 1.5 * (q3 - q1), q3 + 1.5 * (q3 - q1)
            brute = sum(1 for v in values if v < low or v > high)
            assert summary.outliers == brute

    def test_outlier_set_invariant_under_affine_transform(self):
        rng = random.Random(88)
        values = [rng.gauss(0, 10) for _ in range(500)]
        for _ in range(10):
            a = math.exp(rng.uniform(-3, 3))
            b = rng.uniform(-1e6, 1e6)
            low, high = tukey_fences(values)
            base = {i for i, v in enumerate(values) if v < low or v > high}
            transformed = [a * v + b for v in values]
            low_t, high_t = tukey_fences(transformed)
            moved = {i for i, v in enumerate(transformed) if v < low_t or v > high_t}
            assert base == moved

    def test_median_lies_between_quartiles_and_duplication_keeps_it_there(self):
        rng = random.Random(99)
        for _ in range(25):
            values = [rng.uniform(0, 100) for _ in range(rng.randint(2, 300))]
            median = quantile(values, 0.5)
            assert quantile(values, 0.25) <= median <= quantile(values, 0.75)
            duplicated = values + [median]
            assert quantile(duplicated, 0.25) <= median <= quantile(duplicated, 0.75)


class TestBoxplotData:
    def test_uniform_run_has_no_outliers(self):
        box = boxplot_data(list(range(1, 101)))
        assert box.whisker_low == 1
        assert box.whisker_high == 100
        assert box.outlier_values == ()
        # brute-force fence check
        low, high = tukey_fences(list(range(1, 101)))
        assert all(low <= v <= high for v in range(1, 101))

    def test_constant_values_collapse(self):
        box = boxplot_data([7, 7, 7, 7])
        assert box.q1 == box.median == box.q3 == 7
        assert box.whisker_low == box.whisker_high == 7
        assert box.outlier_values == ()

    def test_extreme_point_beyond_whisker(self):
        box = boxplot_data([1, 1, 1, 1, 100])
        assert box.whisker_high == 1
        assert box.outlier_values == (100.0,)

    def test_ordering_invariant(self):
        rng = random.Random(123)
        for _ in range(25):
            values = [rng.gauss(50, 20) for _ in range(rng.randint(5, 500))]
            box = boxplot_data(values)
            assert box.whisker_low <= box.q1 <= box.median <= box.q3 <= box.whisker_high
            low, high = tukey_fences(values)
            assert all(v < low or v > high for v in box.outlier_values)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            boxplot_data([])


class TestBaseRatePosterior:
    def test_twenty_percent_base_rate_with_imperfect_test(self):
        assert base_rate_posterior(0.20, 1.00, 0.70) == pytest.approx(
            0.45454545, abs=1e-6
        )

    def test_perfect_test_always_posterior_one(self):
        for prior in (0.01, 0.2, 0.5, 0.99):
            assert base_rate_posterior(prior, 1.0, 1.0) == 1.0

    def test_uninformative_test_returns_prior(self):
        # sensitivity equals the false-positive rate, so the test adds nothing
        assert base_rate_posterior(0.3, 0.7, 0.3) == pytest.approx(0.3)

    @pytest.mark.parametrize(
        "prior,sensitivity,specificity",
        [(-0.1, 1, 1), (1.1, 1, 1), (0.5, -0.2, 1), (0.5, 1, 2)],
    )
    def test_out_of_range_arguments_rejected(self, prior, sensitivity, specificity):
        with pytest.raises(ValueError):
            base_rate_posterior(prior, sensitivity, specificity)

    def test_test_that_never_fires_rejected(self):
        with pytest.raises(ValueError):
            base_rate_posterior(0.0, 0.5, 1.0)

    def test_monotone_in_prior_for_informative_test(self):
        rng = random.Random(31)
        for _ in range(50):
            sensitivity = rng.uniform(0.05, 1.0)
            specificity = rng.uniform(1.0 - sensitivity + 1e-6, 1.0)
            priors = sorted((rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99)))
            if priors[0] == priors[1]:
                continue
            low = base_rate_posterior(priors[0], sensitivity, specificity)
            high = base_rate_posterior(priors[1], sensitivity, specificity)
            assert high > low
