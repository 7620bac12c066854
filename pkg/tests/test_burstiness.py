"""Peak-to-mean factors from series, active hours, and composition."""

import math

import pytest

from scalereq import (
    DegenerateSeriesError,
    burstiness_from_active_hours,
    burstiness_from_series,
    compose,
)


class TestFromSeries:
    def test_peak_over_mean(self):
        # mean 100, busiest sample 500
        assert burstiness_from_series([500.0, 0.0, 0.0, 0.0, 0.0]) == 5.0
        assert burstiness_from_series([500.0, 100.0, 50.0, 150.0]) == 2.5

    def test_constant_series_is_not_bursty(self):
        assert burstiness_from_series([7.0, 7.0, 7.0]) == 1.0
        assert burstiness_from_series([0.1] * 7) == 1.0

    def test_single_sample(self):
        assert burstiness_from_series([42.0]) == 1.0

    def test_all_load_in_one_bucket_hits_the_ceiling(self):
        assert burstiness_from_series([0.0, 0.0, 12.0]) == 3.0

    def test_result_stays_inside_the_theoretical_bounds(self):
        samples = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0]
        b = burstiness_from_series(samples)
        assert 1.0 <= b <= len(samples)

    @pytest.mark.parametrize("samples", [
        [],
        [0.0, 0.0],
        [1.0, -1.0],
        [1.0, math.nan],
    ])
    def test_degenerate_series_rejected(self, samples):
        with pytest.raises(DegenerateSeriesError):
            burstiness_from_series(samples)


class TestFromActiveHours:
    def test_day_concentrated_into_active_hours(self):
        assert burstiness_from_active_hours(5.0) == 4.8
        assert burstiness_from_active_hours(12.0) == 2.0

    def test_always_on_day(self):
        assert burstiness_from_active_hours(24.0) == 1.0

    @pytest.mark.parametrize("hours", [0.0, -1.0, 24.5, math.nan])
    def test_out_of_range_hours_rejected(self, hours):
        with pytest.raises(ValueError):
            burstiness_from_active_hours(hours)


class TestCompose:
    def test_factors_multiply_across_timescales(self):
        assert compose([1.5, 2.0, 2.0]) == 6.0
        assert compose([4.8, 1.25]) == 6.0

    def test_empty_composition_is_neutral(self):
        assert compose([]) == 1.0

    def test_single_factor(self):
        assert compose([3.5]) == 3.5

    @pytest.mark.parametrize("factors", [[0.9], [2.0, 0.0], [math.nan]])
    def test_deflating_factors_rejected(self, factors):
        with pytest.raises(ValueError):
            compose(factors)
