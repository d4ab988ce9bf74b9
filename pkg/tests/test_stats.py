import random
import statistics

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setsumm.errors import EmptyInputError
from setsumm.stats import (
    PriceCurve,
    detect_outliers,
    mad,
    median,
    price_curve,
    round_down_to_step,
    round_half_up_to_step,
    round_up_to_step,
)

from conftest import make_table, prices_strategy


class TestMedian:
    def test_singleton(self):
        assert median([42]) == 42

    def test_even_length(self):
        assert median([1, 2, 3, 4]) == 2.5

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            median([])

    def test_against_stdlib_oracle(self):
        rng = random.Random(17)
        for _ in range(1000):
            values = [rng.uniform(-1e4, 1e4) for _ in range(rng.randint(1, 60))]
            assert median(values) == statistics.median(values)


class TestMad:
    def test_constant_input(self):
        assert mad([5, 5, 5]) == 0

    def test_worked_example(self):
        # median 120; deviations {20,10,0,10,4880}; their median is 10
        assert mad([100, 110, 120, 130, 5000]) == 10

    @given(prices_strategy, st.floats(-1e5, 1e5))
    def test_translation_invariance(self, values, shift):
        assert mad([v + shift for v in values]) == pytest.approx(
            mad(values), rel=1e-9, abs=1e-6
        )


class TestDetectOutliers:
    def test_worked_example(self):
        flags = detect_outliers([100, 110, 120, 130, 5000])
        assert flags == (False, False, False, False, True)

    def test_zero_mad_flags_nothing(self):
        assert detect_outliers([7, 7, 7, 7]) == (False,) * 4

    def test_permutation_equivariance(self):
        values = [100, 110, 120, 130, 5000, 115]
        flags = detect_outliers(values)
        rng = random.Random(5)
        order = list(range(len(values)))
        rng.shuffle(order)
        shuffled_flags = detect_outliers([values[i] for i in order])
        assert shuffled_flags == tuple(flags[i] for i in order)

    @given(
        st.lists(st.integers(-10_000, 10_000), min_size=1, max_size=40),
        st.sampled_from([0.5, 2.0, 10.0]),
    )
    @settings(max_examples=100)
    def test_scale_equivariance(self, values, c):
        floats = [float(v) for v in values]
        assert detect_outliers([c * v for v in floats]) == detect_outliers(floats)

    def test_cutoff_configurable(self):
        values = [100.0, 110.0, 120.0, 130.0, 160.0]
        # modified z of 160 is 40 / (1.4826 * 10) ~= 2.70
        assert detect_outliers(values, cutoff=3.5) == (False,) * 5
        assert detect_outliers(values, cutoff=2.5)[-1] is True


class TestRounding:
    @pytest.mark.parametrize(
        "value,down,up,half",
        [
            (99, 95, 100, 100),
            (97.5, 95, 100, 100),
            (97.4, 95, 100, 95),
            (100, 100, 100, 100),
            (70.0, 70, 70, 70),
            (0.0, 0, 0, 0),
            (2.4, 0, 5, 0),
            (2.5, 0, 5, 5),
        ],
    )
    def test_directions(self, value, down, up, half):
        assert round_down_to_step(value) == down
        assert round_up_to_step(value) == up
        assert round_half_up_to_step(value) == half


class TestPriceCurve:
    def test_worked_example(self):
        table = make_table([100, 110, 120, 130, 5000])
        curve = price_curve(table)
        assert curve.total_count == 5
        assert curve.inlier_count == 4
        assert (curve.inlier_lo, curve.inlier_hi) == (100, 130)
        assert curve.median_rounded == 120
        assert curve.median_raw == 120

    def test_constant_prices(self):
        curve = price_curve(make_table([99, 99, 99]))
        assert (curve.inlier_lo, curve.inlier_hi) == (95, 100)
        assert curve.median_rounded == 100
        assert curve.inlier_count == curve.total_count == 3

    def test_single_product(self):
        curve = price_curve(make_table([42]))
        assert curve.inlier_count == 1
        assert curve.inlier_lo <= 42 <= curve.inlier_hi

    @given(prices_strategy)
    @settings(max_examples=150)
    def test_inliers_contained_in_range(self, prices):
        table = make_table(prices)
        curve = price_curve(table)
        flags = detect_outliers(list(table.prices))
        for price, flagged in zip(table.prices, flags):
            if not flagged:
                assert curve.inlier_lo <= price <= curve.inlier_hi

    def test_invariant_validation(self):
        with pytest.raises(ValueError):
            PriceCurve(5, 0, 100, 130, 120, 120.0, 10.0)
        with pytest.raises(ValueError):
            PriceCurve(5, 4, 100, 130, 121, 120.0, 10.0)
        with pytest.raises(ValueError):
            PriceCurve(5, 4, 100, 130, 135, 120.0, 10.0)
