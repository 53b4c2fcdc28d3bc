from __future__ import annotations

import numpy as np
import pytest

from crimesonify.dataset import (
    GrowthOutOfRange,
    MissingRegion,
    Series,
    parse_crime_table,
    parse_growth_table,
)
from crimesonify.preprocess import (
    ADJUSTMENT_FRACTIONS,
    PER_CAPITA,
    SUBTRACTIVE,
    incorporate_population,
    normalize_base_year,
    preprocess_dataset,
)

from conftest import make_crime_csv, make_growth_csv


def make_series(values, region="West Bengal", category="Rape") -> Series:
    return Series(region=region, category=category, values=tuple(float(v) for v in values))


def oracle_adjust(values, growth, mode=SUBTRACTIVE):
    # Straight per-year recomputation, kept deliberately scalar and dumb.
    out = []
    for k in range(12):
        fraction = k / 10
        if mode == SUBTRACTIVE:
            out.append(values[k] * (1 - fraction * growth / 100))
        else:
            out.append(values[k] / (1 + fraction * growth / 100))
    return out


def oracle_normalize(values):
    return [v - values[0] for v in values]


class TestIncorporatePopulation:
    def test_zero_growth_is_identity(self):
        s = make_series(range(10, 22))
        assert incorporate_population(s, 0.0).values == s.values

    def test_constant_series_growth_10_matches_hand_schedule(self):
        # 100 reduced by 0%, 1%, 2%, ..., 11% across 2001..2012
        s = make_series([100.0] * 12)
        expected = (100.0, 99.0, 98.0, 97.0, 96.0, 95.0, 94.0, 93.0, 92.0, 91.0, 90.0, 89.0)
        got = incorporate_population(s, 10.0).values
        assert got == pytest.approx(expected, rel=1e-12)

    def test_growth_100_is_out_of_range(self):
        s = make_series([100.0] * 12)
        with pytest.raises(GrowthOutOfRange):
            incorporate_population(s, 100.0)

    def test_boundary_just_below_1000_over_11_is_accepted(self):
        s = make_series([100.0] * 12)
        values = incorporate_population(s, 1000 / 11 - 1e-6).values
        assert values[-1] > 0

    def test_boundary_at_1000_over_11_is_rejected(self):
        s = make_series([100.0] * 12)
        with pytest.raises(GrowthOutOfRange):
            incorporate_population(s, 1000 / 11)

    def test_2001_is_never_adjusted(self, rng):
        for _ in range(20):
            values = rng.uniform(0, 1000, size=12)
            growth = rng.uniform(-50, 80)
            adjusted = incorporate_population(make_series(values), growth)
            assert adjusted.values[0] == values[0]

    def test_matches_oracle_subtractive(self, rng):
        for _ in range(50):
            values = rng.uniform(0, 5000, size=12)
            growth = rng.uniform(-50, 85)
            got = incorporate_population(make_series(values), growth).values
            expected = oracle_adjust(values, growth)
            np.testing.assert_allclose(got, expected, rtol=1e-12)

    def test_matches_oracle_per_capita(self, rng):
        for _ in range(50):
            values = rng.uniform(0, 5000, size=12)
            growth = rng.uniform(-50, 200)
            got = incorporate_population(make_series(values), growth, mode=PER_CAPITA).values
            expected = oracle_adjust(values, growth, mode=PER_CAPITA)
            np.testing.assert_allclose(got, expected, rtol=1e-12)

    def test_per_capita_large_negative_growth_rejected(self):
        with pytest.raises(GrowthOutOfRange):
            incorporate_population(make_series([1.0] * 12), -95.0, mode=PER_CAPITA)

    def test_strictly_increasing_in_input_for_fixed_year(self, rng):
        growth = 40.0
        for k in range(12):
            lo_values = [100.0] * 12
            hi_values = list(lo_values)
            hi_values[k] += 5.0
            lo = incorporate_population(make_series(lo_values), growth).values
            hi = incorporate_population(make_series(hi_values), growth).values
            assert hi[k] > lo[k]

    def test_fraction_schedule_runs_0_to_1_point_1(self):
        assert ADJUSTMENT_FRACTIONS == tuple(pytest.approx(k / 10) for k in range(12))


class TestNormalizeBaseYear:
    def test_constant_series_becomes_zero(self):
        s = make_series([7.0] * 12)
        assert normalize_base_year(s).values == (0.0,) * 12

    def test_subtraction_example(self):
        s = make_series([5, 8, 3, 4, 9, 1, 0, 2, 6, 7, 10, 11])
        expected = tuple(oracle_normalize(s.values))
        assert normalize_base_year(s).values == expected
        assert normalize_base_year(s).values[:3] == (0.0, 3.0, -2.0)

    def test_idempotent_once_base_is_zero(self):
        s = make_series([0, 3, -2, 4, 9, 1, 5, 2, 6, 7, 10, 11])
        assert normalize_base_year(s).values == s.values

    def test_base_year_is_exactly_zero(self, rng):
        for _ in range(50):
            s = make_series(rng.uniform(-1e6, 1e6, size=12))
            assert normalize_base_year(s).values[0] == 0.0

    def test_pairwise_differences_preserved(self, rng):
        for _ in range(20):
            values = rng.uniform(-1000, 1000, size=12)
            out = normalize_base_year(make_series(values)).values
            for a in range(12):
                for b in range(12):
                    assert out[a] - out[b] == pytest.approx(values[a] - values[b], abs=1e-9)


class TestOrderOfOperations:
    def test_adjust_then_normalize_differs_from_reverse(self, rng):
        # The composition order matters; a randomized search finds a
        # counterexample instantly for any non-trivial series.
        found_difference = False
        for _ in range(100):
            values = rng.uniform(1, 1000, size=12)
            growth = rng.uniform(5, 60)
            s = make_series(values)
            forward = normalize_base_year(incorporate_population(s, growth)).values
            reverse = incorporate_population(normalize_base_year(s), growth).values
            if any(abs(f - r) > 1e-9 for f, r in zip(forward, reverse)):
                found_difference = True
                break
        assert found_difference


class TestPreprocessDataset:
    def test_all_zero_dataset_stays_zero(self):
        text = make_crime_csv()
        d = parse_crime_table(text)
        zeros = np.zeros_like(d.counts)
        from crimesonify.dataset import CrimeDataset, REGIONS, CATEGORIES, YEARS

        d0 = CrimeDataset(regions=REGIONS, categories=CATEGORIES, years=YEARS, counts=zeros)
        g = parse_growth_table(make_growth_csv())
        p = preprocess_dataset(d0, g)
        assert np.all(p.values == 0.0)

    def test_matches_composition_of_single_series_ops(self):
        d = parse_crime_table(make_crime_csv())
        g = parse_growth_table(make_growth_csv(overrides={"Delhi": 10.0}))
        p = preprocess_dataset(d, g)
        s = d.series("Delhi", "Dowry Deaths")
        expected = normalize_base_year(incorporate_population(s, 10.0)).values
        np.testing.assert_allclose(p.series("Delhi", "Dowry Deaths").values, expected, rtol=1e-12)

    def test_flags_are_set(self, bundled_processed):
        assert bundled_processed.population_adjusted
        assert bundled_processed.normalized

    def test_missing_region_fails_before_any_work(self):
        d = parse_crime_table(make_crime_csv())
        g = parse_growth_table(make_growth_csv())
        broken = dict(g.growth_by_region)
        del broken["Kerala"]
        from crimesonify.dataset import GrowthTable

        with pytest.raises(MissingRegion):
            GrowthTable(growth_by_region=broken)

    def test_every_series_starts_at_zero(self, bundled_processed):
        assert np.all(bundled_processed.values[:, :, 0] == 0.0)

    def test_per_capita_mode_divides(self):
        d = parse_crime_table(make_crime_csv())
        g = parse_growth_table(make_growth_csv(overrides={"Goa": 20.0}))
        p = preprocess_dataset(d, g, mode=PER_CAPITA)
        s = d.series("Goa", "Rape")
        expected = normalize_base_year(
            incorporate_population(s, 20.0, mode=PER_CAPITA)
        ).values
        np.testing.assert_allclose(p.series("Goa", "Rape").values, expected, rtol=1e-12)
