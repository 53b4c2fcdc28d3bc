from __future__ import annotations

import math

import pytest
from hypothesis import given, assume, settings
from hypothesis import strategies as st

from crimesonify.dataset import Series
from crimesonify.mapping import (
    MappingConfig,
    NonFiniteInput,
    PlanMode,
    band_quantize,
    build_comparative_plan,
    build_sequential_plan,
    map_gain,
    map_pitch_factor,
    series_bounds,
)

CFG = MappingConfig()


def make_series(values) -> Series:
    return Series(region="Kerala", category="Rape", values=tuple(float(v) for v in values))


reasonable = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


class TestBandQuantize:
    def test_endpoints(self):
        assert band_quantize(0, 0, 100, 5) == 0
        assert band_quantize(100, 0, 100, 5) == 4

    def test_midpoint(self):
        # floor(5 * 0.5) = 2, double-checked against the band-edge walk below
        assert band_quantize(50, 0, 100, 5) == 2

    def test_brute_force_band_edges(self):
        # every value between consecutive edges lands in the band the edge walk predicts
        n, lo, hi = 5, 0.0, 100.0
        edges = [lo + i * (hi - lo) / n for i in range(n + 1)]
        for band in range(n):
            inside = (edges[band] + edges[band + 1]) / 2
            assert band_quantize(inside, lo, hi, n) == band

    def test_degenerate_range_maps_to_middle(self):
        assert band_quantize(7, 7, 7, 5) == 2
        assert band_quantize(7, 7, 7, 4) == 2

    def test_out_of_bounds_clamps(self):
        assert band_quantize(-10, 0, 100, 5) == 0
        assert band_quantize(110, 0, 100, 5) == 4

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteInput):
            band_quantize(float("nan"), 0, 100, 5)

    @given(
        t=st.floats(min_value=-0.5, max_value=1.5, allow_nan=False),
        lo=st.floats(min_value=-1e4, max_value=1e4, allow_nan=False),
        width=st.floats(min_value=1e-3, max_value=1e4, allow_nan=False),
        a=st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
        b=st.floats(min_value=-1e3, max_value=1e3, allow_nan=False),
        n=st.integers(min_value=2, max_value=9),
    )
    @settings(max_examples=300)
    def test_scale_invariance(self, t, lo, width, a, b, n):
        hi = lo + width
        v = lo + t * width
        # stay away from band edges where one float ulp flips the floor
        u = n * t
        assume(abs(u - round(u)) > 1e-6)
        direct = band_quantize(v, lo, hi, n)
        scaled = band_quantize(a * v + b, a * lo + b, a * hi + b, n)
        assert direct == scaled


class TestPitchMapping:
    def test_range_endpoints(self):
        assert map_pitch_factor(0, 0, 100, CFG) == pytest.approx(1.0)
        assert map_pitch_factor(100, 0, 100, CFG) == pytest.approx(2.0)

    def test_geometric_midpoint_is_sqrt2(self):
        assert map_pitch_factor(50, 0, 100, CFG) == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_degenerate_range_is_midpoint(self):
        assert map_pitch_factor(7, 7, 7, CFG) == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_clamps_outside_bounds(self):
        assert map_pitch_factor(-5, 0, 100, CFG) == pytest.approx(1.0)
        assert map_pitch_factor(500, 0, 100, CFG) == pytest.approx(2.0)

    def test_linear_in_semitones(self):
        # equal value steps give equal factor ratios
        f1 = map_pitch_factor(10, 0, 100, CFG)
        f2 = map_pitch_factor(20, 0, 100, CFG)
        f3 = map_pitch_factor(30, 0, 100, CFG)
        assert f2 / f1 == pytest.approx(f3 / f2, rel=1e-9)


class TestGainMapping:
    def test_range_endpoints(self):
        assert map_gain(0, 0, 100, CFG) == pytest.approx(0.2)
        assert map_gain(100, 0, 100, CFG) == pytest.approx(1.0)

    def test_affine_midpoint(self):
        assert map_gain(50, 0, 100, CFG) == pytest.approx(0.6)

    def test_clamps_below_bounds(self):
        assert map_gain(-50, 0, 100, CFG) == pytest.approx(0.2)

    def test_degenerate_range_is_midpoint(self):
        assert map_gain(3, 3, 3, CFG) == pytest.approx(0.6)


class TestMonotonicity:
    @given(
        lo=st.floats(min_value=-1e4, max_value=1e4, allow_nan=False),
        width=st.floats(min_value=1.0, max_value=1e4, allow_nan=False),
        t1=st.floats(min_value=0.0, max_value=1.0),
        t2=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300)
    def test_all_three_mappings_are_monotone(self, lo, width, t1, t2):
        hi = lo + width
        v1, v2 = lo + t1 * width, lo + t2 * width
        if v1 > v2:
            v1, v2 = v2, v1
        assume(v2 - v1 > 1e-9 * width)
        assert map_gain(v1, lo, hi, CFG) <= map_gain(v2, lo, hi, CFG)
        assert map_pitch_factor(v1, lo, hi, CFG) <= map_pitch_factor(v2, lo, hi, CFG)
        assert band_quantize(v1, lo, hi, CFG.n_bands) <= band_quantize(v2, lo, hi, CFG.n_bands)
        # strictly inside the bounds the continuous mappings are strict
        if lo < v1 and v2 < hi:
            assert map_gain(v1, lo, hi, CFG) < map_gain(v2, lo, hi, CFG)
            assert map_pitch_factor(v1, lo, hi, CFG) < map_pitch_factor(v2, lo, hi, CFG)


class TestSequentialPlan:
    def test_increasing_series_covers_bands_0_to_4(self):
        plan = build_sequential_plan(make_series(range(12)), "frequency", CFG)
        bands = [ev.timbre_band for ev in plan.events]
        assert bands == sorted(bands)
        assert bands[0] == 0
        assert bands[-1] == 4

    def test_constant_series_amplitude_gains_are_mid(self):
        plan = build_sequential_plan(make_series([42.0] * 12), "amplitude", CFG)
        assert all(ev.gain == pytest.approx(0.6) for ev in plan.events)

    def test_banding_matches_brute_force_enumeration(self):
        values = [0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110]
        plan = build_sequential_plan(make_series(values), "frequency", CFG)
        got = [ev.timbre_band for ev in plan.events]
        expected = [min(4, math.floor(5 * v / 110)) for v in values]
        assert got == expected
        assert got == [0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 4]

    def test_twelve_events_spaced_duration_plus_gap(self):
        plan = build_sequential_plan(make_series(range(12)), "frequency", CFG)
        assert len(plan.events) == 12
        for k, ev in enumerate(plan.events):
            assert ev.start_s == pytest.approx(k * 1.25)
            assert ev.duration_s == 1.0
        assert plan.total_span_s == pytest.approx(12 * 1.0 + 11 * 0.25)

    def test_total_span_formula_for_odd_config(self):
        cfg = MappingConfig(event_duration_s=0.5, inter_event_gap_s=0.1)
        plan = build_sequential_plan(make_series(range(12)), "amplitude", cfg)
        assert plan.total_span_s == pytest.approx(12 * 0.5 + 11 * 0.1)

    def test_frequency_mode_gain_is_constant_mid(self):
        plan = build_sequential_plan(make_series(range(12)), "frequency", CFG)
        assert all(ev.gain == pytest.approx(0.6) for ev in plan.events)
        assert len({ev.gain for ev in plan.events}) == 1

    def test_amplitude_mode_pitch_is_baseline(self):
        plan = build_sequential_plan(make_series(range(12)), "amplitude", CFG)
        assert all(ev.pitch_factor == 1.0 for ev in plan.events)
        assert all(ev.timbre_band == 0 for ev in plan.events)

    def test_all_events_front_center(self):
        plan = build_sequential_plan(make_series(range(12)), "frequency", CFG)
        assert all(ev.pan_azimuth_deg == 0.0 for ev in plan.events)

    def test_graph_series_is_passed_through(self):
        values = list(range(12))
        plan = build_sequential_plan(make_series(values), "amplitude", CFG)
        assert plan.series_for_graph == tuple(float(v) for v in values)
        assert plan.labels == tuple(str(y) for y in range(2001, 2013))

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            build_sequential_plan(make_series(range(12)), "tempo", CFG)


class TestComparativePlan:
    def test_worked_example_100_vs_50(self):
        plan = build_comparative_plan(100.0, 50.0, "a", "b", (0.0, 100.0), CFG)
        a, b = plan.events
        assert a.gain == pytest.approx(1.0)
        assert a.pitch_factor == pytest.approx(2.0)
        assert b.gain == pytest.approx(0.6)
        assert b.pitch_factor == pytest.approx(math.sqrt(2.0), rel=1e-6)

    def test_equal_values_produce_identical_sound_parameters(self):
        plan = build_comparative_plan(7.0, 7.0, "a", "b", (0.0, 100.0), CFG)
        a, b = plan.events
        assert (a.gain, a.pitch_factor, a.timbre_band) == (b.gain, b.pitch_factor, b.timbre_band)

    def test_larger_second_value_is_louder_and_higher(self):
        plan = build_comparative_plan(0.0, 100.0, "a", "b", (0.0, 100.0), CFG)
        a, b = plan.events
        assert b.gain > a.gain
        assert b.pitch_factor > a.pitch_factor

    def test_pan_and_timing(self):
        plan = build_comparative_plan(1.0, 2.0, "a", "b", (0.0, 10.0), CFG)
        a, b = plan.events
        assert a.pan_azimuth_deg == -45.0
        assert b.pan_azimuth_deg == 45.0
        assert a.start_s == 0.0
        assert b.start_s == pytest.approx(a.duration_s + CFG.inter_event_gap_s)
        assert plan.mode is PlanMode.COMPARATIVE
        assert len(plan.events) == 2

    @given(
        t1=st.floats(min_value=0.0, max_value=1.0),
        t2=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=200)
    def test_sign_agreement(self, t1, t2):
        lo, hi = -50.0, 150.0
        va, vb = lo + t1 * (hi - lo), lo + t2 * (hi - lo)
        plan = build_comparative_plan(va, vb, "a", "b", (lo, hi), CFG)
        a, b = plan.events

        def sign(x: float) -> int:
            return (x > 0) - (x < 0)

        assert sign(a.gain - b.gain) == sign(va - vb)
        assert sign(a.pitch_factor - b.pitch_factor) == sign(va - vb)


class TestSeriesBounds:
    def test_constant(self):
        assert series_bounds(make_series([5.0] * 12)) == (5.0, 5.0)

    def test_mixed_signs(self):
        values = [0, 3, -2] + [0] * 9
        assert series_bounds(make_series(values)) == (-2.0, 3.0)

    def test_matches_linear_scan(self, rng):
        values = rng.uniform(-100, 100, size=12)
        lo, hi = series_bounds(make_series(values))
        scan_lo, scan_hi = values[0], values[0]
        for v in values[1:]:
            scan_lo = v if v < scan_lo else scan_lo
            scan_hi = v if v > scan_hi else scan_hi
        assert (lo, hi) == (scan_lo, scan_hi)
