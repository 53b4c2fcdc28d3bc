"""Conversion of processed data values into sonification plans.

Three mapping primitives (equal-width band quantization, geometric pitch
mapping, affine gain mapping) feed two plan builders: a twelve-event
sequential plan over one series, and a two-event comparative plan over a
pair of values sharing common bounds.  All functions are pure and
monotone in the data value for fixed bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .dataset import N_YEARS, Series, YEARS


class NonFiniteInput(ValueError):
    pass


class PlanMode(str, Enum):
    SEQUENTIAL_FREQUENCY = "sequential_frequency"
    SEQUENTIAL_AMPLITUDE = "sequential_amplitude"
    COMPARATIVE = "comparative"


@dataclass(frozen=True)
class MappingConfig:
    """Knobs for value-to-sound conversion.

    pitch_factor_range defaults to one octave; gain_range is linear
    amplitude in (0, 1].  Durations are per event.
    """

    n_bands: int = 5
    pitch_factor_range: tuple[float, float] = (1.0, 2.0)
    gain_range: tuple[float, float] = (0.2, 1.0)
    event_duration_s: float = 1.0
    inter_event_gap_s: float = 0.25

    def __post_init__(self):
        if self.n_bands < 2:
            raise ValueError(f"n_bands must be >= 2, got {self.n_bands}")
        p_lo, p_hi = self.pitch_factor_range
        g_lo, g_hi = self.gain_range
        if not (0 < p_lo < p_hi):
            raise ValueError(f"pitch_factor_range must satisfy 0 < lo < hi, got {self.pitch_factor_range}")
        if not (0 < g_lo < g_hi <= 1.0):
            raise ValueError(f"gain_range must satisfy 0 < lo < hi <= 1, got {self.gain_range}")
        if self.event_duration_s <= 0 or self.inter_event_gap_s < 0:
            raise ValueError("event_duration_s must be > 0 and inter_event_gap_s >= 0")


@dataclass(frozen=True)
class SoundEvent:
    start_s: float
    duration_s: float
    pitch_factor: float
    gain: float
    timbre_band: int
    pan_azimuth_deg: float

    def __post_init__(self):
        fields = (self.start_s, self.duration_s, self.pitch_factor, self.gain, self.pan_azimuth_deg)
        if not all(math.isfinite(v) for v in fields):
            raise NonFiniteInput("sound event fields must be finite")
        if self.duration_s <= 0 or self.pitch_factor <= 0:
            raise ValueError("duration and pitch factor must be positive")
        if not (0 < self.gain <= 1.0):
            raise ValueError(f"gain must be in (0, 1], got {self.gain}")
        if self.timbre_band < 0:
            raise ValueError("timbre band must be non-negative")
        if not (-180.0 <= self.pan_azimuth_deg < 180.0):
            raise ValueError(f"pan azimuth must lie in [-180, 180), got {self.pan_azimuth_deg}")


@dataclass(frozen=True)
class SonificationPlan:
    events: tuple[SoundEvent, ...]
    mode: PlanMode
    labels: tuple[str, ...]
    series_for_graph: tuple[float, ...]

    def __post_init__(self):
        expected = 2 if self.mode is PlanMode.COMPARATIVE else N_YEARS
        if len(self.events) != expected:
            raise ValueError(f"{self.mode.value} plan must have {expected} events, got {len(self.events)}")
        if len(self.labels) != len(self.events) or len(self.series_for_graph) != len(self.events):
            raise ValueError("labels and graph values must align with events")

    @property
    def total_span_s(self) -> float:
        return max(ev.start_s + ev.duration_s for ev in self.events)


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteInput(f"non-finite input {v!r}")


def band_quantize(value: float, lo: float, hi: float, n_bands: int) -> int:
    """Index of the equal-width band over [lo, hi] containing value.

    value == hi lands in the top band; values outside [lo, hi] clamp to the
    nearest band; a degenerate range maps everything to the middle band.
    """
    _check_finite(value, lo, hi)
    if lo > hi:
        raise ValueError(f"bounds must satisfy lo <= hi, got [{lo}, {hi}]")
    if n_bands < 2:
        raise ValueError(f"n_bands must be >= 2, got {n_bands}")
    if lo == hi:
        return n_bands // 2
    idx = math.floor(n_bands * (value - lo) / (hi - lo))
    return max(0, min(n_bands - 1, idx))


def _position(value: float, lo: float, hi: float) -> float:
    """Relative position of value in [lo, hi], clamped to [0, 1]; 0.5 when degenerate."""
    _check_finite(value, lo, hi)
    if lo > hi:
        raise ValueError(f"bounds must satisfy lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return 0.5
    return min(1.0, max(0.0, (value - lo) / (hi - lo)))


def map_pitch_factor(value: float, lo: float, hi: float, cfg: MappingConfig) -> float:
    """Pitch factor geometric in the data value (linear in semitones)."""
    t = _position(value, lo, hi)
    p_lo, p_hi = cfg.pitch_factor_range
    return p_lo * (p_hi / p_lo) ** t


def map_gain(value: float, lo: float, hi: float, cfg: MappingConfig) -> float:
    """Gain affine from [lo, hi] onto the configured gain range, clamped."""
    t = _position(value, lo, hi)
    g_lo, g_hi = cfg.gain_range
    return g_lo + t * (g_hi - g_lo)


def series_bounds(s: Series) -> tuple[float, float]:
    return min(s.values), max(s.values)


def band_center_value(band: int, lo: float, hi: float, n_bands: int) -> float:
    """Data value at the center of a band (the band's representative)."""
    if lo == hi:
        return lo
    return lo + (band + 0.5) * (hi - lo) / n_bands


SEQUENTIAL_MODES = ("frequency", "amplitude")


def build_sequential_plan(s: Series, mode: str, cfg: MappingConfig | None = None) -> SonificationPlan:
    """Twelve events across the years of one series, spaced duration + gap.

    frequency: discrete timbre/pitch per band over the series' own range,
    constant mid gain.  amplitude: one baseline timbre at pitch 1.0, gain
    tracking the value.  All events sit front-center; the renderer may
    re-pan them.
    """
    if mode not in SEQUENTIAL_MODES:
        raise ValueError(f"mode must be one of {SEQUENTIAL_MODES}, got {mode!r}")
    cfg = cfg or MappingConfig()
    lo, hi = series_bounds(s)
    g_lo, g_hi = cfg.gain_range
    mid_gain = (g_lo + g_hi) / 2.0

    events = []
    for k, v in enumerate(s.values):
        start = k * (cfg.event_duration_s + cfg.inter_event_gap_s)
        if mode == "frequency":
            band = band_quantize(v, lo, hi, cfg.n_bands)
            center = band_center_value(band, lo, hi, cfg.n_bands)
            pitch = map_pitch_factor(center, lo, hi, cfg)
            gain = mid_gain
        else:
            band = 0
            pitch = 1.0
            gain = map_gain(v, lo, hi, cfg)
        events.append(
            SoundEvent(
                start_s=start,
                duration_s=cfg.event_duration_s,
                pitch_factor=pitch,
                gain=gain,
                timbre_band=band,
                pan_azimuth_deg=0.0,
            )
        )
    plan_mode = PlanMode.SEQUENTIAL_FREQUENCY if mode == "frequency" else PlanMode.SEQUENTIAL_AMPLITUDE
    return SonificationPlan(
        events=tuple(events),
        mode=plan_mode,
        labels=tuple(str(y) for y in YEARS),
        series_for_graph=tuple(s.values),
    )


def build_comparative_plan(
    value_a: float,
    value_b: float,
    label_a: str,
    label_b: str,
    bounds: tuple[float, float],
    cfg: MappingConfig | None = None,
) -> SonificationPlan:
    """Two events mapping both values over shared bounds.

    The larger value sounds louder and higher pitched; equal values get
    identical sound parameters.  Event A pans left (-45), B right (+45),
    B starting one gap after A ends.
    """
    cfg = cfg or MappingConfig()
    lo, hi = bounds
    _check_finite(value_a, value_b, lo, hi)
    if lo > hi:
        raise ValueError(f"bounds must satisfy lo <= hi, got [{lo}, {hi}]")

    def event(value: float, start: float, azimuth: float) -> SoundEvent:
        return SoundEvent(
            start_s=start,
            duration_s=cfg.event_duration_s,
            pitch_factor=map_pitch_factor(value, lo, hi, cfg),
            gain=map_gain(value, lo, hi, cfg),
            timbre_band=band_quantize(value, lo, hi, cfg.n_bands),
            pan_azimuth_deg=azimuth,
        )

    a = event(value_a, 0.0, -45.0)
    b = event(value_b, cfg.event_duration_s + cfg.inter_event_gap_s, +45.0)
    return SonificationPlan(
        events=(a, b),
        mode=PlanMode.COMPARATIVE,
        labels=(label_a, label_b),
        series_for_graph=(float(value_a), float(value_b)),
    )
