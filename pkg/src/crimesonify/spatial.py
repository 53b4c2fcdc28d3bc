"""Spatialized rendering of sonification plans and WAV encoding.

Panning is pairwise equal-power between the two speakers nearest the
source azimuth, so summed squared gains are always 1.  Layouts: plain
stereo at +/-30 degrees, or a horizontal ring of n speakers starting at
0 degrees.  Rendering is offline and deterministic; playback elsewhere
consumes the same buffers.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .mapping import MappingConfig, PlanMode, SonificationPlan
from .synth import (
    DEFAULT_SAMPLE_RATE,
    AudioBuffer,
    SampleBank,
    SurrogateVoiceParams,
    realize_event,
)

STEREO_AZIMUTHS = (-30.0, 30.0)


class UnsupportedBitDepth(ValueError):
    pass


def wrap_azimuth(deg: float) -> float:
    """Fold an angle into [-180, 180)."""
    return (deg + 180.0) % 360.0 - 180.0


@dataclass(frozen=True)
class SpatialConfig:
    """Speaker layout and the sequential panning trajectory.

    Ring layouts sweep sequential plans around the circle (event k at
    k * 360/n degrees) unless static_front pins everything at 0.  The
    sweep is a playback choice, not data.
    """

    kind: str  # "stereo" | "ring"
    speaker_azimuths_deg: tuple[float, ...]
    static_front: bool = False

    def __post_init__(self):
        if self.kind not in ("stereo", "ring"):
            raise ValueError(f"layout must be 'stereo' or 'ring', got {self.kind!r}")
        if len(self.speaker_azimuths_deg) < 2:
            raise ValueError("at least 2 speakers are required")
        wrapped = [wrap_azimuth(a) for a in self.speaker_azimuths_deg]
        if len(set(wrapped)) != len(wrapped):
            raise ValueError("speaker azimuths must be distinct")

    @classmethod
    def stereo(cls, static_front: bool = False) -> "SpatialConfig":
        return cls(kind="stereo", speaker_azimuths_deg=STEREO_AZIMUTHS, static_front=static_front)

    @classmethod
    def ring(cls, n: int = 8, static_front: bool = False) -> "SpatialConfig":
        if n < 2:
            raise ValueError(f"a ring needs at least 2 speakers, got {n}")
        azimuths = tuple(wrap_azimuth(i * 360.0 / n) for i in range(n))
        return cls(kind="ring", speaker_azimuths_deg=azimuths, static_front=static_front)

    @property
    def channels(self) -> int:
        return len(self.speaker_azimuths_deg)


def pan_gains(azimuth_deg: float, cfg: SpatialConfig) -> np.ndarray:
    """Per-channel gains for a source azimuth; sum of squares is 1.

    Equal-power crossfade between the two nearest speakers: gains
    cos(theta) and sin(theta) with theta in [0, pi/2] tracking the
    angular position between them.  Stereo clamps outside the speaker
    arc; rings wrap around.
    """
    if not math.isfinite(azimuth_deg):
        raise ValueError(f"azimuth must be finite, got {azimuth_deg}")
    gains = np.zeros(cfg.channels)

    if cfg.kind == "stereo":
        lo, hi = cfg.speaker_azimuths_deg
        az = min(hi, max(lo, azimuth_deg))
        t = (az - lo) / (hi - lo)
        theta = t * math.pi / 2.0
        gains[0] = math.cos(theta)
        gains[1] = math.sin(theta)
        return gains

    az = wrap_azimuth(azimuth_deg)
    order = sorted(range(cfg.channels), key=lambda i: cfg.speaker_azimuths_deg[i])
    azimuths = [cfg.speaker_azimuths_deg[i] for i in order]
    # find the bracketing pair, wrapping from the last speaker to the first
    for j in range(len(order)):
        a = azimuths[j]
        b = azimuths[(j + 1) % len(order)]
        span = (b - a) % 360.0 or 360.0
        offset = (az - a) % 360.0
        if offset < span or (j == len(order) - 1 and offset == span):
            t = offset / span
            theta = t * math.pi / 2.0
            gains[order[j]] = math.cos(theta)
            gains[order[(j + 1) % len(order)]] = math.sin(theta)
            return gains
    raise AssertionError("unreachable: azimuth not bracketed")


def _event_azimuth(index: int, event_azimuth: float, plan_mode: PlanMode, cfg: SpatialConfig) -> float:
    sequential = plan_mode in (PlanMode.SEQUENTIAL_FREQUENCY, PlanMode.SEQUENTIAL_AMPLITUDE)
    if cfg.kind == "ring" and sequential and not cfg.static_front:
        return wrap_azimuth(index * 360.0 / cfg.channels)
    return event_azimuth


def render_plan(
    plan: SonificationPlan,
    voice: SampleBank | SurrogateVoiceParams,
    mcfg: MappingConfig,
    scfg: SpatialConfig,
    sample_rate_hz: int = DEFAULT_SAMPLE_RATE,
    base_seed: int = 0,
) -> AudioBuffer:
    """Mix a plan into one multichannel buffer.

    Each event is realized mono (seeded by its index for determinism),
    scaled by its pan gains, and summed in at its start time; the mix is
    clamped to [-1, 1] at the end.
    """
    plan_end = max(ev.start_s + ev.duration_s for ev in plan.events)
    n = round(plan_end * sample_rate_hz)
    out = np.zeros((scfg.channels, n))

    for index, ev in enumerate(plan.events):
        buf = realize_event(ev, voice, mcfg, sample_rate_hz, seed=base_seed + index)
        azimuth = _event_azimuth(index, ev.pan_azimuth_deg, plan.mode, scfg)
        gains = pan_gains(azimuth, scfg)
        start = round(ev.start_s * sample_rate_hz)
        stop = min(n, start + buf.n_samples)
        out[:, start:stop] += gains[:, None] * buf.samples[0, : stop - start]

    return AudioBuffer(samples=np.clip(out, -1.0, 1.0), sample_rate_hz=sample_rate_hz)


def write_wav(buf: AudioBuffer, bit_depth: int = 16) -> bytes:
    """Encode a buffer as canonical PCM RIFF/WAVE bytes (16- or 24-bit,
    interleaved little-endian)."""
    if bit_depth not in (16, 24):
        raise UnsupportedBitDepth(f"bit depth must be 16 or 24, got {bit_depth}")
    frames = np.clip(buf.samples.T, -1.0, 1.0)  # (n, channels)
    if bit_depth == 16:
        ints = np.round(frames * 32767.0).astype("<i2")
        payload = ints.tobytes()
    else:
        ints = np.round(frames * 8388607.0).astype("<i4")
        payload = ints.tobytes()
        # keep the low 3 of every 4 little-endian bytes: 24-bit two's complement
        payload = np.frombuffer(payload, dtype=np.uint8).reshape(-1, 4)[:, :3].tobytes()

    channels = buf.channels
    block_align = channels * bit_depth // 8
    byte_rate = buf.sample_rate_hz * block_align
    data_size = len(payload)
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + data_size,
        b"WAVE",
        b"fmt ",
        16,
        1,  # PCM
        channels,
        buf.sample_rate_hz,
        byte_rate,
        block_align,
        bit_depth,
        b"data",
        data_size,
    )
    return header + payload


def graph_points(plan: SonificationPlan) -> list[tuple[str, float]]:
    """Label/value pairs backing the chart shown alongside the audio."""
    return list(zip(plan.labels, plan.series_for_graph))


def artifact_name(region: str, category: str, mode: str) -> str:
    """File name for a rendered plan: {region}_{category}_{mode}.wav."""

    def slug(text: str) -> str:
        return "".join(ch if ch.isalnum() else "_" for ch in text.strip())

    return f"{slug(region)}_{slug(category)}_{slug(mode)}.wav"
