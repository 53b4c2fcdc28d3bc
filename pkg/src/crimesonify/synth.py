"""Mono scream-like audio for sound events.

Two voices are supported: a procedural surrogate (harmonic stack over a
downward onset glide, vibrato, and band-filtered noise whose level and
brightness rise with harshness) and a user-supplied bank of scream
recordings ordered by harshness.  Transforms: resampling pitch shift,
gain with a clip guard, and a linear attack/release envelope.

Everything here is deterministic given explicit seeds; no function ever
emits NaN, infinity, or samples outside [-1, 1].
"""

from __future__ import annotations

import wave
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

DEFAULT_SAMPLE_RATE = 44100
SAMPLE_BANK_SIZE = 6

PITCH_SHIFT_RANGE = (0.25, 4.0)


class SynthError(ValueError):
    pass


class FrequencyOutOfRange(SynthError):
    pass


class NonPositiveDuration(SynthError):
    pass


class FactorOutOfRange(SynthError):
    pass


class EnvelopeTooLong(SynthError):
    pass


class MissingSample(SynthError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"sample bank is missing scream_{index}.wav")


class UnreadableWav(SynthError):
    pass


class InconsistentSampleRate(SynthError):
    pass


@dataclass(frozen=True, eq=False)
class AudioBuffer:
    """Multichannel float samples in [-1, 1] at a fixed sample rate."""

    samples: np.ndarray  # shape (channels, n_samples), float64
    sample_rate_hz: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        if self.samples.ndim != 2 or self.samples.shape[0] < 1:
            raise ValueError(f"samples must be (channels, n), got shape {self.samples.shape}")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample rate must be positive")
        if not np.isfinite(self.samples).all():
            raise ValueError("samples must be finite")

    @property
    def channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate_hz

    def __eq__(self, other) -> bool:
        if not isinstance(other, AudioBuffer):
            return NotImplemented
        return self.sample_rate_hz == other.sample_rate_hz and np.array_equal(
            self.samples, other.samples
        )


def mono(samples: np.ndarray, sample_rate_hz: int = DEFAULT_SAMPLE_RATE) -> AudioBuffer:
    return AudioBuffer(samples=np.asarray(samples, dtype=np.float64).reshape(1, -1),
                       sample_rate_hz=sample_rate_hz)


@dataclass(frozen=True)
class SurrogateVoiceParams:
    """Recipe for the procedural scream stand-in.

    noise_mix is derived from harshness unless given explicitly; harsher
    voices get a flatter harmonic rolloff and more, brighter noise.
    """

    base_freq_hz: float = 600.0
    harshness: float = 0.5
    partials: int = 8
    noise_mix: float | None = None
    vibrato_rate_hz: float = 5.5
    vibrato_depth: float = 0.004

    def __post_init__(self):
        if not (0.0 <= self.harshness <= 1.0):
            raise ValueError(f"harshness must lie in [0, 1], got {self.harshness}")
        if self.partials < 1:
            raise ValueError("at least one partial is required")
        if self.noise_mix is None:
            object.__setattr__(self, "noise_mix", 0.05 + 0.45 * self.harshness)
        if not (0.0 <= self.noise_mix <= 1.0):
            raise ValueError(f"noise_mix must lie in [0, 1], got {self.noise_mix}")
        for v in (self.base_freq_hz, self.vibrato_rate_hz, self.vibrato_depth, self.noise_mix):
            if not np.isfinite(v):
                raise ValueError("voice parameters must be finite")

    def with_harshness(self, harshness: float) -> "SurrogateVoiceParams":
        """Copy with new harshness; noise_mix is re-derived from it."""
        return replace(self, harshness=harshness, noise_mix=None)


@dataclass(frozen=True)
class SampleBank:
    """Scream recordings ordered by increasing harshness, one sample rate."""

    buffers: tuple[AudioBuffer, ...]
    base_pitch_hz: tuple[float, ...]

    def __post_init__(self):
        if len(self.buffers) < 2:
            raise ValueError("a sample bank needs at least 2 entries")
        if len(self.base_pitch_hz) != len(self.buffers):
            raise ValueError("one base pitch per buffer is required")
        rates = {b.sample_rate_hz for b in self.buffers}
        if len(rates) != 1:
            raise InconsistentSampleRate(f"mixed sample rates in bank: {sorted(rates)}")
        if any(b.channels != 1 for b in self.buffers):
            raise ValueError("bank buffers must be mono")

    @property
    def sample_rate_hz(self) -> int:
        return self.buffers[0].sample_rate_hz

    def __len__(self) -> int:
        return len(self.buffers)


def _clip(samples: np.ndarray) -> np.ndarray:
    # Guard rail: public operations never emit samples beyond [-1, 1].
    return np.clip(samples, -1.0, 1.0)


def synth_scream(
    params: SurrogateVoiceParams,
    pitch_factor: float,
    duration_s: float,
    sample_rate_hz: int = DEFAULT_SAMPLE_RATE,
    seed: int = 0,
) -> AudioBuffer:
    """Procedural scream at fundamental base_freq * pitch_factor.

    The spectrum is a harmonic stack whose rolloff flattens with harshness
    plus band-filtered noise that grows louder and brighter with harshness,
    so the spectral centroid rises monotonically with it.  The fundamental
    stays the dominant spectral peak.  Output is deterministic for a given
    seed, peak-normalized below 1.
    """
    if duration_s <= 0:
        raise NonPositiveDuration(f"duration must be > 0, got {duration_s}")
    if pitch_factor <= 0 or not np.isfinite(pitch_factor):
        raise FactorOutOfRange(f"pitch factor must be positive and finite, got {pitch_factor}")
    f0 = params.base_freq_hz * pitch_factor
    if not (20.0 < f0 < sample_rate_hz / 4):
        raise FrequencyOutOfRange(
            f"fundamental {f0:.1f} Hz outside (20, {sample_rate_hz / 4:.0f}) at rate {sample_rate_hz}"
        )

    n = round(duration_s * sample_rate_hz)
    t = np.arange(n) / sample_rate_hz

    # Frequency contour: a fast downward onset glide (screams start sharp)
    # plus light vibrato.  Both are small enough that the steady-state
    # fundamental stays within a few cents of f0.
    contour = 1.0 + 0.06 * np.exp(-t / 0.05)
    contour *= 1.0 + params.vibrato_depth * np.sin(2.0 * np.pi * params.vibrato_rate_hz * t)
    phase = 2.0 * np.pi * np.cumsum(f0 * contour) / sample_rate_hz

    rolloff = 2.4 - 1.4 * params.harshness  # 2.4 (mellow) .. 1.0 (rich)
    nyquist_margin = 0.475 * sample_rate_hz  # keep glide peak below Nyquist
    tone = np.zeros(n)
    for k in range(1, params.partials + 1):
        if k * f0 * 1.07 >= nyquist_margin:
            break
        tone += k ** (-rolloff) * np.sin(k * phase)
    peak = np.max(np.abs(tone))
    if peak > 0:
        tone /= peak

    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(n)
    spectrum = np.fft.rfft(noise)
    freqs = np.fft.rfftfreq(n, d=1.0 / sample_rate_hz)
    band_lo = 800.0
    band_hi = 2000.0 + 6000.0 * params.harshness
    # raised edges over ~200 Hz keep the band filter from ringing
    edge = 200.0
    rise = np.clip((freqs - (band_lo - edge)) / edge, 0.0, 1.0)
    fall = np.clip(((band_hi + edge) - freqs) / edge, 0.0, 1.0)
    window = np.minimum(rise, fall) * (freqs > 0)
    noise = np.fft.irfft(spectrum * window, n=n)
    noise_peak = np.max(np.abs(noise))
    if noise_peak > 0:
        noise /= noise_peak

    mix = params.noise_mix
    out = (1.0 - mix) * tone + mix * noise

    # Organic amplitude contour: 5 ms rise, slight fade over the tail.
    rise_n = min(n, max(1, round(0.005 * sample_rate_hz)))
    env = np.ones(n)
    env[:rise_n] = np.linspace(0.0, 1.0, rise_n, endpoint=False) if rise_n > 1 else 1.0
    env *= 1.0 - 0.15 * t / duration_s
    out *= env

    peak = np.max(np.abs(out))
    if peak > 0:
        out *= 0.9 / peak
    return mono(_clip(out), sample_rate_hz)


def pitch_shift(buf: AudioBuffer, factor: float) -> AudioBuffer:
    """Resampling pitch shift: spectrum scales by factor, length by 1/factor.

    Duration changes with pitch by design; factor 1.0 returns a bit-exact
    copy.
    """
    lo, hi = PITCH_SHIFT_RANGE
    if not (lo <= factor <= hi):
        raise FactorOutOfRange(f"pitch factor must lie in [{lo}, {hi}], got {factor}")
    if buf.channels != 1:
        raise ValueError("pitch shift expects a mono buffer")
    x = buf.samples[0]
    if factor == 1.0:
        return mono(x.copy(), buf.sample_rate_hz)
    n_out = round(buf.n_samples / factor)
    positions = np.arange(n_out) * factor
    shifted = np.interp(positions, np.arange(buf.n_samples), x)
    return mono(_clip(shifted), buf.sample_rate_hz)


def apply_gain(buf: AudioBuffer, gain: float) -> AudioBuffer:
    """Scale every sample by gain, clamping the result to [-1, 1]."""
    if gain < 0 or not np.isfinite(gain):
        raise ValueError(f"gain must be finite and >= 0, got {gain}")
    return AudioBuffer(samples=_clip(buf.samples * gain), sample_rate_hz=buf.sample_rate_hz)


def apply_envelope(buf: AudioBuffer, attack_s: float, release_s: float) -> AudioBuffer:
    """Linear fade-in/fade-out; the first and last samples of a non-zero
    ramp are exactly 0.  attack == release == 0 is the identity."""
    if attack_s < 0 or release_s < 0:
        raise ValueError("attack and release must be >= 0")
    if attack_s + release_s > buf.duration_s + 1e-12:
        raise EnvelopeTooLong(
            f"attack {attack_s}s + release {release_s}s exceeds duration {buf.duration_s:.6f}s"
        )
    n = buf.n_samples
    env = np.ones(n)
    n_a = round(attack_s * buf.sample_rate_hz)
    n_r = round(release_s * buf.sample_rate_hz)
    if n_a > 0:
        env[:n_a] = np.arange(n_a) / n_a
    if n_r > 0:
        env[n - n_r:] = np.arange(n_r - 1, -1, -1) / n_r
    return AudioBuffer(samples=buf.samples * env, sample_rate_hz=buf.sample_rate_hz)


def fit_length(buf: AudioBuffer, n_samples: int) -> AudioBuffer:
    """Trim or loop a mono buffer to exactly n_samples."""
    if buf.channels != 1:
        raise ValueError("fit_length expects a mono buffer")
    x = buf.samples[0]
    if x.size == 0:
        return mono(np.zeros(n_samples), buf.sample_rate_hz)
    if x.size < n_samples:
        reps = -(-n_samples // x.size)
        x = np.tile(x, reps)
    return mono(x[:n_samples].copy(), buf.sample_rate_hz)


def realize_event(
    ev,
    voice: SampleBank | SurrogateVoiceParams,
    cfg,
    sample_rate_hz: int = DEFAULT_SAMPLE_RATE,
    seed: int = 0,
    attack_s: float = 0.01,
    release_s: float = 0.05,
) -> AudioBuffer:
    """Mono audio for one sound event.

    Sample-bank voices play bank[timbre_band] pitch-shifted by the event's
    factor and looped/trimmed to the event duration; the surrogate maps the
    band onto harshness in [0, 1].  Gain and an anti-click envelope are
    applied in both paths.
    """
    n_target = round(ev.duration_s * sample_rate_hz)
    if isinstance(voice, SampleBank):
        if ev.timbre_band >= len(voice):
            raise ValueError(
                f"timbre band {ev.timbre_band} outside the {len(voice)}-entry sample bank"
            )
        buf = pitch_shift(voice.buffers[ev.timbre_band], ev.pitch_factor)
        if buf.sample_rate_hz != sample_rate_hz:
            buf = resample(buf, sample_rate_hz)
        buf = fit_length(buf, n_target)
    else:
        harshness = ev.timbre_band / (cfg.n_bands - 1)
        buf = synth_scream(
            voice.with_harshness(min(1.0, harshness)),
            ev.pitch_factor,
            ev.duration_s,
            sample_rate_hz,
            seed=seed,
        )
    buf = apply_gain(buf, ev.gain)
    # Clamp the ramps for very short events rather than failing the render.
    max_ramp = 0.4 * buf.duration_s
    return apply_envelope(buf, min(attack_s, max_ramp), min(release_s, max_ramp))


def resample(buf: AudioBuffer, target_rate_hz: int) -> AudioBuffer:
    """Linear-interpolation resample of a mono buffer to a new rate."""
    if buf.channels != 1:
        raise ValueError("resample expects a mono buffer")
    if target_rate_hz == buf.sample_rate_hz:
        return buf
    n_out = round(buf.n_samples * target_rate_hz / buf.sample_rate_hz)
    positions = np.arange(n_out) * (buf.sample_rate_hz / target_rate_hz)
    x = np.interp(positions, np.arange(buf.n_samples), buf.samples[0])
    return mono(x, target_rate_hz)


def estimate_base_pitch(buf: AudioBuffer, lo_hz: float = 60.0, hi_hz: float = 2000.0) -> float:
    """Autocorrelation pitch estimate over the middle of the buffer; 0.0
    when no periodicity is found."""
    x = buf.samples[0]
    n = x.size
    if n < 256:
        return 0.0
    mid = x[n // 4: n // 4 + min(n // 2, buf.sample_rate_hz // 2)]
    mid = mid - np.mean(mid)
    if not np.any(mid):
        return 0.0
    ac = np.correlate(mid, mid, mode="full")[mid.size - 1:]
    lag_lo = max(1, int(buf.sample_rate_hz / hi_hz))
    lag_hi = min(mid.size - 1, int(buf.sample_rate_hz / lo_hz))
    if lag_hi <= lag_lo:
        return 0.0
    lag = lag_lo + int(np.argmax(ac[lag_lo:lag_hi]))
    if ac[lag] <= 0:
        return 0.0
    return buf.sample_rate_hz / lag


def _decode_pcm(raw: bytes, sampwidth: int, n_channels: int) -> np.ndarray:
    if sampwidth == 2:
        ints = np.frombuffer(raw, dtype="<i2").astype(np.float64)
        scale = float(2 ** 15)
    elif sampwidth == 3:
        b = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
        ints = (b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)).astype(np.int32)
        ints = np.where(ints >= 2 ** 23, ints - 2 ** 24, ints).astype(np.float64)
        scale = float(2 ** 23)
    else:
        raise UnreadableWav(f"unsupported sample width {8 * sampwidth} bits (expected 16 or 24)")
    frames = ints.reshape(-1, n_channels)
    return np.clip(frames / scale, -1.0, 1.0)


def read_wav(path: str | Path) -> AudioBuffer:
    """Read a PCM RIFF/WAVE file (16- or 24-bit, any channel count)."""
    try:
        with wave.open(str(path), "rb") as wf:
            n_channels = wf.getnchannels()
            sampwidth = wf.getsampwidth()
            rate = wf.getframerate()
            raw = wf.readframes(wf.getnframes())
    except (wave.Error, EOFError, OSError) as exc:
        raise UnreadableWav(f"{path}: {exc}") from exc
    frames = _decode_pcm(raw, sampwidth, n_channels)
    return AudioBuffer(samples=frames.T.copy(), sample_rate_hz=rate)


def load_sample_bank(
    directory_path: str | Path,
    expected_count: int = SAMPLE_BANK_SIZE,
    allow_resample: bool = True,
) -> SampleBank:
    """Load scream_0.wav .. scream_{expected_count-1}.wav as a bank.

    Stereo files are downmixed by channel mean.  Mixed sample rates are
    resampled to the highest rate present unless allow_resample is False.
    """
    directory = Path(directory_path)
    paths = [directory / f"scream_{i}.wav" for i in range(expected_count)]
    for i, p in enumerate(paths):
        if not p.exists():
            raise MissingSample(i)

    raw_buffers = [read_wav(p) for p in paths]
    mono_buffers = []
    for buf in raw_buffers:
        if buf.channels == 1:
            mono_buffers.append(buf)
        else:
            mono_buffers.append(mono(buf.samples.mean(axis=0), buf.sample_rate_hz))

    rates = {b.sample_rate_hz for b in mono_buffers}
    if len(rates) > 1:
        if not allow_resample:
            raise InconsistentSampleRate(f"sample rates differ across bank: {sorted(rates)}")
        target = max(rates)
        mono_buffers = [resample(b, target) for b in mono_buffers]

    pitches = tuple(estimate_base_pitch(b) for b in mono_buffers)
    return SampleBank(buffers=tuple(mono_buffers), base_pitch_hz=pitches)
