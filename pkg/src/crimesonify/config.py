"""JSON configuration for the service and CLI.

Top-level keys: crime_csv, growth_csv, sample_bank_dir, mapping, spatial,
bind_addr, audio_ttl_s.  The mapping object carries the MappingConfig
fields plus adjustment_mode.  spatial is "stereo" or {"ring": n}.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .dataset import bundled_crime_csv_path, bundled_growth_csv_path
from .mapping import MappingConfig
from .preprocess import ADJUSTMENT_MODES, SUBTRACTIVE
from .spatial import SpatialConfig

CONFIG_ENV_VAR = "SONIFY_CONFIG"

_MAPPING_KEYS = {
    "n_bands",
    "pitch_factor_range",
    "gain_range",
    "event_duration_s",
    "inter_event_gap_s",
    "adjustment_mode",
}
_TOP_KEYS = {
    "crime_csv",
    "growth_csv",
    "sample_bank_dir",
    "mapping",
    "spatial",
    "bind_addr",
    "audio_ttl_s",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AppConfig:
    crime_csv: Path = field(default_factory=bundled_crime_csv_path)
    growth_csv: Path = field(default_factory=bundled_growth_csv_path)
    sample_bank_dir: Path | None = None
    mapping: MappingConfig = field(default_factory=MappingConfig)
    adjustment_mode: str = SUBTRACTIVE
    spatial: SpatialConfig = field(default_factory=SpatialConfig.stereo)
    bind_addr: str = "127.0.0.1:8765"
    audio_ttl_s: float = 600.0

    def __post_init__(self):
        if self.adjustment_mode not in ADJUSTMENT_MODES:
            raise ConfigError(
                f"adjustment_mode must be one of {ADJUSTMENT_MODES}, got {self.adjustment_mode!r}"
            )
        if self.audio_ttl_s <= 0:
            raise ConfigError("audio_ttl_s must be positive")
        host, _, port = self.bind_addr.rpartition(":")
        if not host or not port.isdigit() or not 0 < int(port) < 65536:
            raise ConfigError(f"bind_addr must look like host:port, got {self.bind_addr!r}")

    @property
    def bind_host(self) -> str:
        return self.bind_addr.rpartition(":")[0]

    @property
    def bind_port(self) -> int:
        return int(self.bind_addr.rpartition(":")[2])

    def as_json_dict(self) -> dict:
        """Round-trippable echo of the effective configuration."""
        spatial = "stereo" if self.spatial.kind == "stereo" else {"ring": self.spatial.channels}
        return {
            "crime_csv": str(self.crime_csv),
            "growth_csv": str(self.growth_csv),
            "sample_bank_dir": str(self.sample_bank_dir) if self.sample_bank_dir else None,
            "mapping": {
                "n_bands": self.mapping.n_bands,
                "pitch_factor_range": list(self.mapping.pitch_factor_range),
                "gain_range": list(self.mapping.gain_range),
                "event_duration_s": self.mapping.event_duration_s,
                "inter_event_gap_s": self.mapping.inter_event_gap_s,
                "adjustment_mode": self.adjustment_mode,
            },
            "spatial": spatial,
            "bind_addr": self.bind_addr,
            "audio_ttl_s": self.audio_ttl_s,
        }


def _parse_pair(value, key: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{key} must be a [lo, hi] pair")
    return float(value[0]), float(value[1])


def _parse_mapping(raw: dict) -> tuple[MappingConfig, str]:
    unknown = set(raw) - _MAPPING_KEYS
    if unknown:
        raise ConfigError(f"unknown mapping keys: {sorted(unknown)}")
    defaults = MappingConfig()
    try:
        mapping = MappingConfig(
            n_bands=int(raw.get("n_bands", defaults.n_bands)),
            pitch_factor_range=_parse_pair(
                raw.get("pitch_factor_range", defaults.pitch_factor_range), "pitch_factor_range"
            ),
            gain_range=_parse_pair(raw.get("gain_range", defaults.gain_range), "gain_range"),
            event_duration_s=float(raw.get("event_duration_s", defaults.event_duration_s)),
            inter_event_gap_s=float(raw.get("inter_event_gap_s", defaults.inter_event_gap_s)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad mapping config: {exc}") from exc
    return mapping, str(raw.get("adjustment_mode", SUBTRACTIVE))


def _parse_spatial(raw) -> SpatialConfig:
    if raw == "stereo":
        return SpatialConfig.stereo()
    if isinstance(raw, dict) and set(raw) == {"ring"}:
        try:
            return SpatialConfig.ring(int(raw["ring"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad ring size: {exc}") from exc
    raise ConfigError(f'spatial must be "stereo" or {{"ring": n}}, got {raw!r}')


def config_from_dict(raw: dict, base_dir: Path | None = None) -> AppConfig:
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    def resolve(key: str, default: Path | None) -> Path | None:
        value = raw.get(key)
        if value is None:
            return default
        path = Path(value)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return path

    mapping, adjustment_mode = _parse_mapping(raw.get("mapping", {}))
    spatial = _parse_spatial(raw.get("spatial", "stereo"))
    try:
        return AppConfig(
            crime_csv=resolve("crime_csv", bundled_crime_csv_path()),
            growth_csv=resolve("growth_csv", bundled_growth_csv_path()),
            sample_bank_dir=resolve("sample_bank_dir", None),
            mapping=mapping,
            adjustment_mode=adjustment_mode,
            spatial=spatial,
            bind_addr=str(raw.get("bind_addr", AppConfig.bind_addr)),
            audio_ttl_s=float(raw.get("audio_ttl_s", AppConfig.audio_ttl_s)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> AppConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return config_from_dict(raw, base_dir=path.parent)


def default_config_path() -> Path | None:
    """Config path from the environment, if set."""
    value = os.environ.get(CONFIG_ENV_VAR)
    return Path(value) if value else None
