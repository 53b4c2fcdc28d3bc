"""End-to-end render orchestration shared by the CLI and the HTTP service.

A Workspace holds the loaded tables, the preprocessed grid, and the voice.
Render helpers turn a user selection into (plan, WAV bytes); both entry
points go through them, so a given request renders to identical bytes
everywhere.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from . import dataset as ds
from .config import AppConfig
from .mapping import SonificationPlan, build_comparative_plan, build_sequential_plan
from .preprocess import ProcessedDataset, preprocess_dataset
from .spatial import graph_points, render_plan, write_wav
from .synth import SampleBank, SurrogateVoiceParams, load_sample_bank


class SelectionError(ValueError):
    """A request names an impossible or unknown selection."""


@dataclass(frozen=True)
class Workspace:
    config: AppConfig
    dataset: ds.CrimeDataset
    growth: ds.GrowthTable
    processed: ProcessedDataset
    voice: SampleBank | SurrogateVoiceParams


def load_workspace(config: AppConfig | None = None) -> Workspace:
    """Load and validate both tables, preprocess once, pick the voice."""
    config = config or AppConfig()
    dataset = ds.load_crime_table(config.crime_csv)
    growth = ds.load_growth_table(config.growth_csv)
    processed = preprocess_dataset(dataset, growth, mode=config.adjustment_mode)
    if config.sample_bank_dir is not None:
        voice: SampleBank | SurrogateVoiceParams = load_sample_bank(config.sample_bank_dir)
    else:
        voice = SurrogateVoiceParams()
    return Workspace(config=config, dataset=dataset, growth=growth, processed=processed, voice=voice)


@dataclass(frozen=True)
class RenderResult:
    plan: SonificationPlan
    wav_bytes: bytes
    graph: list[tuple[str, float]]


def render_sequential(ws: Workspace, region: str, category: str, mode: str) -> RenderResult:
    """Render the twelve-year plan for one (region, category)."""
    series = ws.processed.series(region, category)  # raises UnknownRegion/Category
    plan = build_sequential_plan(series, mode, ws.config.mapping)
    buf = render_plan(plan, ws.voice, ws.config.mapping, ws.config.spatial)
    return RenderResult(plan=plan, wav_bytes=write_wav(buf), graph=graph_points(plan))


COMPARE_KINDS = ("region", "category", "year")


def _validate_comparative(fixed: dict, compare: list) -> tuple[str, dict]:
    if not isinstance(fixed, dict) or not isinstance(compare, (list, tuple)):
        raise SelectionError("fixed must be an object and compare a two-item list")
    unknown = set(fixed) - set(COMPARE_KINDS)
    if unknown:
        raise SelectionError(f"unknown fixed variables: {sorted(unknown)}")
    if len(fixed) != 2:
        raise SelectionError(f"exactly two variables must be fixed, got {len(fixed)}")
    if len(compare) != 2:
        raise SelectionError(f"exactly two cases must be compared, got {len(compare)}")
    (free,) = set(COMPARE_KINDS) - set(fixed)
    return free, dict(fixed)


def _as_year(value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ds.UnknownYear(value) from None


@dataclass(frozen=True)
class ComparativeResult:
    plan: SonificationPlan
    wav_bytes: bytes
    values: tuple[float, float]
    labels: tuple[str, str]
    louder: str  # "a" | "b" | "equal"


def render_comparative(ws: Workspace, fixed: dict, compare: list) -> ComparativeResult:
    """Render two cases of the free variable against shared bounds.

    Bounds come from the full processed slice for the fixed variables, so
    identical selections always sound identical regardless of the pair.
    """
    free, fixed = _validate_comparative(fixed, compare)
    p = ws.processed

    if free == "year":
        region, category = str(fixed["region"]), str(fixed["category"])
        years = [_as_year(v) for v in compare]
        values = [p.value(region, category, y) for y in years]
        context = p.slice_over_years(region, category)
        labels = [str(y) for y in years]
    elif free == "category":
        region, year = str(fixed["region"]), _as_year(fixed["year"])
        categories = [str(v) for v in compare]
        values = [p.value(region, c, year) for c in categories]
        context = p.slice_over_categories(region, year)
        labels = categories
    else:
        category, year = str(fixed["category"]), _as_year(fixed["year"])
        regions = [str(v) for v in compare]
        values = [p.value(r, category, year) for r in regions]
        context = p.slice_over_regions(category, year)
        labels = regions

    bounds = (float(context.min()), float(context.max()))
    plan = build_comparative_plan(values[0], values[1], labels[0], labels[1], bounds, ws.config.mapping)
    buf = render_plan(plan, ws.voice, ws.config.mapping, ws.config.spatial)
    if values[0] > values[1]:
        louder = "a"
    elif values[0] < values[1]:
        louder = "b"
    else:
        louder = "equal"
    return ComparativeResult(
        plan=plan,
        wav_bytes=write_wav(buf),
        values=(values[0], values[1]),
        labels=(labels[0], labels[1]),
        louder=louder,
    )


def request_token(kind: str, payload: dict, config: AppConfig) -> str:
    """Stable opaque id for a render request under a given configuration."""
    blob = json.dumps(
        {"kind": kind, "payload": payload, "config": config.as_json_dict()},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:24]
