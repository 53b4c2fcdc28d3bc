"""Sonification toolkit for Indian crime-against-women statistics.

Pipeline: load the crime and population-growth tables, adjust counts for
population change and normalize each series to its 2001 value, map values
to sound parameters (pitch, gain, timbre band), synthesize scream-like
events, and mix them into spatialized multichannel WAV renditions.  An
HTTP service and CLI expose the same deterministic render path.
"""

from .config import AppConfig, load_config
from .dataset import (
    CATEGORIES,
    REGIONS,
    YEARS,
    CrimeDataset,
    GrowthTable,
    Series,
    load_crime_table,
    load_growth_table,
    parse_crime_table,
    parse_growth_table,
    serialize_crime_table,
    series,
)
from .mapping import (
    MappingConfig,
    PlanMode,
    SonificationPlan,
    SoundEvent,
    band_quantize,
    build_comparative_plan,
    build_sequential_plan,
    map_gain,
    map_pitch_factor,
    series_bounds,
)
from .pipeline import Workspace, load_workspace, render_comparative, render_sequential
from .preprocess import (
    ProcessedDataset,
    incorporate_population,
    normalize_base_year,
    preprocess_dataset,
)
from .spatial import SpatialConfig, graph_points, pan_gains, render_plan, write_wav
from .synth import (
    AudioBuffer,
    SampleBank,
    SurrogateVoiceParams,
    apply_envelope,
    apply_gain,
    load_sample_bank,
    pitch_shift,
    synth_scream,
)

__version__ = "0.1.0"
