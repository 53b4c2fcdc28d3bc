"""Population incorporation and base-year normalization of crime series.

Raw counts are first adjusted for population change, assuming uniform
growth across the decade: year 2001 is untouched and years 2002..2012 are
reduced by 0.1x%, 0.2x%, ..., 1.0x%, 1.1x% respectively, where x is the
region's decadal percent growth.  Each series is then shifted so its 2001
value is exactly 0.  Both steps are pure functions; the adjustment always
precedes the normalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import (
    CrimeDataset,
    GrowthOutOfRange,
    GrowthTable,
    MissingRegion,
    N_CATEGORIES,
    N_REGIONS,
    N_YEARS,
    Series,
    YEARS,
    category_index,
    region_index,
    year_index,
)

# Fraction of the decadal growth attributed to each year: 0.0 for 2001,
# 0.1 for 2002, ... 1.0 for 2011, and 1.1 for 2012 (extrapolated one year
# past the census window).
ADJUSTMENT_FRACTIONS: tuple[float, ...] = tuple(k / 10.0 for k in range(N_YEARS))

SUBTRACTIVE = "subtractive"
PER_CAPITA = "per_capita"
ADJUSTMENT_MODES = (SUBTRACTIVE, PER_CAPITA)


def _check_growth(decadal_growth_percent: float, mode: str) -> None:
    x = decadal_growth_percent
    if not np.isfinite(x) or x <= -100.0:
        raise GrowthOutOfRange(f"growth percent must be finite and > -100, got {x}")
    worst = ADJUSTMENT_FRACTIONS[-1] * x / 100.0
    if mode == SUBTRACTIVE and 1.0 - worst <= 0.0:
        raise GrowthOutOfRange(
            f"growth {x}% would zero or negate counts by {YEARS[-1]} (factor {1.0 - worst:g})"
        )
    if mode == PER_CAPITA and 1.0 + worst <= 0.0:
        raise GrowthOutOfRange(
            f"growth {x}% gives a non-positive population factor by {YEARS[-1]}"
        )


def incorporate_population(
    s: Series, decadal_growth_percent: float, mode: str = SUBTRACTIVE
) -> Series:
    """Adjust one series for population change.

    subtractive (default): value * (1 - f*x/100), the literal reading of
    "reduced by f*x percent".  per_capita: value / (1 + f*x/100), a
    per-capita rate proxy.  f runs 0.0, 0.1, ..., 1.1 over 2001..2012.
    """
    if mode not in ADJUSTMENT_MODES:
        raise ValueError(f"adjustment mode must be one of {ADJUSTMENT_MODES}, got {mode!r}")
    _check_growth(decadal_growth_percent, mode)
    x = decadal_growth_percent
    if mode == SUBTRACTIVE:
        adjusted = tuple(
            v * (1.0 - f * x / 100.0) for v, f in zip(s.values, ADJUSTMENT_FRACTIONS)
        )
    else:
        adjusted = tuple(
            v / (1.0 + f * x / 100.0) for v, f in zip(s.values, ADJUSTMENT_FRACTIONS)
        )
    return Series(region=s.region, category=s.category, values=adjusted)


def normalize_base_year(s: Series) -> Series:
    """Subtract the 2001 value from every year; the result starts at exactly 0."""
    base = s.values[0]
    return Series(
        region=s.region,
        category=s.category,
        values=tuple(v - base for v in s.values),
    )


@dataclass(frozen=True, eq=False)
class ProcessedDataset:
    """Crime grid after population adjustment and base-year normalization.

    Same axes as CrimeDataset; values may be fractional and negative.
    """

    regions: tuple[str, ...]
    categories: tuple[str, ...]
    years: tuple[int, ...]
    values: np.ndarray  # shape (36, 9, 12), float64
    population_adjusted: bool
    normalized: bool

    def __post_init__(self):
        expected = (N_REGIONS, N_CATEGORIES, N_YEARS)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != {expected}")
        if not np.isfinite(self.values).all():
            raise ValueError("processed values must be finite")
        if self.normalized and not np.all(self.values[:, :, 0] == 0.0):
            raise ValueError("normalized dataset must start every series at 0")
        self.values.setflags(write=False)

    def value(self, region: str, category: str, year: int) -> float:
        return float(self.values[region_index(region), category_index(category), year_index(year)])

    def series(self, region: str, category: str) -> Series:
        r = region_index(region)
        c = category_index(category)
        return Series(
            region=self.regions[r],
            category=self.categories[c],
            values=tuple(float(v) for v in self.values[r, c, :]),
        )

    def slice_over_regions(self, category: str, year: int) -> np.ndarray:
        """All 36 region values for a fixed (category, year)."""
        return np.array(self.values[:, category_index(category), year_index(year)])

    def slice_over_categories(self, region: str, year: int) -> np.ndarray:
        """All 9 category values for a fixed (region, year)."""
        return np.array(self.values[region_index(region), :, year_index(year)])

    def slice_over_years(self, region: str, category: str) -> np.ndarray:
        """All 12 yearly values for a fixed (region, category)."""
        return np.array(self.values[region_index(region), category_index(category), :])


def preprocess_dataset(
    d: CrimeDataset, g: GrowthTable, mode: str = SUBTRACTIVE
) -> ProcessedDataset:
    """Adjust every (region, category) series for population, then normalize.

    Fails before touching any data if the growth table does not cover every
    region of the dataset or any growth value is out of range for the mode.
    """
    growths = {}
    for region in d.regions:
        growths[region] = g.growth_for(region)  # raises MissingRegion / UnknownRegion
        _check_growth(growths[region], mode)

    values = np.empty_like(d.counts)
    for r, region in enumerate(d.regions):
        for c, category in enumerate(d.categories):
            s = Series(region=region, category=category, values=tuple(map(float, d.counts[r, c, :])))
            s = normalize_base_year(incorporate_population(s, growths[region], mode))
            values[r, c, :] = s.values
    return ProcessedDataset(
        regions=d.regions,
        categories=d.categories,
        years=d.years,
        values=values,
        population_adjusted=True,
        normalized=True,
    )


__all__ = [
    "ADJUSTMENT_FRACTIONS",
    "ADJUSTMENT_MODES",
    "GrowthOutOfRange",
    "MissingRegion",
    "PER_CAPITA",
    "ProcessedDataset",
    "SUBTRACTIVE",
    "incorporate_population",
    "normalize_base_year",
    "preprocess_dataset",
]
