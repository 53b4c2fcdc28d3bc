"""Crime table and population-growth table: loading, validation, queries.

The crime table is a dense 36 x 9 x 12 grid of case counts keyed by
(region, crime category, year).  The growth table maps each region to its
decadal percent population growth over 2001-2011.  Both are immutable after
load and safe to share across threads.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

# Canonical grid: 28 states + 7 union territories + the national aggregate,
# the nine offence heads tracked by the national records for 2001-2012, and
# the twelve calendar years covered by the published tables.
REGIONS: tuple[str, ...] = (
    "Andhra Pradesh",
    "Arunachal Pradesh",
    "Assam",
    "Bihar",
    "Chhattisgarh",
    "Goa",
    "Gujarat",
    "Haryana",
    "Himachal Pradesh",
    "Jammu & Kashmir",
    "Jharkhand",
    "Karnataka",
    "Kerala",
    "Madhya Pradesh",
    "Maharashtra",
    "Manipur",
    "Meghalaya",
    "Mizoram",
    "Nagaland",
    "Odisha",
    "Punjab",
    "Rajasthan",
    "Sikkim",
    "Tamil Nadu",
    "Tripura",
    "Uttar Pradesh",
    "Uttarakhand",
    "West Bengal",
    "Andaman & Nicobar Islands",
    "Chandigarh",
    "Dadra & Nagar Haveli",
    "Daman & Diu",
    "Delhi",
    "Lakshadweep",
    "Puducherry",
    "All India",
)

CATEGORIES: tuple[str, ...] = (
    "Rape",
    "Kidnapping & Abduction",
    "Dowry Deaths",
    "Assault on Women with Intent to Outrage her Modesty",
    "Insult to the Modesty of Women",
    "Cruelty by Husband or Relatives",
    "Immoral Traffic",
    "Indecent Representation of Women",
    "Total Crimes Against Women",
)

YEARS: tuple[int, ...] = tuple(range(2001, 2013))

N_REGIONS = len(REGIONS)
N_CATEGORIES = len(CATEGORIES)
N_YEARS = len(YEARS)

CRIME_CSV_HEADER = ("region", "category", "year", "count")
GROWTH_CSV_HEADER = ("region", "decadal_growth_percent")


class DatasetError(ValueError):
    """Base class for all data-loading and lookup failures."""


class BadHeader(DatasetError):
    pass


class MissingCell(DatasetError):
    def __init__(self, region: str, category: str, year: int):
        self.region, self.category, self.year = region, category, year
        super().__init__(f"missing cell ({region!r}, {category!r}, {year})")


class NegativeCount(DatasetError):
    pass


class NonNumericCount(DatasetError):
    pass


class DuplicateKey(DatasetError):
    pass


class UnknownRegion(DatasetError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown region {name!r}")


class UnknownCategory(DatasetError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown category {name!r}")


class UnknownYear(DatasetError):
    def __init__(self, year):
        self.year = year
        super().__init__(f"year {year!r} outside {YEARS[0]}..{YEARS[-1]}")


class MissingRegion(DatasetError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"growth table has no entry for region {name!r}")


class NonNumericGrowth(DatasetError):
    pass


class GrowthOutOfRange(DatasetError):
    """Growth percent outside the range the adjustment can absorb."""


def _norm(name: str) -> str:
    # Names match case-insensitively after trimming; no fuzzy matching.
    return name.strip().casefold()


_REGION_INDEX = {_norm(r): i for i, r in enumerate(REGIONS)}
_CATEGORY_INDEX = {_norm(c): i for i, c in enumerate(CATEGORIES)}


def region_index(name: str) -> int:
    try:
        return _REGION_INDEX[_norm(name)]
    except KeyError:
        raise UnknownRegion(name) from None


def category_index(name: str) -> int:
    try:
        return _CATEGORY_INDEX[_norm(name)]
    except KeyError:
        raise UnknownCategory(name) from None


def year_index(year: int) -> int:
    if year not in YEARS:
        raise UnknownYear(year)
    return year - YEARS[0]


@dataclass(frozen=True)
class Series:
    """Twelve yearly values for one (region, category), years ascending."""

    region: str
    category: str
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != N_YEARS:
            raise ValueError(f"series must have {N_YEARS} values, got {len(self.values)}")
        if not all(np.isfinite(v) for v in self.values):
            raise ValueError("series values must be finite")


@dataclass(frozen=True, eq=False)
class CrimeDataset:
    """Raw case counts on the canonical (region, category, year) grid."""

    regions: tuple[str, ...]
    categories: tuple[str, ...]
    years: tuple[int, ...]
    counts: np.ndarray  # shape (36, 9, 12), float64, finite, >= 0

    def __post_init__(self):
        if self.regions != REGIONS or self.categories != CATEGORIES or self.years != YEARS:
            raise DatasetError("dataset axes do not match the canonical grid")
        expected = (N_REGIONS, N_CATEGORIES, N_YEARS)
        if self.counts.shape != expected:
            raise DatasetError(f"counts shape {self.counts.shape} != {expected}")
        if not np.isfinite(self.counts).all():
            raise NonNumericCount("counts contain non-finite values")
        if (self.counts < 0).any():
            raise NegativeCount("counts contain negative values")
        self.counts.setflags(write=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrimeDataset):
            return NotImplemented
        return (
            self.regions == other.regions
            and self.categories == other.categories
            and self.years == other.years
            and np.array_equal(self.counts, other.counts)
        )

    def count(self, region: str, category: str, year: int) -> float:
        return float(self.counts[region_index(region), category_index(category), year_index(year)])

    def series(self, region: str, category: str) -> Series:
        return series(self, region, category)


def series(dataset: CrimeDataset, region: str, category: str) -> Series:
    """The 12 yearly values for (region, category) in ascending year order."""
    r = region_index(region)
    c = category_index(category)
    return Series(
        region=dataset.regions[r],
        category=dataset.categories[c],
        values=tuple(float(v) for v in dataset.counts[r, c, :]),
    )


@dataclass(frozen=True)
class GrowthTable:
    """Decadal percent population growth (2001-2011) per region."""

    growth_by_region: dict[str, float] = field(repr=False)

    def __post_init__(self):
        missing = [r for r in REGIONS if _norm(r) not in {_norm(k) for k in self.growth_by_region}]
        if missing:
            raise MissingRegion(missing[0])
        for name, value in self.growth_by_region.items():
            if not np.isfinite(value):
                raise NonNumericGrowth(f"growth for {name!r} is not finite")
            if value <= -100.0:
                raise GrowthOutOfRange(f"growth for {name!r} must be > -100, got {value}")

    def growth_for(self, region: str) -> float:
        idx = region_index(region)  # validates the name
        canonical = REGIONS[idx]
        for name, value in self.growth_by_region.items():
            if _norm(name) == _norm(canonical):
                return float(value)
        raise MissingRegion(canonical)


def _read_rows(csv_text: str, expected_header: tuple[str, ...]) -> list[list[str]]:
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise BadHeader("empty file") from None
    got = tuple(h.strip().casefold() for h in header)
    if got != expected_header:
        raise BadHeader(f"expected header {','.join(expected_header)!r}, got {','.join(got)!r}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(expected_header):
            raise BadHeader(f"line {lineno}: expected {len(expected_header)} columns, got {len(row)}")
        rows.append(row)
    return rows


def parse_crime_table(csv_text: str) -> CrimeDataset:
    """Parse the long-format crime CSV (header region,category,year,count).

    Every (region, category, year) cell of the canonical grid must appear
    exactly once.  Counts are parsed as reals and must be finite and >= 0.
    """
    counts = np.full((N_REGIONS, N_CATEGORIES, N_YEARS), np.nan)
    for row in _read_rows(csv_text, CRIME_CSV_HEADER):
        region_s, category_s, year_s, count_s = (cell.strip() for cell in row)
        r = region_index(region_s)
        c = category_index(category_s)
        try:
            year = int(year_s)
        except ValueError:
            raise UnknownYear(year_s) from None
        k = year_index(year)
        try:
            value = float(count_s)
        except ValueError:
            raise NonNumericCount(f"count {count_s!r} for ({region_s}, {category_s}, {year})") from None
        if not np.isfinite(value):
            raise NonNumericCount(f"count {count_s!r} for ({region_s}, {category_s}, {year})")
        if value < 0:
            raise NegativeCount(f"count {value} for ({region_s}, {category_s}, {year})")
        if not np.isnan(counts[r, c, k]):
            raise DuplicateKey(f"duplicate cell ({region_s}, {category_s}, {year})")
        counts[r, c, k] = value

    holes = np.argwhere(np.isnan(counts))
    if holes.size:
        r, c, k = holes[0]
        raise MissingCell(REGIONS[r], CATEGORIES[c], YEARS[k])
    return CrimeDataset(regions=REGIONS, categories=CATEGORIES, years=YEARS, counts=counts)


def serialize_crime_table(dataset: CrimeDataset) -> str:
    """Inverse of parse_crime_table: canonical row order, round-trip exact."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CRIME_CSV_HEADER)
    for r, region in enumerate(dataset.regions):
        for c, category in enumerate(dataset.categories):
            for k, year in enumerate(dataset.years):
                value = dataset.counts[r, c, k]
                # repr() keeps the shortest digit string that parses back exactly
                text = repr(int(value)) if float(value).is_integer() else repr(float(value))
                writer.writerow([region, category, year, text])
    return out.getvalue()


def parse_growth_table(csv_text: str) -> GrowthTable:
    """Parse the two-column growth CSV (header region,decadal_growth_percent)."""
    growth: dict[str, float] = {}
    for row in _read_rows(csv_text, GROWTH_CSV_HEADER):
        region_s, growth_s = (cell.strip() for cell in row)
        idx = region_index(region_s)
        canonical = REGIONS[idx]
        if canonical in growth:
            raise DuplicateKey(f"duplicate growth entry for {canonical!r}")
        try:
            value = float(growth_s)
        except ValueError:
            raise NonNumericGrowth(f"growth {growth_s!r} for {region_s!r}") from None
        growth[canonical] = value
    return GrowthTable(growth_by_region=growth)


def bundled_crime_csv_path() -> Path:
    """Path of the crime fixture shipped with the package.

    A file named crime_ncrb.csv (a transcription of the official records)
    takes precedence when present; otherwise the synthetic stand-in is used.
    """
    data_dir = resources.files("crimesonify") / "data"
    real = Path(str(data_dir / "crime_ncrb.csv"))
    if real.exists():
        return real
    return Path(str(data_dir / "crime_synthetic.csv"))


def bundled_crime_csv_is_real() -> bool:
    """True only when a transcription of the official records is bundled."""
    return bundled_crime_csv_path().name == "crime_ncrb.csv"


def bundled_growth_csv_path() -> Path:
    return Path(str(resources.files("crimesonify") / "data" / "growth_decadal_2001_2011.csv"))


def load_crime_table(path: str | Path) -> CrimeDataset:
    return parse_crime_table(Path(path).read_text(encoding="utf-8"))


def load_growth_table(path: str | Path) -> GrowthTable:
    return parse_growth_table(Path(path).read_text(encoding="utf-8"))
