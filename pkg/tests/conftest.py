from __future__ import annotations

import numpy as np
import pytest

from crimesonify.config import AppConfig
from crimesonify.dataset import (
    CATEGORIES,
    REGIONS,
    YEARS,
    load_crime_table,
    load_growth_table,
    bundled_crime_csv_path,
    bundled_growth_csv_path,
)
from crimesonify.pipeline import load_workspace
from crimesonify.preprocess import preprocess_dataset


def cell_value(r: int, c: int, k: int) -> int:
    # Deterministic, distinct-ish values for handmade fixtures.
    return (r * 37 + c * 11 + k * 3) % 500 + r + 1


def make_crime_rows() -> list[list]:
    rows = []
    for r, region in enumerate(REGIONS):
        for c, category in enumerate(CATEGORIES):
            for k, year in enumerate(YEARS):
                rows.append([region, category, year, cell_value(r, c, k)])
    return rows


def rows_to_csv(rows: list[list], header: str = "region,category,year,count") -> str:
    lines = [header]
    lines += [",".join(f'"{cell}"' if "," in str(cell) else str(cell) for cell in row) for row in rows]
    return "\n".join(lines) + "\n"


def make_crime_csv() -> str:
    return rows_to_csv(make_crime_rows())


def make_growth_csv(overrides: dict[str, float] | None = None, drop: str | None = None) -> str:
    overrides = overrides or {}
    lines = ["region,decadal_growth_percent"]
    for i, region in enumerate(REGIONS):
        if drop and region == drop:
            continue
        growth = overrides.get(region, 5.0 + i)
        name = f'"{region}"' if "," in region else region
        lines.append(f"{name},{growth}")
    return "\n".join(lines) + "\n"


@pytest.fixture(scope="session")
def bundled_dataset():
    return load_crime_table(bundled_crime_csv_path())


@pytest.fixture(scope="session")
def bundled_growth():
    return load_growth_table(bundled_growth_csv_path())


@pytest.fixture(scope="session")
def bundled_processed(bundled_dataset, bundled_growth):
    return preprocess_dataset(bundled_dataset, bundled_growth)


@pytest.fixture(scope="session")
def workspace():
    return load_workspace(AppConfig())


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
