#!/usr/bin/env python3
"""Regenerate the bundled synthetic crime fixture.

The official 2001-2012 tables are not redistributable inside this repo, so
the bundled fixture is synthetic: deterministic, full 36x9x12 coverage,
with magnitudes and aggregate trajectories shaped to look like the real
records (the national total grows ~70% over the window; West Bengal grows
close to fivefold; several eastern and north-eastern regions more than
double).  Drop a real transcription at src/crimesonify/data/crime_ncrb.csv
to replace it at load time.

Usage: python scripts/gen_synthetic_crime_csv.py
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from crimesonify.dataset import CATEGORIES, REGIONS, YEARS  # noqa: E402

OUT_PATH = Path(__file__).resolve().parents[1] / "src" / "crimesonify" / "data" / "crime_synthetic.csv"

SEED = 20010901

# (total crimes in 2001, ratio of 2012 to 2001) per region.  West Bengal is
# pinned near 4.9x; the set of >2x regions mirrors the states that more
# than doubled in the real records; the rest are tuned so the national
# aggregate lands close to 1.70x.
PROFILE: dict[str, tuple[float, float]] = {
    "Andhra Pradesh": (16000, 1.28),
    "Arunachal Pradesh": (120, 2.30),
    "Assam": (5900, 2.35),
    "Bihar": (5200, 2.30),
    "Chhattisgarh": (3600, 1.30),
    "Goa": (240, 1.60),
    "Gujarat": (5500, 1.35),
    "Haryana": (3300, 1.75),
    "Himachal Pradesh": (900, 1.30),
    "Jammu & Kashmir": (1900, 1.50),
    "Jharkhand": (2500, 2.40),
    "Karnataka": (5800, 1.45),
    "Kerala": (7000, 1.75),
    "Madhya Pradesh": (13500, 1.15),
    "Maharashtra": (12500, 1.28),
    "Manipur": (180, 2.20),
    "Meghalaya": (210, 2.60),
    "Mizoram": (160, 2.40),
    "Nagaland": (40, 2.10),
    "Odisha": (4800, 2.20),
    "Punjab": (2600, 1.60),
    "Rajasthan": (11000, 1.45),
    "Sikkim": (35, 2.50),
    "Tamil Nadu": (6500, 0.92),
    "Tripura": (650, 2.30),
    "Uttar Pradesh": (7500, 1.40),
    "Uttarakhand": (800, 1.60),
    "West Bengal": (6300, 4.90),
    "Andaman & Nicobar Islands": (85, 1.30),
    "Chandigarh": (130, 1.50),
    "Dadra & Nagar Haveli": (28, 1.80),
    "Daman & Diu": (20, 1.60),
    "Delhi": (4200, 2.35),
    "Lakshadweep": (4, 1.00),
    "Puducherry": (90, 1.40),
}

# Share of the total attributed to each offence head (national-looking mix;
# per-region shares get a deterministic tilt around these).
CATEGORY_SHARES = {
    "Rape": 0.11,
    "Kidnapping & Abduction": 0.13,
    "Dowry Deaths": 0.04,
    "Assault on Women with Intent to Outrage her Modesty": 0.20,
    "Insult to the Modesty of Women": 0.05,
    "Cruelty by Husband or Relatives": 0.41,
    "Immoral Traffic": 0.045,
    "Indecent Representation of Women": 0.005,
}

N_YEARS = len(YEARS)


def total_series(base: float, ratio: float, rng: np.random.Generator) -> np.ndarray:
    """Geometric path from base to base*ratio with a mild wiggle; both ends exact."""
    ks = np.arange(N_YEARS)
    path = base * ratio ** (ks / (N_YEARS - 1))
    wiggle = 1.0 + rng.uniform(-0.04, 0.04, size=N_YEARS)
    wiggle[0] = wiggle[-1] = 1.0
    return path * wiggle


def main() -> None:
    rng = np.random.default_rng(SEED)
    state_regions = [r for r in REGIONS if r != "All India"]
    offence_heads = [c for c in CATEGORIES if c != "Total Crimes Against Women"]

    counts: dict[tuple[str, str], np.ndarray] = {}
    for region in state_regions:
        base, ratio = PROFILE[region]
        totals = total_series(base, ratio, rng)
        shares = np.array([CATEGORY_SHARES[c] for c in offence_heads])
        tilt = 1.0 + rng.uniform(-0.25, 0.25, size=shares.size)
        shares = shares * tilt / np.sum(shares * tilt)
        region_rows = np.zeros((len(offence_heads), N_YEARS), dtype=np.int64)
        for ci, category in enumerate(offence_heads):
            drift = 1.0 + rng.uniform(-0.06, 0.06, size=N_YEARS)
            region_rows[ci] = np.maximum(0, np.round(totals * shares[ci] * drift)).astype(np.int64)
        for ci, category in enumerate(offence_heads):
            counts[(region, category)] = region_rows[ci]
        counts[(region, "Total Crimes Against Women")] = region_rows.sum(axis=0)

    for category in CATEGORIES:
        counts[("All India", category)] = sum(counts[(region, category)] for region in state_regions)

    national = counts[("All India", "Total Crimes Against Women")]
    national_ratio = national[-1] / national[0]
    wb = counts[("West Bengal", "Total Crimes Against Women")]
    wb_ratio = wb[-1] / wb[0]
    assert 1.65 <= national_ratio <= 1.75, f"national ratio {national_ratio:.3f} off target"
    assert 4.5 <= wb_ratio <= 5.3, f"West Bengal ratio {wb_ratio:.3f} off target"
    assert np.all(np.diff(wb) > 0), "West Bengal total must rise strictly"

    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT_PATH, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["region", "category", "year", "count"])
        for region in REGIONS:
            for category in CATEGORIES:
                for k, year in enumerate(YEARS):
                    writer.writerow([region, category, year, int(counts[(region, category)][k])])
    print(f"wrote {OUT_PATH}")
    print(f"national 2012/2001 ratio: {national_ratio:.4f}")
    print(f"West Bengal 2012/2001 ratio: {wb_ratio:.4f}")


if __name__ == "__main__":
    main()
