"""Bundled reference tables.

Two datasets ship with the package. THEORETICAL_ROWS is the 7-row
theoretical timing table the cost model is fitted from and regenerates;
RECORDED_TIMINGS is a 14-run recorded comparison of the two loop forms
(milliseconds) that the statistics pipeline replays, together with the
efficiency column as originally reported at two decimals. Bundling them
keeps replay and golden outputs reproducible with no live measurement.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .cost_model import CostModel, fit_from_table

# (n, t_micro_s, t_traditional_s); n spans 6e4 .. 1e8 iterations.
THEORETICAL_ROWS: tuple[tuple[int, float, float], ...] = (
    (60_000, 0.001333333, 0.002233333),
    (70_000, 0.001555556, 0.002605556),
    (80_000, 0.001777778, 0.002977778),
    (1_000_000, 0.022222222, 0.037222222),
    (3_000_000, 0.066666667, 0.111666667),
    (5_000_000, 0.111111111, 0.186111111),
    (100_000_000, 2.222222222, 3.722222222),
)

# Differences (t_traditional - t_micro) as originally tabulated.
THEORETICAL_DIFFERENCES: tuple[float, ...] = (
    0.0009, 0.00105, 0.0012, 0.015, 0.045, 0.075, 1.5,
)

# (n, t_for_ms, t_micro_ms); n spans 5e7 .. 4e9 iterations.
RECORDED_TIMINGS: tuple[tuple[int, float, float], ...] = (
    (50_000_000, 140, 120),
    (100_000_000, 290, 250),
    (200_000_000, 590, 500),
    (300_000_000, 880, 750),
    (400_000_000, 1170, 1000),
    (500_000_000, 1460, 1270),
    (600_000_000, 1750, 1530),
    (700_000_000, 2040, 1780),
    (800_000_000, 2370, 2029),
    (900_000_000, 2660, 2300),
    (1_000_000_000, 2960, 2310),
    (2_000_000_000, 5330, 4757),
    (3_000_000_000, 5627, 5291),
    (4_000_000_000, 5537, 5271),
)

# The efficiency column as originally reported (two decimals).
RECORDED_EFFICIENCY_PCT: tuple[float, ...] = (
    14.28, 13.79, 15.25, 14.77, 14.53, 13.01, 12.57,
    12.74, 14.38, 13.53, 21.96, 10.75, 5.97, 4.80,
)


@lru_cache(maxsize=1)
def default_cost_model() -> CostModel:
    """Cost model fitted from the bundled theoretical table."""
    return fit_from_table(THEORETICAL_ROWS)


def data_path(name: str):
    """Path to a bundled data file (assembly fixtures, recorded CSV)."""
    return resources.files("microfor").joinpath("data", name)


def read_data_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")
