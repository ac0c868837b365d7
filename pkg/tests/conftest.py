from pathlib import Path

import numpy as np
import pytest

from ardlkit.frame import TimeSeriesFrame
from ardlkit.synthetic import ecm_system

TESTS_DIR = Path(__file__).resolve().parent
DATA_DIR = TESTS_DIR / "data"
GOLDEN_DIR = TESTS_DIR / "golden"
FIXTURE_CSV = DATA_DIR / "fixture.csv"
PIPELINE_CONFIG = DATA_DIR / "pipeline.json"


def make_frame(columns: dict, start_year: int = 1900) -> TimeSeriesFrame:
    n = len(next(iter(columns.values())))
    return TimeSeriesFrame(
        tuple(range(start_year, start_year + n)),
        {k: np.asarray(v, dtype=float) for k, v in columns.items()},
    )


@pytest.fixture
def coint_frame() -> TimeSeriesFrame:
    """A seeded bivariate cointegrated system, T = 200."""
    return make_frame(ecm_system(200, 7, beta=(2.0,), alpha=-0.3))
