import datetime as dt

import numpy as np
import pytest

from pubgrowth.series import DailySeries

START = dt.date(2020, 3, 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20200301)


def make_series(values, kind="increments", start=START):
    return DailySeries(start, np.asarray(values, dtype=float), kind)
