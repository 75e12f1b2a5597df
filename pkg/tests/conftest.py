import datetime
import pathlib

import numpy as np
import pytest

from mfkit.series import PriceSeries

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def sample_fund_csv() -> pathlib.Path:
    return FIXTURES / "sample_fund.csv"


def make_prices(closes, instrument_id="test", start=datetime.date(2020, 1, 1)):
    """Price series over consecutive calendar days (weekends included, which
    the types do not care about)."""
    dates = tuple(start + datetime.timedelta(days=i) for i in range(len(closes)))
    return PriceSeries(instrument_id, dates, np.asarray(closes, dtype=float))
