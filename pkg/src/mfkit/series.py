"""Core time-series types: dated price series, log returns, shuffling.

Price observations are immutable once constructed; every transform returns a
new object, so values can be shared freely across threads.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field

import numpy as np

from .errors import SeriesError

#: Minimum number of return observations for a series to enter the analysis.
DEFAULT_MIN_LENGTH = 700


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PriceSeries:
    """Daily closing prices of one instrument, strictly ordered by date.

    Invariants enforced on construction: dates strictly increasing (duplicates
    are a hard error, never silently dropped), every close > 0, length >= 2.
    """

    instrument_id: str
    dates: tuple[datetime.date, ...]
    closes: np.ndarray = field(repr=False)

    def __post_init__(self):
        closes = _readonly(np.asarray(self.closes, dtype=np.float64))
        object.__setattr__(self, "closes", closes)
        object.__setattr__(self, "dates", tuple(self.dates))
        if len(self.dates) != closes.size:
            raise SeriesError(
                f"{self.instrument_id}: {len(self.dates)} dates but {closes.size} closes"
            )
        if closes.size < 2:
            raise SeriesError(f"{self.instrument_id}: need at least 2 observations")
        if not np.all(np.isfinite(closes)):
            raise SeriesError(f"{self.instrument_id}: non-finite close value")
        bad = np.nonzero(closes <= 0.0)[0]
        if bad.size:
            raise SeriesError(
                f"{self.instrument_id}: non-positive close {closes[bad[0]]!r} "
                f"on {self.dates[bad[0]].isoformat()}"
            )
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur == prev:
                raise SeriesError(f"{self.instrument_id}: duplicate date {cur.isoformat()}")
            if cur < prev:
                raise SeriesError(
                    f"{self.instrument_id}: dates out of order "
                    f"({prev.isoformat()} followed by {cur.isoformat()})"
                )

    def __len__(self) -> int:
        return self.closes.size


@dataclass(frozen=True)
class ReturnSeries:
    """Dimensionless log returns derived from a price series.

    ``source_length`` records the number of price observations the returns
    were derived from; by construction ``len(values) == source_length - 1``.
    """

    instrument_id: str
    values: np.ndarray = field(repr=False)
    source_length: int = 0

    def __post_init__(self):
        values = _readonly(np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, "values", values)
        if self.source_length == 0:
            object.__setattr__(self, "source_length", values.size + 1)
        if values.size != self.source_length - 1:
            raise SeriesError(
                f"{self.instrument_id}: {values.size} returns inconsistent with "
                f"source_length={self.source_length}"
            )
        if not np.all(np.isfinite(values)):
            raise SeriesError(f"{self.instrument_id}: non-finite return value")

    def __len__(self) -> int:
        return self.values.size


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """Logarithmic returns between consecutive closes.

    values[t] = ln(close[t+1]) - ln(close[t]), natural log. Returns between
    consecutive available observations; missing calendar days are not imputed.
    """
    values = np.diff(np.log(prices.closes))
    return ReturnSeries(prices.instrument_id, values, source_length=len(prices))


def admit_series(returns: ReturnSeries, min_length: int = DEFAULT_MIN_LENGTH) -> bool:
    """True iff the return series is long enough to analyze."""
    return len(returns) >= min_length


def shuffle(returns: ReturnSeries, seed: int) -> ReturnSeries:
    """Uniformly random permutation of the return values, reproducible per seed.

    Fisher-Yates over indices, driven by a PCG64 generator. The value multiset
    (hence mean and variance) is preserved exactly; only the temporal order is
    destroyed.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    idx = rng.permutation(len(returns))
    return ReturnSeries(
        returns.instrument_id, returns.values[idx], source_length=returns.source_length
    )
