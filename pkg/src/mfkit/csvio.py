"""CSV ingestion and fixture emission.

Input schema: header-bearing CSV with an ISO-8601 date column and a closing
price column (defaults ``Date`` and ``Close``); column names and delimiter
are configurable to cover portal-export variants. Rows with an empty or
``null`` close are dropped and counted; anything else unparseable is an
error carrying the file path and line number.
"""

from __future__ import annotations

import csv
import datetime
from dataclasses import dataclass

import numpy as np

from .errors import IngestError, SeriesError
from .series import PriceSeries


@dataclass(frozen=True)
class IngestResult:
    """Parsed series plus the count of dropped (empty/null close) rows."""

    series: PriceSeries
    dropped_rows: int


def ingest_csv(
    path: str,
    instrument_id: str | None = None,
    date_col: str = "Date",
    close_col: str = "Close",
    delimiter: str = ",",
) -> IngestResult:
    """Read a price CSV into a validated series.

    ``instrument_id`` defaults to the file's stem. Raises ``IngestError`` on
    missing columns, unparseable values (with line number), fewer than two
    valid rows, or non-monotone dates.
    """
    import pathlib

    p = pathlib.Path(path)
    if instrument_id is None:
        instrument_id = p.stem
    dates: list[datetime.date] = []
    closes: list[float] = []
    dropped = 0
    try:
        handle = open(p, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"{path}: {exc.strerror or exc}") from exc
    with handle:
        reader = csv.DictReader(handle, delimiter=delimiter)
        if reader.fieldnames is None:
            raise IngestError(f"{path}: empty file, expected a header row")
        for col in (date_col, close_col):
            if col not in reader.fieldnames:
                raise IngestError(
                    f"{path}: missing column {col!r} (found {reader.fieldnames})"
                )
        for row in reader:
            line = reader.line_num
            raw_close = (row[close_col] or "").strip()
            if raw_close == "" or raw_close.lower() == "null":
                dropped += 1
                continue
            raw_date = (row[date_col] or "").strip()
            try:
                day = datetime.date.fromisoformat(raw_date)
            except ValueError as exc:
                raise IngestError(f"{path}:{line}: unparseable date {raw_date!r}") from exc
            try:
                close = float(raw_close)
            except ValueError as exc:
                raise IngestError(f"{path}:{line}: unparseable close {raw_close!r}") from exc
            dates.append(day)
            closes.append(close)
    if len(closes) < 2:
        raise IngestError(f"{path}: only {len(closes)} valid rows, need at least 2")
    try:
        series = PriceSeries(instrument_id, tuple(dates), np.array(closes))
    except SeriesError as exc:
        raise IngestError(f"{path}: {exc}") from exc
    return IngestResult(series, dropped)


def write_price_csv(
    path: str,
    dates,
    closes,
    date_col: str = "Date",
    close_col: str = "Close",
    delimiter: str = ",",
) -> None:
    """Write a price CSV in the ingestion schema, closes at full precision."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=delimiter)
        writer.writerow([date_col, close_col])
        for day, close in zip(dates, closes):
            writer.writerow([day.isoformat(), repr(float(close))])


def weekday_dates(start: datetime.date, count: int) -> list[datetime.date]:
    """``count`` consecutive weekdays beginning at ``start`` (rolled forward
    to Monday if it falls on a weekend)."""
    out: list[datetime.date] = []
    day = start
    while len(out) < count:
        if day.weekday() < 5:
            out.append(day)
        day += datetime.timedelta(days=1)
    return out


def prices_from_returns(values: np.ndarray, base_price: float = 100.0) -> np.ndarray:
    """Price path embedding the given log returns: P[0] = base, then
    P[t] = P[t-1] * exp(values[t-1])."""
    closes = np.empty(len(values) + 1)
    closes[0] = base_price
    closes[1:] = base_price * np.exp(np.cumsum(values))
    return closes
