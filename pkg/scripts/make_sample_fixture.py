"""Regenerate tests/fixtures/sample_fund.csv.

A deterministic 2779-row daily price fixture spanning 2013-11-04 to
2024-11-19: all weekdays in that window minus pseudo-holidays drawn with a
fixed seed (trading calendars skip holidays, so the row count is below the
weekday count). Prices follow a gentle geometric random walk.
"""

import datetime
import pathlib

import numpy as np

from mfkit.csvio import write_price_csv

ROWS = 2779
START = datetime.date(2013, 11, 4)
END = datetime.date(2024, 11, 19)
SEED = 20131104


def weekday_span(start: datetime.date, end: datetime.date):
    day = start
    while day <= end:
        if day.weekday() < 5:
            yield day
        day += datetime.timedelta(days=1)


def main() -> None:
    days = list(weekday_span(START, END))
    assert days[0] == START and days[-1] == END
    rng = np.random.default_rng(SEED)
    surplus = len(days) - ROWS
    assert surplus >= 0, f"window holds only {len(days)} weekdays"
    # drop interior pseudo-holidays, keeping both endpoints
    drop = set(rng.choice(np.arange(1, len(days) - 1), size=surplus, replace=False).tolist())
    dates = [d for i, d in enumerate(days) if i not in drop]
    assert len(dates) == ROWS

    steps = 0.00005 + 0.002 * rng.standard_normal(ROWS - 1)
    closes = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))

    out = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "sample_fund.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_price_csv(out, dates, closes)
    print(f"wrote {ROWS} rows to {out}")


if __name__ == "__main__":
    main()
