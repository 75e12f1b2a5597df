import datetime

import numpy as np
import pytest

from mfkit.csvio import ingest_csv, prices_from_returns, weekday_dates, write_price_csv
from mfkit.errors import IngestError
from mfkit.series import admit_series, log_returns


def write(tmp_path, text, name="fund.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestIngest:
    def test_minimal_two_row_file(self, tmp_path):
        p = write(tmp_path, "Date,Close\n2013-11-04,100\n2013-11-05,101\n")
        result = ingest_csv(p)
        assert len(result.series) == 2
        assert result.series.instrument_id == "fund"
        assert result.dropped_rows == 0
        assert result.series.dates[0] == datetime.date(2013, 11, 4)

    def test_null_and_empty_closes_dropped_with_count(self, tmp_path):
        rows = [f"2020-01-{d:02d},{100 + d}" for d in range(1, 11)]
        rows[4] = "2020-01-05,null"
        p = write(tmp_path, "Date,Close\n" + "\n".join(rows) + "\n")
        result = ingest_csv(p)
        assert len(result.series) == 9
        assert result.dropped_rows == 1

        rows[4] = "2020-01-05,"
        p = write(tmp_path, "Date,Close\n" + "\n".join(rows) + "\n")
        assert ingest_csv(p).dropped_rows == 1

    def test_unparseable_date_reports_line(self, tmp_path):
        p = write(tmp_path, "Date,Close\n2020-01-01,100\nnot-a-date,101\n")
        with pytest.raises(IngestError, match=r":3: unparseable date"):
            ingest_csv(p)

    def test_unparseable_close_reports_line(self, tmp_path):
        p = write(tmp_path, "Date,Close\n2020-01-01,100\n2020-01-02,abc\n")
        with pytest.raises(IngestError, match=r":3: unparseable close"):
            ingest_csv(p)

    def test_fewer_than_two_rows(self, tmp_path):
        p = write(tmp_path, "Date,Close\n2020-01-01,100\n")
        with pytest.raises(IngestError, match="need at least 2"):
            ingest_csv(p)

    def test_non_monotone_dates_name_the_pair(self, tmp_path):
        p = write(
            tmp_path,
            "Date,Close\n2020-01-01,100\n2020-01-05,101\n2020-01-03,102\n",
        )
        with pytest.raises(IngestError, match="2020-01-05.*2020-01-03"):
            ingest_csv(p)

    def test_duplicate_dates_hard_error(self, tmp_path):
        p = write(tmp_path, "Date,Close\n2020-01-01,100\n2020-01-01,101\n")
        with pytest.raises(IngestError, match="duplicate"):
            ingest_csv(p)

    def test_missing_column(self, tmp_path):
        p = write(tmp_path, "Day,Close\n2020-01-01,100\n")
        with pytest.raises(IngestError, match="missing column 'Date'"):
            ingest_csv(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestError):
            ingest_csv(tmp_path / "nope.csv")

    def test_custom_schema(self, tmp_path):
        p = write(tmp_path, "day;px\n2020-01-01;100\n2020-01-02;101\n")
        result = ingest_csv(p, date_col="day", close_col="px", delimiter=";")
        assert len(result.series) == 2

    def test_bundled_fixture_admitted(self, sample_fund_csv):
        result = ingest_csv(sample_fund_csv)
        assert len(result.series) == 2779
        assert result.series.dates[0] == datetime.date(2013, 11, 4)
        assert result.series.dates[-1] == datetime.date(2024, 11, 19)
        returns = log_returns(result.series)
        assert admit_series(returns) is True


class TestRoundTrip:
    def test_emit_then_ingest_full_precision(self, tmp_path):
        rng = np.random.default_rng(17)
        closes = np.exp(rng.normal(4.6, 0.2, size=50))
        dates = weekday_dates(datetime.date(2019, 3, 1), 50)
        p = tmp_path / "rt.csv"
        write_price_csv(p, dates, closes)
        result = ingest_csv(p)
        assert np.array_equal(result.series.closes, closes)
        assert result.series.dates == tuple(dates)

    def test_prices_embed_returns(self):
        rng = np.random.default_rng(18)
        values = rng.normal(0, 0.01, size=99)
        closes = prices_from_returns(values, base_price=100.0)
        assert closes.shape == (100,)
        recovered = np.diff(np.log(closes))
        assert np.allclose(recovered, values, rtol=0, atol=1e-12)


class TestWeekdayDates:
    def test_skips_weekends(self):
        days = weekday_dates(datetime.date(2024, 1, 5), 4)  # a Friday
        assert [d.isoformat() for d in days] == [
            "2024-01-05",
            "2024-01-08",
            "2024-01-09",
            "2024-01-10",
        ]

    def test_weekend_start_rolls_forward(self):
        days = weekday_dates(datetime.date(2024, 1, 6), 2)  # a Saturday
        assert days[0].isoformat() == "2024-01-08"
