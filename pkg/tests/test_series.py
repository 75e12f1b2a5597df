import datetime
import math

import numpy as np
import pytest

from mfkit.errors import SeriesError
from mfkit.series import PriceSeries, ReturnSeries, admit_series, log_returns, shuffle

from conftest import make_prices


class TestPriceSeries:
    def test_rejects_non_positive_close_naming_date(self):
        with pytest.raises(SeriesError, match="2020-01-03"):
            make_prices([100.0, 101.0, -2.0, 99.0])
        with pytest.raises(SeriesError, match="non-positive"):
            make_prices([100.0, 0.0])

    def test_rejects_short_series(self):
        with pytest.raises(SeriesError, match="at least 2"):
            make_prices([100.0])

    def test_rejects_duplicate_dates(self):
        d = datetime.date(2020, 1, 1)
        with pytest.raises(SeriesError, match="duplicate date"):
            PriceSeries("dup", (d, d), np.array([1.0, 2.0]))

    def test_rejects_out_of_order_dates(self):
        d1 = datetime.date(2020, 1, 2)
        d2 = datetime.date(2020, 1, 1)
        with pytest.raises(SeriesError, match="out of order"):
            PriceSeries("ooo", (d1, d2), np.array([1.0, 2.0]))

    def test_immutable_closes(self):
        p = make_prices([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            p.closes[0] = 5.0


class TestLogReturns:
    def test_constant_prices_give_zero_returns(self):
        r = log_returns(make_prices([100.0, 100.0, 100.0]))
        assert np.array_equal(r.values, [0.0, 0.0])
        assert r.source_length == 3

    def test_exponential_prices_give_unit_returns(self):
        e = math.e
        r = log_returns(make_prices([1.0, e, e * e]))
        assert np.allclose(r.values, [1.0, 1.0], atol=1e-12, rtol=0)

    def test_hand_computed_values(self):
        # ln(105/100) and ln(99.75/105) evaluated independently
        r = log_returns(make_prices([100.0, 105.0, 99.75]))
        assert r.values[0] == pytest.approx(0.04879016416943205, abs=1e-12)
        assert r.values[1] == pytest.approx(-0.05129329438755058, abs=1e-12)

    def test_geometric_sequence_constant_return(self):
        g = 1.017
        closes = 50.0 * g ** np.arange(40)
        r = log_returns(make_prices(closes))
        assert np.allclose(r.values, math.log(g), rtol=0, atol=1e-12)

    def test_telescoping_sum(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            closes = np.exp(rng.normal(4.5, 0.3, size=200))
            r = log_returns(make_prices(closes))
            expect = math.log(closes[-1]) - math.log(closes[0])
            assert r.values.sum() == pytest.approx(expect, rel=1e-10)


class TestAdmission:
    def test_below_threshold(self):
        r = ReturnSeries("x", np.zeros(699))
        assert admit_series(r, 700) is False

    def test_at_threshold(self):
        r = ReturnSeries("x", np.zeros(700))
        assert admit_series(r, 700) is True

    def test_default_threshold_is_700(self):
        assert admit_series(ReturnSeries("x", np.zeros(700))) is True
        assert admit_series(ReturnSeries("x", np.zeros(699))) is False


class TestShuffle:
    def test_single_element(self):
        r = ReturnSeries("x", np.array([0.7]))
        assert np.array_equal(shuffle(r, 3).values, [0.7])

    def test_preserves_multiset(self):
        rng = np.random.default_rng(0)
        v = rng.normal(size=500)
        r = ReturnSeries("x", v)
        for seed in (0, 1, 99):
            s = shuffle(r, seed)
            assert np.array_equal(np.sort(s.values), np.sort(v))

    def test_deterministic_per_seed(self):
        r = ReturnSeries("x", np.random.default_rng(1).normal(size=100))
        a = shuffle(r, 7)
        b = shuffle(r, 7)
        assert np.array_equal(a.values, b.values)
        c = shuffle(r, 8)
        assert not np.array_equal(a.values, c.values)

    def test_mean_and_variance_preserved(self):
        v = np.random.default_rng(2).normal(size=300)
        r = ReturnSeries("x", v)
        s = shuffle(r, 11)
        assert s.values.mean() == pytest.approx(v.mean(), abs=1e-12)
        assert s.values.var() == pytest.approx(v.var(), rel=1e-12)

    def test_keeps_source_length(self):
        r = ReturnSeries("x", np.arange(10.0), source_length=11)
        assert shuffle(r, 0).source_length == 11
