import math

import numpy as np
import pytest

from mfkit.errors import SynthError
from mfkit.synth import (
    CascadeSpec,
    FgnSpec,
    binomial_cascade,
    cascade_hurst,
    fgn_autocovariance,
    fractional_gaussian_noise,
    white_noise,
)


class TestCascadeOracle:
    def test_monofractal_limit_a_half(self):
        q = np.linspace(-10, 10, 41)
        h = cascade_hurst(0.5, q)
        assert np.allclose(h, 1.0, rtol=0, atol=1e-12)

    def test_known_value_at_q2(self):
        # 1/2 - ln(0.75^2 + 0.25^2) / (2 ln 2), evaluated by hand
        assert cascade_hurst(0.75, 2.0) == pytest.approx(0.8390359525563189, abs=1e-14)

    def test_q_zero_limit(self):
        expect = -math.log(0.75 * 0.25) / (2 * math.log(2))
        assert cascade_hurst(0.75, 0.0) == pytest.approx(expect, abs=1e-14)
        assert cascade_hurst(0.75, 0.0) == pytest.approx(1.207518749639422, abs=1e-12)
        # formula is continuous through 0
        assert cascade_hurst(0.75, 1e-7) == pytest.approx(cascade_hurst(0.75, 0.0), abs=1e-6)

    def test_strictly_decreasing_in_q(self):
        q = np.linspace(-10, 10, 81)
        h = cascade_hurst(0.75, q)
        assert np.all(np.diff(h) < 0)
        assert cascade_hurst(0.75, -10.0) > cascade_hurst(0.75, 10.0)


class TestBinomialCascade:
    def test_mass_conservation(self):
        for seed in (None, 1, 2):
            w = binomial_cascade(CascadeSpec(0.75, 10), seed=seed)
            assert w.values.sum() == pytest.approx(1.0, rel=1e-9)

    def test_length_is_dyadic(self):
        w = binomial_cascade(CascadeSpec(0.6, 9))
        assert len(w) == 512

    def test_deterministic_per_seed(self):
        a = binomial_cascade(CascadeSpec(0.75, 10), seed=5)
        b = binomial_cascade(CascadeSpec(0.75, 10), seed=5)
        assert np.array_equal(a.values, b.values)

    def test_fixed_order_values(self):
        # unseeded cascade sends fraction a left everywhere
        w = binomial_cascade(CascadeSpec(0.75, 8))
        assert w.values[0] == pytest.approx(0.75**8, rel=1e-12)
        assert w.values[-1] == pytest.approx(0.25**8, rel=1e-12)

    def test_spec_validation(self):
        with pytest.raises(SynthError):
            CascadeSpec(0.5, 10)
        with pytest.raises(SynthError):
            CascadeSpec(1.0, 10)
        with pytest.raises(SynthError):
            CascadeSpec(0.75, 7)


class TestFgn:
    def test_autocovariance_white_limit(self):
        gamma = fgn_autocovariance(0.5, np.arange(6))
        assert gamma[0] == pytest.approx(1.0, abs=1e-15)
        assert np.allclose(gamma[1:], 0.0, atol=1e-15)

    def test_autocovariance_signs(self):
        # 0.5 * (2^{2H} - 2) at lag 1, evaluated by hand
        assert fgn_autocovariance(0.8, [1])[0] == pytest.approx(0.5157165665103982, abs=1e-14)
        assert fgn_autocovariance(0.2, [1])[0] == pytest.approx(-0.3402460446135529, abs=1e-14)
        assert fgn_autocovariance(0.8, [1])[0] > 0
        assert fgn_autocovariance(0.2, [1])[0] < 0

    def test_sample_autocovariance_matches_theory(self):
        h, n, n_seeds = 0.8, 4096, 50
        lags = np.arange(6)
        gamma = fgn_autocovariance(h, lags)
        acov = np.empty((n_seeds, lags.size))
        for s in range(n_seeds):
            x = fractional_gaussian_noise(FgnSpec(h, n, seed=s)).values
            for l in lags:
                acov[s, l] = np.mean(x[: n - l] * x[l:])
        mean = acov.mean(axis=0)
        se = acov.std(axis=0, ddof=1) / np.sqrt(n_seeds)
        assert np.all(np.abs(mean - gamma) <= 3.0 * se)

    def test_h_half_matches_white_noise_variance(self):
        # variance-ratio check: H=0.5 fGn is white
        ratios = []
        for seed in range(20):
            f = fractional_gaussian_noise(FgnSpec(0.5, 2048, seed=seed)).values
            w = white_noise(2048, seed=seed).values
            ratios.append(f.var() / w.var())
        assert np.mean(ratios) == pytest.approx(1.0, abs=0.1)

    def test_deterministic(self):
        a = fractional_gaussian_noise(FgnSpec(0.7, 256, seed=9)).values
        b = fractional_gaussian_noise(FgnSpec(0.7, 256, seed=9)).values
        assert np.array_equal(a, b)

    def test_spec_validation(self):
        with pytest.raises(SynthError):
            FgnSpec(0.0, 100)
        with pytest.raises(SynthError):
            FgnSpec(1.0, 100)


class TestWhiteNoise:
    def test_reproducible_first_element(self):
        assert white_noise(10, seed=7).values[0] == pytest.approx(
            0.0012301533574825742, abs=1e-15
        )

    def test_sample_moments(self):
        x = white_noise(100_000, seed=3).values
        assert abs(x.mean()) <= 0.02
        assert abs(x.var() - 1.0) <= 0.02

    def test_minimum_length(self):
        with pytest.raises(SynthError):
            white_noise(1, seed=0)
