"""Synthetic series with analytically known scaling, used as test oracles.

Three generators:

* binomial multiplicative cascade, whose generalized Hurst exponents are
  known in closed form (``cascade_hurst``),
* exact fractional Gaussian noise via circulant embedding (Davies-Harte),
* i.i.d. standard Gaussian white noise.

All generators are deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SynthError
from .series import ReturnSeries

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class CascadeSpec:
    """Binomial cascade parameters: multiplier fraction and dyadic depth."""

    multiplier_a: float
    levels: int

    def __post_init__(self):
        if not 0.5 < self.multiplier_a < 1.0:
            raise SynthError(f"cascade multiplier must be in (0.5, 1), got {self.multiplier_a}")
        if self.levels < 8:
            raise SynthError(f"cascade needs levels >= 8, got {self.levels}")


@dataclass(frozen=True)
class FgnSpec:
    """Fractional Gaussian noise parameters."""

    hurst_h: float
    length: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.hurst_h < 1.0:
            raise SynthError(f"Hurst exponent must be in (0, 1), got {self.hurst_h}")
        if self.length < 2:
            raise SynthError(f"fGn length must be >= 2, got {self.length}")


def cascade_hurst(a: float, q) -> np.ndarray | float:
    """Closed-form generalized Hurst exponent of the binomial cascade.

    h(q) = 1/q - ln(a^q + (1-a)^q) / (q ln 2) for q != 0; the q -> 0 limit is
    -ln(a(1-a)) / (2 ln 2). Derived from the generalized mean of the two
    multipliers over the dyadic hierarchy.
    """
    qa = np.asarray(q, dtype=np.float64)
    out = np.empty_like(qa)
    nz = qa != 0.0
    qnz = qa[nz]
    out[nz] = 1.0 / qnz - np.log(a**qnz + (1.0 - a) ** qnz) / (qnz * _LN2)
    out[~nz] = -np.log(a * (1.0 - a)) / (2.0 * _LN2)
    return out if out.ndim else float(out)


def binomial_cascade(spec: CascadeSpec, seed: int | None = None) -> ReturnSeries:
    """Dyadic multiplicative cascade of length 2**levels.

    A unit mass is split level by level; each cell passes fraction ``a`` to
    one child and ``1 - a`` to the other. With ``seed=None`` the larger share
    always goes to the left child; with a seed the side is drawn per cell.
    The series sums to 1 (mass conservation) and is consumed directly as
    analysis input, since the fluctuation profile mean-centers it anyway.
    """
    a = spec.multiplier_a
    rng = None if seed is None else np.random.default_rng(seed)
    w = np.array([1.0])
    for _ in range(spec.levels):
        if rng is None:
            left = np.full(w.size, a)
        else:
            left = np.where(rng.integers(0, 2, size=w.size) == 0, a, 1.0 - a)
        nxt = np.empty(2 * w.size)
        nxt[0::2] = w * left
        nxt[1::2] = w * (1.0 - left)
        w = nxt
    name = f"cascade-a{a:g}-L{spec.levels}" + ("" if seed is None else f"-s{seed}")
    return ReturnSeries(name, w)


def fgn_autocovariance(hurst_h: float, lags) -> np.ndarray:
    """Exact autocovariance of unit-variance fGn: 0.5(|k+1|^2H - 2|k|^2H + |k-1|^2H)."""
    k = np.abs(np.asarray(lags, dtype=np.float64))
    two_h = 2.0 * hurst_h
    return 0.5 * ((k + 1.0) ** two_h - 2.0 * k**two_h + np.abs(k - 1.0) ** two_h)


def fractional_gaussian_noise(spec: FgnSpec) -> ReturnSeries:
    """Exact stationary fGn sample by circulant embedding.

    Embeds the length-N covariance in a 2N circulant matrix whose eigenvalues
    are the FFT of the folded autocovariance; a Hermitian complex Gaussian
    vector scaled by sqrt(eigenvalues) transforms back to a real sample with
    exactly the target covariance. Eigenvalues are mathematically nonnegative
    for fGn; a guard rejects embeddings that lose that property numerically.
    """
    n = spec.length
    gamma = fgn_autocovariance(spec.hurst_h, np.arange(n + 1))
    row = np.concatenate([gamma, gamma[-2:0:-1]])  # circulant first row, length 2n
    lam = np.fft.fft(row).real
    if lam.min() < -1e-8 * lam.max():
        raise SynthError(
            f"circulant embedding not nonnegative definite (min eigenvalue {lam.min():g})"
        )
    lam = np.maximum(lam, 0.0)

    rng = np.random.default_rng(spec.seed)
    xi = rng.standard_normal(n + 1)
    eta = rng.standard_normal(n - 1)
    m = 2 * n
    spec_vec = np.empty(m, dtype=np.complex128)
    spec_vec[0] = np.sqrt(lam[0]) * xi[0]
    spec_vec[n] = np.sqrt(lam[n]) * xi[n]
    spec_vec[1:n] = np.sqrt(lam[1:n] / 2.0) * (xi[1:n] + 1j * eta)
    spec_vec[n + 1 :] = np.conj(spec_vec[1:n][::-1])
    sample = (np.fft.fft(spec_vec) / np.sqrt(m)).real[:n]
    return ReturnSeries(f"fgn-H{spec.hurst_h:g}-N{n}-s{spec.seed}", sample)


def white_noise(length: int, seed: int = 0) -> ReturnSeries:
    """i.i.d. standard Gaussian draws, deterministic per seed."""
    if length < 2:
        raise SynthError(f"white noise length must be >= 2, got {length}")
    values = np.random.default_rng(seed).standard_normal(length)
    return ReturnSeries(f"white-N{length}-s{seed}", values)
