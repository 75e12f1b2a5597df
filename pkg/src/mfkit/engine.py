"""Multifractal detrended fluctuation analysis of a return series.

The analysis runs in four stages:

1. ``profile``: cumulative sum of the mean-centered series.
2. Segmentation of the profile into non-overlapping windows of length n.
   By default segments are taken both from the start (forward pass) and
   aligned to the end (trailing pass), so 2 * floor(N/n) segments per scale
   and no tail data is discarded; ``bidirectional=False`` restores the
   forward-only variant.
3. Local polynomial detrending of each segment and the q-order fluctuation
   function F_q(n): the generalized (q-order) mean of the per-segment
   residual variances. q = 0 uses the logarithmic-mean limit.
4. ``hurst_exponents``: the slope of ln F_q(n) against ln n per q.

Detrending projects each segment onto an orthonormal polynomial basis built
on the index rescaled to [-1, 1]; the per-segment projection loop is the
hot kernel (see ``kernels``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import EngineError
from .kernels import segment_variances
from .series import ReturnSeries

#: Variance floor applied to degenerate (zero-variance) segments so that
#: negative-q moments stay finite. Floored segments are counted in the result.
VARIANCE_FLOOR = 1e-24


@dataclass(frozen=True)
class QGrid:
    """Strictly increasing grid of moment orders. q = 0 is allowed and is
    routed to the logarithmic-limit formula of the fluctuation function."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        if v.size < 1:
            raise EngineError("q grid is empty")
        if not np.all(np.diff(v) > 0):
            raise EngineError("q grid must be strictly increasing")

    @classmethod
    def regular(cls, q_min: float = -10.0, q_max: float = 10.0, q_step: float = 0.5) -> "QGrid":
        if not q_min < q_max:
            raise EngineError(f"need q_min < q_max, got {q_min} >= {q_max}")
        if q_step <= 0:
            raise EngineError(f"q_step must be positive, got {q_step}")
        count = int(round((q_max - q_min) / q_step)) + 1
        return cls(np.linspace(q_min, q_max, count))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ScaleGrid:
    """Strictly increasing segment lengths (in samples).

    The smallest scale must leave the detrending regression overdetermined
    (n >= order + 2) and the largest must keep at least 4 segments per
    direction (n <= floor(N/4)); both are checked against the series in
    ``fluctuation_function``.
    """

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.int64)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        if v.size < 1:
            raise EngineError("scale grid is empty")
        if v[0] < 2:
            raise EngineError("scales must be >= 2 samples")
        if not np.all(np.diff(v) > 0):
            raise EngineError("scale grid must be strictly increasing")

    @classmethod
    def logarithmic(
        cls, n_samples: int, n_min: int = 10, divisor: int = 4, count: int = 20
    ) -> "ScaleGrid":
        """About ``count`` scales, log-spaced between n_min and floor(N/divisor)."""
        n_max = n_samples // divisor
        if n_max <= n_min:
            raise EngineError(
                f"series of {n_samples} samples leaves no room for scales "
                f"between {n_min} and N/{divisor}"
            )
        grid = np.unique(np.rint(np.geomspace(n_min, n_max, count)).astype(np.int64))
        return cls(grid)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class DetrendConfig:
    """Order of the local polynomial fitted within each segment (default 2)."""

    polynomial_order: int = 2

    def __post_init__(self):
        if self.polynomial_order < 0:
            raise EngineError(f"polynomial order must be >= 0, got {self.polynomial_order}")


@dataclass(frozen=True)
class FluctuationSurface:
    """F_q(n) over the scale and q grids, plus degenerate-segment diagnostics."""

    scales: ScaleGrid
    qs: QGrid
    f: np.ndarray = field(repr=False)  # shape (len(qs), len(scales)), entries > 0
    floored_segments: int = 0
    total_segments: int = 0

    def __post_init__(self):
        f = np.ascontiguousarray(self.f, dtype=np.float64)
        f.flags.writeable = False
        object.__setattr__(self, "f", f)
        if f.shape != (len(self.qs), len(self.scales)):
            raise EngineError(f"surface shape {f.shape} does not match grids")


@dataclass(frozen=True)
class HurstCurve:
    """Generalized Hurst exponents h(q) with regression standard errors."""

    qs: QGrid
    h: np.ndarray = field(repr=False)
    stderr: np.ndarray = field(repr=False)
    fit_range: tuple[int, int] = (0, 0)

    def __post_init__(self):
        if self.h.shape != (len(self.qs),) or self.stderr.shape != (len(self.qs),):
            raise EngineError("h(q) length does not match the q grid")

    @property
    def hurst(self) -> float | None:
        """h evaluated at q = 2, the classical Hurst exponent, if q = 2 is on the grid."""
        hits = np.nonzero(self.qs.values == 2.0)[0]
        return float(self.h[hits[0]]) if hits.size else None


@lru_cache(maxsize=256)
def _poly_basis(length: int, order: int) -> np.ndarray:
    """Orthonormal basis of polynomials up to ``order`` on the segment index.

    Index is rescaled to [-1, 1] before the QR factorization so the basis is
    well conditioned at any segment length.
    """
    t = np.linspace(-1.0, 1.0, length)
    vand = np.vander(t, order + 1, increasing=True)
    q, _ = np.linalg.qr(vand)
    q = np.ascontiguousarray(q)
    q.flags.writeable = False
    return q


def profile(x: ReturnSeries | np.ndarray) -> np.ndarray:
    """Cumulative sum of the mean-centered series (stage 1).

    The last element is 0 up to rounding because mean-centering telescopes.
    """
    values = np.asarray(getattr(x, "values", x), dtype=np.float64)
    if values.size < 2:
        raise EngineError("profile needs at least 2 samples")
    return np.cumsum(values - values.mean())


def segment_count(n_samples: int, scale: int) -> int:
    """Number of non-overlapping segments per direction: floor(N/n)."""
    if not 1 <= scale <= n_samples:
        raise EngineError(f"scale {scale} out of range for {n_samples} samples")
    return n_samples // scale


def detrend_segment(segment: np.ndarray, order: int) -> np.ndarray:
    """Residuals of the least-squares polynomial of degree ``order`` on the
    sample index. The segment must be overdetermined (length >= order + 2)."""
    seg = np.ascontiguousarray(segment, dtype=np.float64)
    if seg.size < order + 2:
        raise EngineError(
            f"segment of {seg.size} samples cannot support polynomial order {order}"
        )
    basis = _poly_basis(seg.size, order)
    return seg - basis @ (basis.T @ seg)


def fluctuation_function(
    prof: np.ndarray,
    scales: ScaleGrid,
    qs: QGrid,
    cfg: DetrendConfig = DetrendConfig(),
    bidirectional: bool = True,
) -> FluctuationSurface:
    """q-order fluctuation function over the scale grid (stages 2 and 3).

    For q != 0, F_q(n) = [mean over segments of (sigma_i^2)^(q/2)]^(1/q) with
    sigma_i^2 the mean squared detrending residual of segment i; for q = 0,
    F_0(n) = exp(mean(ln sigma_i^2) / 2). Moments are evaluated in log space
    (log-sum-exp) so extreme q cannot overflow; per-scale summation order is
    fixed, making results deterministic.
    """
    prof = np.ascontiguousarray(prof, dtype=np.float64)
    n_samples = prof.size
    order = cfg.polynomial_order
    smin, smax = int(scales.values[0]), int(scales.values[-1])
    if smin < order + 2:
        raise EngineError(f"minimum scale {smin} underdetermined for order {order}")
    if smax > n_samples // 4:
        raise EngineError(
            f"maximum scale {smax} exceeds floor(N/4) = {n_samples // 4} for this series"
        )

    qv = qs.values
    f = np.empty((qv.size, len(scales)))
    floored = 0
    total = 0
    for j, scale in enumerate(scales.values):
        basis = _poly_basis(int(scale), order)
        var = segment_variances(prof, int(scale), basis, bidirectional)
        total += var.size
        low = var < VARIANCE_FLOOR
        if low.any():
            floored += int(low.sum())
            var = np.maximum(var, VARIANCE_FLOOR)
        log_var = np.log(var)
        mean_log = log_var.mean()
        for i, q in enumerate(qv):
            if q == 0.0:
                ln_f = 0.5 * mean_log
            else:
                t = (0.5 * q) * log_var
                peak = t.max()
                ln_f = (peak + np.log(np.mean(np.exp(t - peak)))) / q
            f[i, j] = np.exp(ln_f)
    return FluctuationSurface(scales, qs, f, floored_segments=floored, total_segments=total)


def hurst_exponents(
    surface: FluctuationSurface, fit_range: tuple[int, int] | None = None
) -> HurstCurve:
    """Generalized Hurst exponents (stage 4).

    Ordinary least-squares slope of ln F_q(n) on ln n, restricted to scales
    within ``fit_range`` (inclusive, in samples; defaults to the whole grid),
    with the regression standard error of the slope. At least 4 scales must
    fall in the range.
    """
    sv = surface.scales.values
    if fit_range is None:
        fit_range = (int(sv[0]), int(sv[-1]))
    n_lo, n_hi = fit_range
    mask = (sv >= n_lo) & (sv <= n_hi)
    k = int(mask.sum())
    if k < 4:
        raise EngineError(f"fit range {fit_range} covers only {k} scales, need >= 4")

    x = np.log(sv[mask].astype(np.float64))
    xc = x - x.mean()
    sxx = float(xc @ xc)
    h = np.empty(len(surface.qs))
    stderr = np.empty(len(surface.qs))
    for i in range(len(surface.qs)):
        y = np.log(surface.f[i, mask])
        slope = float(xc @ (y - y.mean())) / sxx
        resid = y - y.mean() - slope * xc
        ssr = float(resid @ resid)
        stderr[i] = np.sqrt(ssr / (k - 2) / sxx) if k > 2 else 0.0
        h[i] = slope
    return HurstCurve(surface.qs, h, stderr, fit_range=(int(n_lo), int(n_hi)))
