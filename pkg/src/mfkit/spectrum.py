"""Mass exponents, singularity spectrum, and the quartic complexity fit.

The mass exponent tau(q) comes in two conventions, selected by
``TauConvention``:

* ``QH``: tau(q) = q h(q) (default),
* ``PARTITION``: tau(q) = q h(q) - 1, the partition-function form.

Switching conventions shifts the spectrum f(alpha) by exactly the constant 1
and leaves alpha(q) unchanged, so the reported parameters (alpha0, width W,
skew r) are convention-invariant: the quartic roots defining the spectrum
support are taken at the level that corresponds to f = 0 in the partition
frame (i.e. at f = -1 under ``QH``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .engine import HurstCurve, QGrid
from .errors import SpectrumFitError

#: Half-width of the band around r = 1 classified as symmetric.
SKEW_TOLERANCE = 0.05

#: Maximum distance from alpha0 scanned for the spectrum support roots.
ROOT_SCAN_LIMIT = 5.0
ROOT_SCAN_STEP = 0.01


class TauConvention(enum.Enum):
    QH = "qh"
    PARTITION = "partition"

    @property
    def root_level(self) -> float:
        """f level whose crossings define the spectrum support."""
        return -1.0 if self is TauConvention.QH else 0.0


@dataclass(frozen=True)
class TauCurve:
    """Mass exponent tau(q); linear for monofractal signals, concave otherwise.

    ``concavity_violations`` counts grid intervals where the second divided
    difference is positive beyond rounding; violations are diagnostics and
    are never smoothed away.
    """

    qs: QGrid
    tau: np.ndarray = field(repr=False)
    convention: TauConvention = TauConvention.QH
    concavity_violations: int = 0


@dataclass(frozen=True)
class SingularitySpectrum:
    """(alpha, f(alpha)) points derived per q via the Legendre transform."""

    qs: QGrid
    alpha: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    convention: TauConvention = TauConvention.QH


@dataclass(frozen=True)
class SpectrumFit:
    """Quartic singularity-spectrum fit and the derived complexity parameters.

    ``coefficients`` are (A, B, C, D, E) of
    A + B(alpha-alpha0) + ... + E(alpha-alpha0)^4. ``alpha_min``/``alpha_max``
    are the support roots bracketing alpha0, ``width = alpha_max - alpha_min``
    and ``skew = (alpha_max - alpha0) / (alpha0 - alpha_min)``.
    """

    coefficients: tuple[float, float, float, float, float]
    alpha0: float
    alpha_min: float
    alpha_max: float
    width: float
    skew: float
    rms_residual: float
    root_level: float = -1.0

    def __post_init__(self):
        if not self.alpha_min < self.alpha0 < self.alpha_max:
            raise SpectrumFitError(
                f"support [{self.alpha_min}, {self.alpha_max}] does not bracket "
                f"alpha0 = {self.alpha0}"
            )
        if not self.width > 0:
            raise SpectrumFitError(f"non-positive spectrum width {self.width}")
        if not self.skew > 0:
            raise SpectrumFitError(f"non-positive skew parameter {self.skew}")
        if self.rms_residual < 0:
            raise SpectrumFitError("negative fit residual")


def tau_curve(h: HurstCurve, convention: TauConvention = TauConvention.QH) -> TauCurve:
    """Mass exponent from the generalized Hurst exponents."""
    q = h.qs.values
    tau = q * h.h
    if convention is TauConvention.PARTITION:
        tau = tau - 1.0
    violations = 0
    if q.size >= 3:
        d1 = np.diff(tau) / np.diff(q)
        d2 = np.diff(d1)
        scale = max(float(np.max(np.abs(tau))), 1.0)
        violations = int(np.sum(d2 > 1e-10 * scale))
    return TauCurve(h.qs, tau, convention, concavity_violations=violations)


def _deriv_three_point(x0, x1, x2, f0, f1, f2) -> float:
    # first derivative at x0 from three (possibly unevenly spaced) points
    return (
        f0 * (2 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2))
        + f1 * (x0 - x2) / ((x1 - x0) * (x1 - x2))
        + f2 * (x0 - x1) / ((x2 - x0) * (x2 - x1))
    )


def legendre(tau: TauCurve) -> SingularitySpectrum:
    """Singularity spectrum alpha(q) = dtau/dq, f(alpha) = q alpha - tau(q).

    alpha uses central differences at interior grid points and three-point
    one-sided differences at the ends (exact for quadratic tau), so a
    monofractal (linear) tau collapses to a single spectrum point.
    """
    q = tau.qs.values
    t = tau.tau
    if q.size < 3:
        raise SpectrumFitError(f"Legendre transform needs >= 3 q points, got {q.size}")
    alpha = np.empty_like(t)
    alpha[1:-1] = (t[2:] - t[:-2]) / (q[2:] - q[:-2])
    alpha[0] = _deriv_three_point(q[0], q[1], q[2], t[0], t[1], t[2])
    alpha[-1] = _deriv_three_point(q[-1], q[-2], q[-3], t[-1], t[-2], t[-3])
    f = q * alpha - t
    return SingularitySpectrum(tau.qs, alpha, f, tau.convention)


def _fit_at(alpha: np.ndarray, f: np.ndarray, center: float, scale: float) -> np.ndarray:
    u = (alpha - center) / scale
    vand = np.vander(u, 5, increasing=True)
    coef, *_ = np.linalg.lstsq(vand, f, rcond=None)
    return coef


def fit_quartic(spec: SingularitySpectrum, trim_extremes: int = 0) -> SpectrumFit:
    """Fourth-degree polynomial fit of the spectrum and its support roots.

    Two-stage fit: alpha0 starts at the alpha of the maximal observed f; after
    a linear least-squares fit in powers of (alpha - alpha0), alpha0 is
    refined to the stationary point of the fitted quartic nearest the
    initializer and the fit is repeated once. The support roots alpha_min and
    alpha_max are the crossings of the convention's root level bracketing
    alpha0, located by scanning outward in steps of 0.01 (up to +/- 5) and
    bisecting each sign change.

    ``trim_extremes`` drops that many points from each end of the q grid
    (the largest-|q| spectrum estimates are the noisiest); the default keeps
    every point. Needs at least 6 distinct spectrum points.
    """
    alpha = np.asarray(spec.alpha, dtype=np.float64)
    f = np.asarray(spec.f, dtype=np.float64)
    if trim_extremes > 0:
        if alpha.size <= 2 * trim_extremes:
            raise SpectrumFitError("trimming removes every spectrum point")
        alpha = alpha[trim_extremes:-trim_extremes]
        f = f[trim_extremes:-trim_extremes]
    if np.unique(alpha).size < 6:
        raise SpectrumFitError(
            f"quartic fit needs >= 6 distinct spectrum points, got {np.unique(alpha).size}"
        )

    center = float(alpha[np.argmax(f)])
    scale = max(float(np.max(np.abs(alpha - center))), 1e-12)
    coef = _fit_at(alpha, f, center, scale)

    # refine alpha0 to the nearest stationary point of the fitted quartic
    dcoef = np.polynomial.polynomial.polyder(coef)
    roots = np.polynomial.polynomial.polyroots(dcoef)
    real = roots[np.abs(roots.imag) < 1e-8].real
    if real.size:
        center = center + float(real[np.argmin(np.abs(real))]) * scale
        coef = _fit_at(alpha, f, center, scale)

    def fitted(a: float) -> float:
        return float(np.polynomial.polynomial.polyval((a - center) / scale, coef))

    level = spec.convention.root_level
    if fitted(center) <= level:
        raise SpectrumFitError("spectrum does not close: fitted maximum below the root level")

    bounds = []
    for sign in (-1.0, 1.0):
        prev = center
        bracket = None
        steps = int(ROOT_SCAN_LIMIT / ROOT_SCAN_STEP)
        for k in range(1, steps + 1):
            x = center + sign * k * ROOT_SCAN_STEP
            if fitted(x) - level <= 0.0:
                bracket = (prev, x) if sign > 0 else (x, prev)
                break
            prev = x
        if bracket is None:
            side = "below" if sign < 0 else "above"
            raise SpectrumFitError(
                f"spectrum does not close: no root {side} alpha0 within "
                f"{ROOT_SCAN_LIMIT} of {center:.4f}"
            )
        lo, hi = bracket
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if (fitted(lo) - level) * (fitted(mid) - level) <= 0.0:
                hi = mid
            else:
                lo = mid
        bounds.append(0.5 * (lo + hi))
    alpha_min, alpha_max = bounds

    # report coefficients in the unscaled (alpha - alpha0) basis
    powers = scale ** np.arange(5)
    a, b, c, d, e = (coef / powers).tolist()
    resid = np.array([fitted(x) for x in alpha]) - f
    return SpectrumFit(
        coefficients=(a, b, c, d, e),
        alpha0=center,
        alpha_min=float(alpha_min),
        alpha_max=float(alpha_max),
        width=float(alpha_max - alpha_min),
        skew=float((alpha_max - center) / (center - alpha_min)),
        rms_residual=float(np.sqrt(np.mean(resid**2))),
        root_level=level,
    )


def classify_skew(fit: SpectrumFit, tolerance: float = SKEW_TOLERANCE) -> str:
    """Symmetry class of the spectrum: r = 1 symmetric (within ``tolerance``),
    r > 1 right-skewed (small-fluctuation exponents dominate), r < 1
    left-skewed (large-fluctuation exponents dominate)."""
    if abs(fit.skew - 1.0) <= tolerance:
        return "symmetric"
    return "right-skewed" if fit.skew > 1.0 else "left-skewed"
