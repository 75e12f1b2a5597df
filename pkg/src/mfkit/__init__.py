"""Multifractal detrended fluctuation analysis toolkit for daily price series.

From raw price CSVs through log returns, q-order fluctuation functions,
generalized Hurst exponents, singularity spectra, the (alpha0, W, r)
complexity parameters, and shuffle-surrogate ensembles that separate
correlation-born from distribution-born multifractality.

``KERNEL_BACKEND`` reports whether the compiled segment-variance kernel or
the NumPy fallback is active.
"""

from .analysis import DEFAULT_BASE_SEED, AnalysisConfig, ChainResult, run_chain
from .engine import (
    DetrendConfig,
    FluctuationSurface,
    HurstCurve,
    QGrid,
    ScaleGrid,
    detrend_segment,
    fluctuation_function,
    hurst_exponents,
    profile,
    segment_count,
)
from .errors import (
    EngineError,
    IngestError,
    MfkitError,
    SeriesError,
    SpectrumFitError,
    StageError,
    SurrogateError,
    SynthError,
)
from .kernels import KERNEL_BACKEND
from .csvio import IngestResult, ingest_csv
from .pipeline import FundReportRow, FundResult, analyze_one, batch, write_reports
from .series import (
    DEFAULT_MIN_LENGTH,
    PriceSeries,
    ReturnSeries,
    admit_series,
    log_returns,
    shuffle,
)
from .spectrum import (
    SingularitySpectrum,
    SpectrumFit,
    TauConvention,
    TauCurve,
    classify_skew,
    fit_quartic,
    legendre,
    tau_curve,
)
from .surrogate import SurrogateConfig, SurrogateReport, surrogate_analysis
from .synth import (
    CascadeSpec,
    FgnSpec,
    binomial_cascade,
    cascade_hurst,
    fgn_autocovariance,
    fractional_gaussian_noise,
    white_noise,
)

__version__ = "0.1.0"
