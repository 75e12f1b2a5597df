"""Exception types shared across the toolkit."""

from __future__ import annotations


class MfkitError(Exception):
    """Base class for all toolkit errors."""


class SeriesError(MfkitError):
    """Invalid price or return series (bad dates, non-positive closes, too short)."""


class EngineError(MfkitError):
    """Invalid grid, underdetermined detrend segment, or degenerate fluctuation input."""


class SpectrumFitError(MfkitError):
    """Singularity-spectrum fit rejected (too few points or spectrum does not close)."""


class SurrogateError(MfkitError):
    """Surrogate ensemble could not produce any usable member."""


class SynthError(MfkitError):
    """Synthetic generator specification invalid or synthesis failed."""


class IngestError(MfkitError):
    """CSV ingestion failure; message carries the file path and line number."""


class StageError(MfkitError):
    """Pipeline failure labeled with the stage that rejected the series."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.stage_message = message
