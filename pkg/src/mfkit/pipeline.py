"""Batch orchestration and report emission.

``analyze_one`` runs a single fund end to end (returns, fluctuation surface,
Hurst exponents, spectrum fit, surrogate ensemble) and yields one report row
plus plot-ready artifacts. ``batch`` maps that over many files: failures
become diagnostic rows, never aborts, and rows keep input order.

The report CSV renders the nine parameters at two decimals (half-up, ties
away from zero); the JSON report keeps full precision, so the delta identity
d_x = x - x_rand holds exactly there. JSON output is deterministic
(sorted keys, no timestamps), making batch runs byte-reproducible.
"""

from __future__ import annotations

import json
import pathlib
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .analysis import AnalysisConfig, ChainResult, check_admission, run_chain
from .csvio import IngestResult, ingest_csv
from .errors import IngestError, MfkitError, StageError, SurrogateError
from .series import log_returns
from .spectrum import classify_skew
from .surrogate import SurrogateReport, surrogate_analysis

REPORT_HEADER = "code,alpha0,W,r,alpha0_rand,W_rand,r_rand,d_alpha0,d_W,d_r"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2
EXIT_TOTAL = 3


@dataclass(frozen=True)
class FundReportRow:
    """One fund's original, randomized, and delta parameters."""

    code: str
    alpha0: float
    width: float
    skew: float
    alpha0_rand: float
    width_rand: float
    skew_rand: float
    d_alpha0: float
    d_width: float
    d_skew: float

    @classmethod
    def from_results(cls, code: str, chain: ChainResult, report: SurrogateReport):
        a0, w, r = chain.params
        ra0, rw, rr = report.randomized
        return cls(
            code=code,
            alpha0=a0,
            width=w,
            skew=r,
            alpha0_rand=ra0,
            width_rand=rw,
            skew_rand=rr,
            d_alpha0=a0 - ra0,
            d_width=w - rw,
            d_skew=r - rr,
        )

    def numbers(self) -> tuple[float, ...]:
        return (
            self.alpha0,
            self.width,
            self.skew,
            self.alpha0_rand,
            self.width_rand,
            self.skew_rand,
            self.d_alpha0,
            self.d_width,
            self.d_skew,
        )


@dataclass(frozen=True)
class FundResult:
    """Outcome for one input file: a row with artifacts, or a labeled failure."""

    code: str
    row: FundReportRow | None = None
    chain: ChainResult | None = None
    surrogate: SurrogateReport | None = None
    error_stage: str | None = None
    error_message: str | None = None

    @property
    def ok(self) -> bool:
        return self.row is not None


def round2(x: float) -> str:
    """Two-decimal fixed-point rendering, half-up with ties away from zero."""
    return str(Decimal(repr(x)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def analyze_one(prices, cfg: AnalysisConfig, code: str | None = None) -> FundResult:
    """Full pipeline for one price series; stage failures are captured, not raised."""
    code = code or prices.instrument_id
    try:
        returns = log_returns(prices)
        check_admission(returns, cfg)
        chain = run_chain(returns, cfg)
        report = surrogate_analysis(returns, cfg, original=chain)
    except StageError as exc:
        return FundResult(code, error_stage=exc.stage, error_message=exc.stage_message)
    except SurrogateError as exc:
        return FundResult(code, error_stage="surrogate", error_message=str(exc))
    row = FundReportRow.from_results(code, chain, report)
    return FundResult(code, row=row, chain=chain, surrogate=report)


def batch(paths, cfg: AnalysisConfig, date_col="Date", close_col="Close", delimiter=","):
    """Analyze many files; one ``FundResult`` per path, in input order."""
    results: list[FundResult] = []
    for path in paths:
        code = pathlib.Path(path).stem
        try:
            ingest = ingest_csv(
                path, date_col=date_col, close_col=close_col, delimiter=delimiter
            )
        except IngestError as exc:
            results.append(FundResult(code, error_stage="ingest", error_message=str(exc)))
            continue
        results.append(analyze_one(ingest.series, cfg, code=code))
    return results


def batch_exit_code(results) -> int:
    n_ok = sum(1 for r in results if r.ok)
    if n_ok == len(results):
        return EXIT_OK
    return EXIT_PARTIAL if n_ok else EXIT_TOTAL


def render_report_csv(results) -> str:
    """Report table, one row per fund; failed funds render NA fields."""
    lines = [REPORT_HEADER]
    for res in results:
        if res.ok:
            lines.append(",".join([res.code] + [round2(v) for v in res.row.numbers()]))
        else:
            lines.append(",".join([res.code] + ["NA"] * 9))
    return "\n".join(lines) + "\n"


def _selected_qs(surface) -> list[int]:
    qv = surface.qs.values
    picks = [0, qv.size - 1]
    zero = np.nonzero(qv == 0.0)[0]
    if zero.size:
        picks.insert(1, int(zero[0]))
    return picks


def write_artifacts(res: FundResult, out_dir: pathlib.Path) -> dict:
    """Plot-ready per-fund CSVs; returns {artifact name: relative path}."""
    chain = res.chain
    surface, hq, tau, spec = chain.surface, chain.hurst, chain.tau, chain.spectrum
    files = {}

    def _write(name: str, header: list[str], rows) -> None:
        fname = f"{res.code}_{name}.csv"
        with open(out_dir / fname, "w", encoding="utf-8") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
        files[name] = fname

    qv = surface.qs.values
    _write(
        "fqn",
        ["scale"] + [f"F_q{q:g}" for q in qv],
        ([s] + list(surface.f[:, j]) for j, s in enumerate(surface.scales.values)),
    )
    picks = _selected_qs(surface)
    _write(
        "loglog",
        ["ln_n"] + [f"ln_F_q{qv[i]:g}" for i in picks],
        (
            [np.log(float(s))] + [np.log(surface.f[i, j]) for i in picks]
            for j, s in enumerate(surface.scales.values)
        ),
    )
    _write("hurst", ["q", "h", "stderr"], zip(qv, hq.h, hq.stderr))
    _write("tau", ["q", "tau"], zip(qv, tau.tau))
    _write("spectrum", ["q", "alpha", "f"], zip(qv, spec.alpha, spec.f))
    return files


def _config_dict(cfg: AnalysisConfig) -> dict:
    return {
        "q_min": cfg.q_min,
        "q_max": cfg.q_max,
        "q_step": cfg.q_step,
        "n_min": cfg.n_min,
        "n_max_divisor": cfg.n_max_divisor,
        "scale_count": cfg.scale_count,
        "polynomial_order": cfg.polynomial_order,
        "min_length": cfg.min_length,
        "ensemble_size": cfg.ensemble_size,
        "base_seed": cfg.base_seed,
        "tau_convention": cfg.tau_convention.value,
        "bidirectional": cfg.bidirectional,
        "trim_extremes": cfg.trim_extremes,
    }


def fund_json(res: FundResult, artifacts: dict | None = None) -> dict:
    if not res.ok:
        return {
            "code": res.code,
            "status": "error",
            "stage": res.error_stage,
            "message": res.error_message,
        }
    row = res.row
    fit = res.chain.fit
    obj = {
        "code": res.code,
        "status": "ok",
        "alpha0": row.alpha0,
        "W": row.width,
        "r": row.skew,
        "alpha0_rand": row.alpha0_rand,
        "W_rand": row.width_rand,
        "r_rand": row.skew_rand,
        "d_alpha0": row.d_alpha0,
        "d_W": row.d_width,
        "d_r": row.d_skew,
        "hurst2": res.chain.hurst.hurst,
        "skew_class": classify_skew(fit),
        "quartic_coefficients": list(fit.coefficients),
        "alpha_min": fit.alpha_min,
        "alpha_max": fit.alpha_max,
        "rms_residual": fit.rms_residual,
        "surrogate": {
            "ensemble_size": res.surrogate.ensemble_size,
            "failures": res.surrogate.failures,
            "stddev": list(res.surrogate.ensemble_stddev),
        },
        "floored_segments": res.chain.surface.floored_segments,
    }
    if artifacts is not None:
        obj["artifacts"] = artifacts
    return obj


def write_reports(results, cfg: AnalysisConfig, out_dir) -> int:
    """Write report.csv, report.json and per-fund artifacts; returns the exit code."""
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    funds = []
    for res in results:
        artifacts = write_artifacts(res, out) if res.ok else None
        funds.append(fund_json(res, artifacts))
    (out / "report.csv").write_text(render_report_csv(results), encoding="utf-8")
    doc = {"config": _config_dict(cfg), "funds": funds}
    (out / "report.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return batch_exit_code(results)
