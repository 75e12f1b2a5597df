"""Command-line interface.

Subcommands:

* ``analyze``  one price CSV -> report row, JSON and plot-data artifacts
* ``batch``    many price CSVs -> report.csv / report.json / artifacts
* ``generate`` synthetic fixture CSV (cascade, fgn, white)
* ``surrogate`` surrogate-only rerun on an existing fixture

Exit codes: 0 success, 1 usage error, 2 partial batch failure, 3 total failure.
Analysis settings come from defaults, then an optional JSON config file,
then command-line flags (flags win).
"""

from __future__ import annotations

import argparse
import datetime
import json
import pathlib
import sys

import numpy as np

from .analysis import AnalysisConfig
from .csvio import ingest_csv, prices_from_returns, weekday_dates, write_price_csv
from .errors import MfkitError, StageError
from .pipeline import (
    EXIT_OK,
    EXIT_TOTAL,
    EXIT_USAGE,
    analyze_one,
    batch,
    batch_exit_code,
    fund_json,
    render_report_csv,
    write_reports,
)
from .series import log_returns
from .surrogate import surrogate_analysis
from .synth import CascadeSpec, FgnSpec, binomial_cascade, fractional_gaussian_noise, white_noise

_CONFIG_FIELDS = (
    "q_min",
    "q_max",
    "q_step",
    "n_min",
    "n_max_divisor",
    "scale_count",
    "polynomial_order",
    "min_length",
    "ensemble_size",
    "base_seed",
    "tau_convention",
    "bidirectional",
    "trim_extremes",
)


class _Parser(argparse.ArgumentParser):
    # spec'd exit codes reserve 2 for partial failures; usage errors exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("analysis settings")
    g.add_argument("--config", help="JSON file with analysis settings")
    g.add_argument("--q-min", type=float, dest="q_min")
    g.add_argument("--q-max", type=float, dest="q_max")
    g.add_argument("--q-step", type=float, dest="q_step")
    g.add_argument("--n-min", type=int, dest="n_min")
    g.add_argument("--n-max-divisor", type=int, dest="n_max_divisor")
    g.add_argument("--scale-count", type=int, dest="scale_count")
    g.add_argument("--order", type=int, dest="polynomial_order")
    g.add_argument("--min-length", type=int, dest="min_length")
    g.add_argument("--ensemble-size", type=int, dest="ensemble_size")
    g.add_argument("--base-seed", type=int, dest="base_seed")
    g.add_argument("--tau-convention", choices=["qh", "partition"], dest="tau_convention")
    g.add_argument(
        "--forward-only",
        action="store_const",
        const=False,
        dest="bidirectional",
        help="segment forward from the start only",
    )
    g.add_argument("--trim-extremes", type=int, dest="trim_extremes")


def _add_schema_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input schema")
    g.add_argument("--date-col", default="Date")
    g.add_argument("--close-col", default="Close")
    g.add_argument("--delimiter", default=",")


def build_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> AnalysisConfig:
    settings: dict = {}
    if getattr(args, "config", None):
        try:
            loaded = json.loads(pathlib.Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        unknown = set(loaded) - set(_CONFIG_FIELDS)
        if unknown:
            parser.error(f"unknown config keys: {sorted(unknown)}")
        settings.update(loaded)
    for name in _CONFIG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    try:
        return AnalysisConfig(**settings)
    except MfkitError as exc:
        parser.error(str(exc))


def _cmd_analyze(args, parser) -> int:
    cfg = build_config(args, parser)
    try:
        ingest = ingest_csv(
            args.input,
            instrument_id=args.code,
            date_col=args.date_col,
            close_col=args.close_col,
            delimiter=args.delimiter,
        )
    except MfkitError as exc:
        print(exc, file=sys.stderr)
        return EXIT_TOTAL
    if ingest.dropped_rows:
        print(f"warning: dropped {ingest.dropped_rows} empty/null close rows", file=sys.stderr)
    result = analyze_one(ingest.series, cfg)
    code = write_reports([result], cfg, args.out)
    if not result.ok:
        print(f"{result.code}: rejected at stage {result.error_stage}: "
              f"{result.error_message}", file=sys.stderr)
        return EXIT_TOTAL
    print(render_report_csv([result]), end="")
    return EXIT_OK


def _cmd_batch(args, parser) -> int:
    cfg = build_config(args, parser)
    results = batch(
        args.inputs,
        cfg,
        date_col=args.date_col,
        close_col=args.close_col,
        delimiter=args.delimiter,
    )
    write_reports(results, cfg, args.out)
    for res in results:
        if not res.ok:
            print(f"{res.code}: rejected at stage {res.error_stage}: "
                  f"{res.error_message}", file=sys.stderr)
    print(render_report_csv(results), end="")
    return batch_exit_code(results)


def _cmd_generate(args, parser) -> int:
    try:
        if args.kind == "cascade":
            series = binomial_cascade(CascadeSpec(args.a, args.levels), seed=args.seed)
            n_rows = 2**args.levels
        elif args.kind == "fgn":
            series = fractional_gaussian_noise(FgnSpec(args.hurst, args.length - 1, args.seed))
            n_rows = args.length
        else:
            series = white_noise(args.length - 1, seed=args.seed)
            n_rows = args.length
    except MfkitError as exc:
        parser.error(str(exc))
    # An n-row price fixture embeds n-1 return values; the first row seeds the level.
    values = series.values[: n_rows - 1]
    closes = prices_from_returns(values, base_price=args.base_price)[:n_rows]
    start = datetime.date.fromisoformat(args.start_date)
    write_price_csv(args.out, weekday_dates(start, n_rows), closes)
    print(f"wrote {n_rows} rows to {args.out}")
    return EXIT_OK


def _cmd_surrogate(args, parser) -> int:
    cfg = build_config(args, parser)
    try:
        ingest = ingest_csv(
            args.input,
            date_col=args.date_col,
            close_col=args.close_col,
            delimiter=args.delimiter,
        )
        returns = log_returns(ingest.series)
        report = surrogate_analysis(returns, cfg)
    except StageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_TOTAL
    except MfkitError as exc:
        print(exc, file=sys.stderr)
        return EXIT_TOTAL
    doc = {
        "code": ingest.series.instrument_id,
        "original": {"alpha0": report.original[0], "W": report.original[1], "r": report.original[2]},
        "randomized": {
            "alpha0": report.randomized[0],
            "W": report.randomized[1],
            "r": report.randomized[2],
        },
        "deltas": {"d_alpha0": report.deltas[0], "d_W": report.deltas[1], "d_r": report.deltas[2]},
        "stddev": list(report.ensemble_stddev),
        "failures": report.failures,
        "ensemble_size": report.ensemble_size,
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        pathlib.Path(args.out).write_text(text, encoding="utf-8")
    print(text, end="")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="mfkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one price CSV")
    p.add_argument("--input", required=True, help="price CSV")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--code", help="instrument code (default: file stem)")
    _add_schema_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("batch", help="analyze many price CSVs")
    p.add_argument("inputs", nargs="+", help="price CSV files")
    p.add_argument("--out", required=True, help="output directory")
    _add_schema_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("generate", help="write a synthetic fixture CSV")
    p.add_argument("kind", choices=["cascade", "fgn", "white"])
    p.add_argument("--out", required=True)
    p.add_argument("--length", type=int, default=4096, help="row count (fgn, white)")
    p.add_argument("--levels", type=int, default=12, help="cascade depth (2^levels rows)")
    p.add_argument("--a", type=float, default=0.75, help="cascade multiplier in (0.5, 1)")
    p.add_argument("--hurst", type=float, default=0.8, help="fgn Hurst exponent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base-price", type=float, default=100.0)
    p.add_argument("--start-date", default="2013-11-04", help="first weekday (ISO)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("surrogate", help="surrogate-only rerun on a fixture")
    p.add_argument("--input", required=True, help="price CSV")
    p.add_argument("--out", help="write the JSON report here as well")
    _add_schema_flags(p)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_surrogate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
