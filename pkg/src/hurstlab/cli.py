"""Command-line surface: ingest prices, scan, and write bucket reports.

Two subcommands:

* ``run``   -- ingest a CSV universe (or synthesize one) and, for every
  (window, method) pair, write the raw observation CSV plus one quintile
  and one tail bucket report into the output directory.
* ``synth`` -- dump a drifted synthetic cohort in the ingestion CSV
  format.

All randomness flows through ``--seed``; outputs contain no timestamps
or environment state, so identical invocations produce byte-identical
output trees.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import HurstLabError
from .estimators import DFA_MODE_PROFILE, DFA_MODE_RAW, EstimatorConfig, Method, default_config
from .ingest import ingest_csv, ingest_dir, write_csv
from .pipeline import ScanSpec, scan, report
from .reporting import observations_csv, render_method_table, render_report_table, report_csv
from .synthetic import generate_drifted_cohort

_DEFAULT_WINDOWS = "32,64,128,256,512"
_DEFAULT_METHODS = "ghe,dfa,gm2"
_DEFAULT_H_VALUES = "0.3,0.5,0.7"
_DEFAULT_DRIFTS = "0,0.0002,0.0004"


def _parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _parse_methods(text: str) -> list[Method]:
    methods = []
    for part in text.split(","):
        name = part.strip().upper()
        if not name:
            continue
        try:
            methods.append(Method[name])
        except KeyError:
            raise argparse.ArgumentTypeError(f"unknown method {part!r} (expected ghe, dfa, gm2)")
    if not methods:
        raise argparse.ArgumentTypeError("at least one method required")
    return methods


def _add_cohort_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=60, help="number of synthetic series")
    parser.add_argument("--len", dest="length", type=int, default=2048, help="series length")
    parser.add_argument("--h-values", type=_parse_floats, default=_DEFAULT_H_VALUES,
                        help="cycled roughness values")
    parser.add_argument("--drifts", type=_parse_floats, default=_DEFAULT_DRIFTS,
                        help="per-step drift for each h value")
    parser.add_argument("--fbm-scale", type=float, default=0.005, help="fBm step std dev")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurstscan", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="scan a universe and write bucket reports")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="long-format CSV file (instrument,date,price)")
    src.add_argument("--input-dir", help="directory of long-format CSV files")
    src.add_argument(
        "--synthetic-cohort",
        action="store_true",
        help="scan a generated drifted cohort instead of reading files",
    )
    run.add_argument("--windows", type=_parse_ints, default=_DEFAULT_WINDOWS,
                     help="comma-separated window sizes")
    run.add_argument("--roll", type=int, default=20, help="roll step in trading days")
    run.add_argument("--methods", type=_parse_methods, default=_DEFAULT_METHODS,
                     help="comma-separated estimators")
    run.add_argument("--tau-max", type=int, default=None, help="override GHE maximum lag")
    run.add_argument("--k-min", type=int, default=None, help="override smallest block exponent")
    run.add_argument("--k-max", type=int, default=None, help="override largest block exponent")
    run.add_argument("--q", type=float, default=None, help="override moment order")
    run.add_argument(
        "--dfa-profile",
        choices=(DFA_MODE_PROFILE, DFA_MODE_RAW),
        default=DFA_MODE_PROFILE,
        help="detrend the return profile (default) or the raw log prices",
    )
    run.add_argument(
        "--non-overlapping",
        action="store_true",
        help="roll by one full window instead of --roll days",
    )
    run.add_argument(
        "--exclude-suspect",
        action="store_true",
        help="drop estimates outside (0, 2) before bucketing",
    )
    run.add_argument("--format", choices=("table", "csv"), default="table", help="report file format")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--seed", type=int, default=0, help="seed for synthetic universes")
    _add_cohort_options(run)
    run.set_defaults(func=cmd_run)

    synth = sub.add_parser("synth", help="write a synthetic cohort in ingestion CSV format")
    _add_cohort_options(synth)
    synth.add_argument("--seed", type=int, default=0, help="cohort seed")
    synth.add_argument("--out", required=True, help="output CSV path")
    synth.set_defaults(func=cmd_synth)
    return parser


def _cohort_from_args(args: argparse.Namespace):
    h_values, drifts = args.h_values, args.drifts
    if len(drifts) != len(h_values):
        raise HurstLabError("--drifts must list one value per --h-values entry")
    drift_per_h = dict(zip(h_values, drifts))
    return generate_drifted_cohort(
        args.n, args.length, h_values, drift_per_h, seed=args.seed, scale=args.fbm_scale
    )


def _overridden_config(args: argparse.Namespace, method: Method, window: int) -> EstimatorConfig:
    base = default_config(method, window, dfa_mode=args.dfa_profile)
    return EstimatorConfig(
        q=args.q if args.q is not None else base.q,
        tau_max=args.tau_max if args.tau_max is not None else base.tau_max,
        k_min=args.k_min if args.k_min is not None else base.k_min,
        k_max=args.k_max if args.k_max is not None else base.k_max,
    )


def cmd_run(args: argparse.Namespace) -> int:
    methods = args.methods
    windows = sorted(set(args.windows))
    if not windows:
        raise HurstLabError("at least one window size required")
    if args.input:
        universe = ingest_csv(args.input)
    elif args.input_dir:
        universe = ingest_dir(args.input_dir)
    else:
        universe = _cohort_from_args(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    ext = "txt" if args.format == "table" else "csv"
    summary_reports: dict[Method, list] = {m: [] for m in methods}
    total_diagnostics = 0
    for window in windows:
        spec = ScanSpec(
            window=window,
            roll_step=window if args.non_overlapping else args.roll,
            methods=tuple(methods),
            configs={m: _overridden_config(args, m, window) for m in methods},
            dfa_mode=args.dfa_profile,
        )
        result = scan(universe, spec)
        total_diagnostics += len(result.diagnostics)
        for method in methods:
            group = result.for_group(window, method)
            if args.exclude_suspect:
                group = tuple(o for o in group if not o.suspect)
            tag = f"{method.value.lower()}_w{window}"
            (out_dir / f"observations_{tag}.csv").write_text(observations_csv(group), encoding="utf-8")
            quintile = report(group, window, method, scheme="quintile")
            tail = report(group, window, method, scheme="tail")
            summary_reports[method].append(quintile)
            if args.format == "table":
                (out_dir / f"quintile_{tag}.{ext}").write_text(render_report_table(quintile), encoding="utf-8")
                (out_dir / f"tail_{tag}.{ext}").write_text(render_report_table(tail), encoding="utf-8")
            else:
                (out_dir / f"quintile_{tag}.{ext}").write_text(report_csv(quintile), encoding="utf-8")
                (out_dir / f"tail_{tag}.{ext}").write_text(report_csv(tail), encoding="utf-8")
    for method in methods:
        print(render_method_table(summary_reports[method]))
    print(f"universe: {len(universe)} instruments; skipped estimates/series: {total_diagnostics}")
    print(f"reports written to {out_dir}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    cohort = _cohort_from_args(args)
    write_csv(cohort, args.out)
    print(f"wrote {len(cohort)} series of length {args.length} to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HurstLabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
