"""Command-line entry point: configure one analysis, run it, write CSV.

The data stream (stdout or --out) carries only CSV; progress goes to stderr.
--jobs parallelizes across codes; output is identical for any job count
because every code derives all of its randomness from its own seed and rows
are emitted in code order.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .codec import SUPPORTED_K
from .error_model import PATTERN_KINDS
from .experiments import (
    ANALYSES,
    ExperimentConfig,
    ProbabilityRecord,
    RISK_POSITION_MODES,
    RoundMetrics,
    WastedCapacityRecord,
    config_comment_lines,
    run_evaluations,
    run_probabilities,
    run_wasted_capacity,
    write_csv,
)
from .profilers import PROFILER_KINDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="odeccsim",
        description="Simulate error profiling of ECC words protected by on-die ECC.",
    )
    parser.add_argument("--analysis", required=True, choices=ANALYSES)
    parser.add_argument("--k", type=int, default=64, help=f"dataword length, one of {SUPPORTED_K}")
    parser.add_argument("--codes", type=int, default=10, help="number of ECC codes to generate")
    parser.add_argument("--words", type=int, default=100, help="ECC words per code")
    parser.add_argument("--seed", type=int, default=0, help="seed of the first code; incremented per code")
    parser.add_argument(
        "--rounds",
        type=int,
        default=128,
        help="profiling rounds per word (Monte-Carlo trials per word in probabilities mode)",
    )
    parser.add_argument("--probs", default=None, help="comma-separated per-bit error probabilities")
    parser.add_argument("--errors", default="2,3,4,5", help="comma-separated injected error counts")
    parser.add_argument("--patterns", default="random", help=f"comma-separated, from {PATTERN_KINDS}")
    parser.add_argument("--profilers", default=",".join(PROFILER_KINDS), help="comma-separated profiler kinds")
    parser.add_argument(
        "--risk-positions",
        default="all",
        choices=RISK_POSITION_MODES,
        help="where at-risk bits may live (evaluations mode)",
    )
    parser.add_argument("--jobs", type=int, default=0, help="parallel code-level tasks; 0 = host parallelism")
    parser.add_argument("--out", required=True, help="output CSV path, or - for stdout")
    return parser


def _parse_list(text: str, convert):
    return tuple(convert(part) for part in text.split(",") if part)


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.probs is None:
        # The probability analysis mirrors a by-design 0.5 setup.
        probs = (0.5,) if args.analysis == "probabilities" else (0.25, 0.5, 0.75, 1.0)
    else:
        probs = _parse_list(args.probs, float)
    config = ExperimentConfig(
        analysis=args.analysis,
        k=args.k,
        num_codes=args.codes,
        num_words_per_code=args.words,
        base_seed=args.seed,
        rounds=args.rounds,
        probabilities=probs,
        error_counts=_parse_list(args.errors, int),
        patterns=_parse_list(args.patterns, str),
        profilers=_parse_list(args.profilers, str),
        risk_positions=args.risk_positions,
    )
    config.validate()
    return config


def _single_code_config(config: ExperimentConfig, code_seed: int) -> ExperimentConfig:
    return replace(config, num_codes=1, base_seed=code_seed)


def _run_code_to_file(config: ExperimentConfig, code_seed: int, directory: str) -> str:
    sub = _single_code_config(config, code_seed)
    runner = run_evaluations if config.analysis == "evaluations" else run_probabilities
    path = os.path.join(directory, f"code-{code_seed}.csv")
    record_type = RoundMetrics if config.analysis == "evaluations" else ProbabilityRecord
    with open(path, "w", encoding="utf-8") as handle:
        names = [f for f in _field_names(record_type)]
        for record in runner(sub):
            handle.write(",".join(_format(getattr(record, name)) for name in names) + "\n")
    return path


def _field_names(record_type):
    from dataclasses import fields

    return [f.name for f in fields(record_type)]


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _write_parallel(config: ExperimentConfig, stream, jobs: int) -> None:
    record_type = RoundMetrics if config.analysis == "evaluations" else ProbabilityRecord
    for line in config_comment_lines(config):
        stream.write(line + "\n")
    stream.write(",".join(_field_names(record_type)) + "\n")
    seeds = [config.base_seed + i for i in range(config.num_codes)]
    with tempfile.TemporaryDirectory(prefix="odeccsim-") as directory:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_code_to_file, config, seed, directory) for seed in seeds]
            for seed, future in zip(seeds, futures):
                path = future.result()
                with open(path, "r", encoding="utf-8") as handle:
                    for line in handle:
                        stream.write(line)
                os.unlink(path)
                print(f"odeccsim: code {seed} done", file=sys.stderr)


def _run_to_stream(config: ExperimentConfig, stream, jobs: int) -> None:
    if config.analysis == "wasted-capacity":
        write_csv(run_wasted_capacity(), WastedCapacityRecord, stream, config)
        return
    if jobs == 0:
        jobs = os.cpu_count() or 1
    jobs = min(jobs, config.num_codes)
    if jobs > 1:
        _write_parallel(config, stream, jobs)
        return
    if config.analysis == "evaluations":
        write_csv(run_evaluations(config), RoundMetrics, stream, config)
    else:
        write_csv(run_probabilities(config), ProbabilityRecord, stream, config)


def parse_and_run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"odeccsim: {exc}", file=sys.stderr)
        return 2
    try:
        if args.out == "-":
            _run_to_stream(config, sys.stdout, args.jobs)
        else:
            with open(args.out, "w", encoding="utf-8") as stream:
                _run_to_stream(config, stream, args.jobs)
    except OSError as exc:
        print(f"odeccsim: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(parse_and_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
