"""Command-line entry points.

``evoentropy run`` executes every experiment in a config file and
writes per-run traces, the sweep summary, and the coefficient
histogram into the output directory. ``evoentropy validate`` checks a
config without running anything.

Exit codes: 0 on success (extinction during a run is an outcome, not a
failure), 2 on configuration errors, 1 on I/O failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import ConfigError, derive_seed, load_config
from .lz78 import format_tokens, lz_compress
from .runner import (
    run_sweep,
    trace_filename,
    write_coefficient_histogram_csv,
    write_summary_csv,
    write_trace_csv,
)

_U64 = 2**64


def _parse_u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < _U64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoentropy",
        description="Sexual-reproduction simulator with Shannon and "
        "compression-based entropy tracking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute all experiments in a config file")
    run_p.add_argument("--config", required=True, help="YAML experiment file")
    run_p.add_argument("--out", default="out", help="output directory (default: ./out)")
    run_p.add_argument(
        "--seed",
        type=_parse_u64,
        default=None,
        help="re-derive every experiment seed from this master seed, "
        "overriding seeds in the file",
    )
    run_p.add_argument(
        "--parallelism",
        type=_positive_int,
        default=1,
        help="worker processes for the sweep (default 1)",
    )
    run_p.add_argument(
        "--plots", action="store_true", help="also write SVG charts per run and sweep"
    )
    run_p.add_argument(
        "--dump-tokens",
        action="store_true",
        help="dump the final snapshot's LZ78 tokens per run (index byte-hex lines)",
    )
    run_p.add_argument(
        "--spearman",
        action="store_true",
        help="include the Spearman column in the sweep summary",
    )

    val_p = sub.add_parser("validate", help="check a config file and exit")
    val_p.add_argument("--config", required=True, help="YAML experiment file")
    return parser


def _cmd_validate(args: argparse.Namespace) -> int:
    configs = load_config(args.config)
    print(f"{args.config}: OK ({len(configs)} experiments)")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    configs = load_config(args.config)
    if args.seed is not None:
        configs = [
            dataclasses.replace(cfg, seed=derive_seed(args.seed, i))
            for i, cfg in enumerate(configs)
        ]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    summary, traces = run_sweep(configs, parallelism=args.parallelism)

    for i, trace in enumerate(traces):
        stem = trace_filename(i, trace.config.label)
        write_trace_csv(trace, out_dir / f"{stem}.csv")
        if args.dump_tokens:
            blob = lz_compress(trace.final_snapshot)
            (out_dir / f"{stem}_tokens.txt").write_text(format_tokens(blob))
        if args.plots:
            from .plots import write_trace_plot

            write_trace_plot(trace, out_dir / f"{stem}.svg")
    write_summary_csv(
        summary, out_dir / "sweep_summary.csv", include_spearman=args.spearman
    )
    write_coefficient_histogram_csv(summary, out_dir / "coefficient_histogram.csv")
    if args.plots:
        from .plots import write_coefficient_histogram_plot

        write_coefficient_histogram_plot(summary, out_dir / "coefficient_histogram.svg")

    for row in summary.rows:
        r = "n/a" if row.pearson_h_vs_k is None else f"{row.pearson_h_vs_k:+.4f}"
        print(
            f"{row.label}: {row.generations_recorded} generations, "
            f"pearson(h_sum,k_bits)={r}, {row.termination_reason}"
        )
    print(f"wrote {len(traces)} traces to {out_dir}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        return _cmd_run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
