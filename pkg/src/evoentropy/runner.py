"""Experiment execution: per-generation traces, sweeps, and CSV output.

The measurement convention is measure-then-step: row g describes the
population that exists at generation g, before it is replaced by its
offspring. The change columns on row g therefore look backward:
delta_k is k(previous) - k(current), and conditional_k is the cost of
describing the previous generation given the current one. Both are
empty on row 0.

CSV files carry run metadata on leading '#' lines; everything from the
header row down is a pure function of the config, so identical runs
produce byte-identical data sections regardless of wall clock or
parallelism.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import numpy as np

from .analysis import UndefinedCorrelationError, autocorrelation, histogram, pearson, spearman
from .complexity import mean_genome_k, serialize
from .config import ExperimentConfig
from .entropy import entropy_by_sex, genome_entropy_sum
from .genome import init_population
from .lz78 import lz_compress
from .mating import ExtinctionError, generation_step

TRACE_COLUMNS = (
    "generation",
    "pop_size",
    "h_sum",
    "h_male",
    "h_female",
    "k_bits",
    "delta_k",
    "conditional_k",
    "mean_genome_k",
)

COEFFICIENT_BINS = 10
COEFFICIENT_BOUNDS = (-1.0, 1.0)


@dataclass
class EntropyTrace:
    """Per-generation measurement record of one run.

    Sex entropies are None where that sex was absent; the change
    columns are None on the first row. final_snapshot holds the
    serialized bytes of the last measured generation for debugging
    and token dumps.
    """

    config: ExperimentConfig
    generation: list[int] = field(default_factory=list)
    pop_size: list[int] = field(default_factory=list)
    h_sum: list[float] = field(default_factory=list)
    h_male: list[float | None] = field(default_factory=list)
    h_female: list[float | None] = field(default_factory=list)
    k_bits: list[int] = field(default_factory=list)
    delta_k: list[int | None] = field(default_factory=list)
    conditional_k: list[int | None] = field(default_factory=list)
    mean_genome_k: list[float] = field(default_factory=list)
    termination_reason: str = "completed"
    final_snapshot: bytes = b""

    def __len__(self) -> int:
        return len(self.generation)

    def column(self, name: str) -> list:
        if name not in TRACE_COLUMNS:
            raise ValueError(f"unknown trace column {name!r}")
        return getattr(self, name)


def run_experiment(cfg: ExperimentConfig) -> EntropyTrace:
    """Runs one configured experiment to completion or extinction.

    Each generation is measured before being replaced: Shannon sum and
    per-sex entropies, snapshot complexity in bits, backward-looking
    delta and conditional complexities, and the mean per-genome bit
    size. Extinction ends the trace early and is recorded in
    termination_reason, not raised.

    Args:
        cfg: fully resolved experiment configuration.

    Returns:
        The trace, with one row per measured generation.
    """
    rng = np.random.default_rng(cfg.seed)
    pop = init_population(cfg.population_size, cfg.loci)
    trace = EntropyTrace(config=cfg)
    prev_bytes: bytes | None = None
    prev_k: int | None = None

    for step in range(cfg.generations):
        snap = serialize(pop)
        k = lz_compress(snap.data).bit_size
        by_sex = entropy_by_sex(pop)
        per_genome = mean_genome_k(pop)

        trace.generation.append(pop.generation_index)
        trace.pop_size.append(len(pop))
        trace.h_sum.append(genome_entropy_sum(pop))
        trace.h_male.append(by_sex.h_male if by_sex.male_present else None)
        trace.h_female.append(by_sex.h_female if by_sex.female_present else None)
        trace.k_bits.append(k)
        if prev_bytes is None:
            trace.delta_k.append(None)
            trace.conditional_k.append(None)
        else:
            trace.delta_k.append(prev_k - k)
            # Cost of the previous generation given the current one.
            joint = lz_compress(snap.data + prev_bytes).bit_size
            trace.conditional_k.append(max(0, joint - k))
        trace.mean_genome_k.append(per_genome)

        prev_bytes, prev_k = snap.data, k
        trace.final_snapshot = snap.data
        if step == cfg.generations - 1:
            break
        try:
            pop = generation_step(pop, cfg, rng)
        except ExtinctionError as exc:
            trace.termination_reason = f"extinct: {exc.reason}"
            break
    return trace


@dataclass
class ExperimentSummary:
    """One sweep row: correlations of the trace plus how the run ended."""

    label: str
    seed: int
    pearson_h_vs_k: float | None
    spearman_h_vs_k: float | None
    autocorr_h_lag1: float | None
    generations_recorded: int
    termination_reason: str


@dataclass
class SweepSummary:
    """Sweep results in config declaration order, plus the coefficient histogram."""

    rows: list[ExperimentSummary]
    coefficient_counts: np.ndarray
    coefficient_edges: np.ndarray


def summarize_trace(trace: EntropyTrace) -> ExperimentSummary:
    """Reduces a trace to its summary row.

    Correlations that are undefined (constant series or a trace too
    short) are recorded as None and rendered as empty CSV fields.
    """
    h = np.asarray(trace.h_sum, dtype=np.float64)
    k = np.asarray(trace.k_bits, dtype=np.float64)
    r = s = ac = None
    if len(h) >= 2:
        try:
            r = pearson(h, k)
            s = spearman(h, k)
        except UndefinedCorrelationError:
            pass
    if len(h) > 2:
        try:
            ac = autocorrelation(h, 1)
        except UndefinedCorrelationError:
            ac = None
    return ExperimentSummary(
        label=trace.config.label,
        seed=trace.config.seed,
        pearson_h_vs_k=r,
        spearman_h_vs_k=s,
        autocorr_h_lag1=ac,
        generations_recorded=len(trace),
        termination_reason=trace.termination_reason,
    )


def _run_for_sweep(cfg: ExperimentConfig) -> EntropyTrace:
    """Top-level wrapper so worker processes can pickle the call."""
    return run_experiment(cfg)


def run_sweep(
    configs: Sequence[ExperimentConfig], parallelism: int = 1
) -> tuple[SweepSummary, list[EntropyTrace]]:
    """Runs every config and aggregates summaries in declaration order.

    Args:
        configs: resolved experiment list; labels must be distinct.
        parallelism: worker process count; 1 runs in-process. Results
            are ordered by config position either way, so the summary
            is invariant to the worker count.

    Returns:
        (summary, traces) with traces parallel to configs.
    """
    if parallelism < 1:
        raise ValueError(f"parallelism must be >= 1, got {parallelism}")
    labels = [cfg.label for cfg in configs]
    if len(set(labels)) != len(labels):
        raise ValueError("sweep labels must be distinct")
    if parallelism == 1 or len(configs) == 1:
        traces = [run_experiment(cfg) for cfg in configs]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            traces = list(pool.map(_run_for_sweep, configs))
    rows = [summarize_trace(t) for t in traces]
    coeffs = [r.pearson_h_vs_k for r in rows if r.pearson_h_vs_k is not None]
    counts, edges = histogram(coeffs, COEFFICIENT_BINS, COEFFICIENT_BOUNDS)
    return SweepSummary(rows=rows, coefficient_counts=counts, coefficient_edges=edges), list(
        traces
    )


def _fmt(value) -> str:
    """CSV cell: empty for None, shortest round-trip repr otherwise."""
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def _metadata_lines(pairs: dict[str, str]) -> str:
    return "".join(f"# {key}: {value}\n" for key, value in pairs.items())


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def write_trace_csv(trace: EntropyTrace, path: str | Path) -> None:
    """Writes one run's trace.

    Leading '#' lines carry the config echo, seed, termination reason,
    and a timestamp; they are the only part of the file allowed to
    differ between identical runs.
    """
    path = Path(path)
    meta = {
        "trace": "v1",
        "label": trace.config.label,
        "seed": str(trace.config.seed),
        "config": json.dumps(trace.config.to_dict(), sort_keys=True),
        "termination": trace.termination_reason,
        "written": _timestamp(),
    }
    lines = [_metadata_lines(meta), ",".join(TRACE_COLUMNS) + "\n"]
    for i in range(len(trace)):
        row = (
            trace.generation[i],
            trace.pop_size[i],
            trace.h_sum[i],
            trace.h_male[i],
            trace.h_female[i],
            trace.k_bits[i],
            trace.delta_k[i],
            trace.conditional_k[i],
            trace.mean_genome_k[i],
        )
        lines.append(",".join(_fmt(v) for v in row) + "\n")
    path.write_text("".join(lines))


def read_trace_csv(path: str | Path) -> dict[str, list]:
    """Parses a trace CSV back into columns, inverse to write_trace_csv.

    '#' lines are skipped. Empty cells come back as None; numeric cells
    come back as int or float per the column's type.
    """
    int_cols = {"generation", "pop_size", "k_bits", "delta_k", "conditional_k"}
    lines = [
        line
        for line in Path(path).read_text().splitlines()
        if line and not line.startswith("#")
    ]
    header = lines[0].split(",")
    if tuple(header) != TRACE_COLUMNS:
        raise ValueError(f"unexpected trace header: {lines[0]!r}")
    columns: dict[str, list] = {name: [] for name in header}
    for line in lines[1:]:
        cells = line.split(",")
        for name, cell in zip(header, cells):
            if cell == "":
                columns[name].append(None)
            elif name in int_cols:
                columns[name].append(int(cell))
            else:
                columns[name].append(float(cell))
    return columns


SUMMARY_COLUMNS = (
    "label",
    "seed",
    "pearson_h_vs_k",
    "autocorr_h_lag1",
    "generations_recorded",
    "termination_reason",
)


def write_summary_csv(
    summary: SweepSummary, path: str | Path, include_spearman: bool = False
) -> None:
    """Writes the sweep summary, one row per experiment in config order."""
    path = Path(path)
    columns = list(SUMMARY_COLUMNS)
    if include_spearman:
        columns.insert(3, "spearman_h_vs_k")
    meta = {"sweep": "v1", "experiments": str(len(summary.rows)), "written": _timestamp()}
    lines = [_metadata_lines(meta), ",".join(columns) + "\n"]
    for row in summary.rows:
        cells = {
            "label": row.label,
            "seed": row.seed,
            "pearson_h_vs_k": row.pearson_h_vs_k,
            "spearman_h_vs_k": row.spearman_h_vs_k,
            "autocorr_h_lag1": row.autocorr_h_lag1,
            "generations_recorded": row.generations_recorded,
            "termination_reason": row.termination_reason,
        }
        lines.append(",".join(_fmt(cells[name]) for name in columns) + "\n")
    path.write_text("".join(lines))


def write_coefficient_histogram_csv(summary: SweepSummary, path: str | Path) -> None:
    """Writes the Pearson coefficient histogram as bin_lo,bin_hi,count rows."""
    path = Path(path)
    meta = {"histogram": "pearson_h_vs_k", "written": _timestamp()}
    lines = [_metadata_lines(meta), "bin_lo,bin_hi,count\n"]
    for i, count in enumerate(summary.coefficient_counts):
        lo = summary.coefficient_edges[i]
        hi = summary.coefficient_edges[i + 1]
        lines.append(f"{_fmt(float(lo))},{_fmt(float(hi))},{int(count)}\n")
    path.write_text("".join(lines))


def trace_filename(index: int, label: str) -> str:
    """Stable per-run file stem: position prefix plus sanitized label."""
    safe = "".join(c if c.isalnum() or c in "._-" else "-" for c in label)
    return f"{index:02d}_{safe}"
