"""SVG figure output for traces and sweep summaries.

Figures are rendered headless and scrubbed of timestamps and random
ids (fixed hash salt, no Date metadata) so rerunning a deterministic
experiment reproduces the files byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .runner import EntropyTrace, SweepSummary


def _deterministic_svg(label: str) -> dict:
    matplotlib.rcParams["svg.hashsalt"] = label
    return {"Date": None}


def write_trace_plot(trace: EntropyTrace, path: str | Path) -> None:
    """Dual-axis line chart: Shannon sum (left) and k_bits (right) over time."""
    fig, ax_h = plt.subplots(figsize=(9, 4.5))
    ax_k = ax_h.twinx()
    gens = trace.generation
    ax_h.plot(gens, trace.h_sum, color="tab:blue", lw=1.0, label="h_sum")
    ax_k.plot(gens, trace.k_bits, color="tab:red", lw=1.0, label="k_bits")
    ax_h.set_xlabel("generation")
    ax_h.set_ylabel("summed locus entropy (bits)", color="tab:blue")
    ax_k.set_ylabel("snapshot complexity (bits)", color="tab:red")
    ax_h.tick_params(axis="y", labelcolor="tab:blue")
    ax_k.tick_params(axis="y", labelcolor="tab:red")
    ax_h.set_title(trace.config.label)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_deterministic_svg(trace.config.label))
    plt.close(fig)


def write_coefficient_histogram_plot(summary: SweepSummary, path: str | Path) -> None:
    """Bar chart of the sweep's Pearson coefficient histogram."""
    fig, ax = plt.subplots(figsize=(7, 4))
    edges = summary.coefficient_edges
    widths = edges[1:] - edges[:-1]
    ax.bar(
        edges[:-1],
        summary.coefficient_counts,
        width=widths,
        align="edge",
        color="tab:blue",
        edgecolor="white",
    )
    ax.set_xlabel("pearson(h_sum, k_bits)")
    ax.set_ylabel("experiments")
    ax.set_title("entropy-complexity coupling across the sweep")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_deterministic_svg("coefficients"))
    plt.close(fig)
