"""Series statistics for trace post-processing.

Everything here is sample-convention and deterministic: Pearson on raw
values, autocorrelation as Pearson between a series and its lagged
self, Spearman as Pearson on average ranks, and a fixed-range histogram
that clamps outliers into the edge bins so counts are conserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class UndefinedCorrelationError(ValueError):
    """A correlation was requested for a constant (zero-variance) series."""


@dataclass(frozen=True)
class Series:
    """A labeled 1-D float series; non-finite values are rejected."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"series must be 1-D, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError(f"series {self.label!r} contains non-finite values")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.shape[0]


def _as_values(x) -> np.ndarray:
    arr = np.asarray(getattr(x, "values", x), dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D series, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("series contains non-finite values")
    return arr


def pearson(x, y) -> float:
    """Sample Pearson correlation of two equal-length series.

    Args:
        x: Series or 1-D array-like, length >= 2.
        y: same length as x.

    Returns:
        Correlation in [-1, 1].

    Raises:
        UndefinedCorrelationError: if either series is constant; the
            caller decides how to record that (the sweep writes n/a).
        ValueError: on length mismatch or length < 2.
    """
    xv = _as_values(x)
    yv = _as_values(y)
    if xv.shape != yv.shape:
        raise ValueError(f"length mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    if xv.shape[0] < 2:
        raise ValueError("correlation needs at least two points")
    xc = xv - xv.mean()
    yc = yv - yv.mean()
    sx = float(xc @ xc)
    sy = float(yc @ yc)
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for a constant series")
    r = float(xc @ yc) / np.sqrt(sx * sy)
    # Rounding can push |r| a hair past 1; keep the mathematical range.
    return float(np.clip(r, -1.0, 1.0))


def autocorrelation(x, lag: int) -> float:
    """Pearson correlation between a series and itself shifted by lag.

    Args:
        x: Series or 1-D array-like with more than lag + 1 points.
        lag: nonnegative shift; lag 0 gives 1.0 for any non-constant series.
    """
    xv = _as_values(x)
    if lag < 0:
        raise ValueError(f"lag must be nonnegative, got {lag}")
    if xv.shape[0] <= lag + 1:
        raise ValueError(f"series of length {xv.shape[0]} too short for lag {lag}")
    if lag == 0:
        return pearson(xv, xv)
    return pearson(xv[:-lag], xv[lag:])


def _average_ranks(v: np.ndarray) -> np.ndarray:
    """Ranks from 1, ties getting the mean of their covered ranks."""
    _, inverse, counts = np.unique(v, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    return starts[inverse] + (counts[inverse] - 1) / 2.0 + 1.0


def spearman(x, y) -> float:
    """Rank correlation: Pearson on average ranks of both series."""
    return pearson(_average_ranks(_as_values(x)), _average_ranks(_as_values(y)))


def histogram(
    values, bin_count: int, bounds: tuple[float, float]
) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width histogram with clamping instead of dropping.

    Values outside bounds land in the nearest edge bin, so the counts
    always sum to the input length. Bins are right-open except the last,
    which is closed: a value sitting exactly on an interior edge counts
    to the bin on its right.

    Args:
        values: 1-D array-like, empty allowed.
        bin_count: number of bins, >= 1.
        bounds: (lo, hi) with lo < hi.

    Returns:
        (counts, edges): int64 counts of length bin_count and the
        bin_count + 1 edges.
    """
    lo, hi = bounds
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    if not lo < hi:
        raise ValueError(f"bounds must satisfy lo < hi, got ({lo}, {hi})")
    arr = np.asarray(values, dtype=np.float64)
    if arr.size and not np.isfinite(arr).all():
        raise ValueError("histogram input contains non-finite values")
    clamped = np.clip(arr, lo, hi)
    counts, edges = np.histogram(clamped, bins=bin_count, range=(lo, hi))
    return counts.astype(np.int64), edges
