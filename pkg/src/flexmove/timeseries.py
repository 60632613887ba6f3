"""Uniformly sampled scalar signals and their CSV round trip."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

#: significant digits written to CSV; enough for a lossless float round trip
CSV_DIGITS = 12


def fmt(x: float) -> str:
    """Format a float with CSV_DIGITS significant digits."""
    return format(float(x), f".{CSV_DIGITS}g")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A scalar signal sampled at a fixed rate.

    Attributes
    ----------
    rate : float
        Samples per second.
    t0 : float
        Time of the first sample [s].
    values : np.ndarray
        The samples, at least two of them.
    label : str
        Column name used when the series is written to CSV.
    stamps : np.ndarray | None
        Exact timestamps as read from a file, kept so a loaded trace writes
        back byte identically; processing always uses the uniform (t0, rate)
        model.
    """

    rate: float
    t0: float
    values: np.ndarray
    label: str = field(default="value", compare=False)
    stamps: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.rate) or self.rate <= 0.0:
            raise ValueError(f"sample rate must be positive and finite, got {self.rate!r}")
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or len(values) < 2:
            raise ValueError("a time series needs at least two samples")
        object.__setattr__(self, "values", values)
        if self.stamps is not None and len(self.stamps) != len(values):
            raise ValueError("timestamps and values differ in length")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def times(self) -> np.ndarray:
        if self.stamps is not None:
            return self.stamps
        return self.t0 + np.arange(len(self.values)) / self.rate


def write_csv(path, header, columns) -> None:
    """Write equal-length numeric columns under a comma-separated header."""
    columns = [np.asarray(col, dtype=float) for col in columns]
    length = len(columns[0])
    if any(len(col) != length for col in columns):
        raise ValueError("columns differ in length")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(length):
            fh.write(",".join(fmt(col[i]) for col in columns) + "\n")


def read_numeric_csv(path, n_columns: int | None = None):
    """Read a headered CSV of floats; returns (header, list of column arrays).

    Raises ValueError with a distinct message for an empty file, a ragged or
    wrongly sized row, and any cell that does not parse as a number.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = [name.strip() for name in rows[0]]
    if n_columns is not None and len(header) != n_columns:
        raise ValueError(
            f"{path}: expected {n_columns} columns, found {len(header)} ({','.join(header)})")
    data = [[] for _ in header]
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ValueError(f"{path}: line {lineno} has {len(row)} cells, expected {len(header)}")
        for col, cell in zip(data, row):
            try:
                col.append(float(cell))
            except ValueError:
                raise ValueError(f"{path}: non-numeric cell {cell.strip()!r} on line {lineno}") from None
    return header, [np.asarray(col) for col in data]


#: allowed relative deviation of any time step from the median step
JITTER_TOL = 1e-3


def uniform_rate(t: np.ndarray, context: str = "trace") -> float:
    """Sample rate inferred from the median time step; rejects jittered stamps."""
    if len(t) < 2:
        raise ValueError(f"{context} must contain at least two rows")
    steps = np.diff(t)
    median = float(np.median(steps))
    if median <= 0.0:
        raise ValueError(f"{context}: time column must be strictly increasing")
    if np.max(np.abs(steps - median)) > JITTER_TOL * median:
        raise ValueError(
            f"{context}: non-uniform sampling, time steps deviate more than "
            f"{JITTER_TOL:.0%} from the median step {median:.6g} s")
    return 1.0 / median


def load_trace(path) -> TimeSeries:
    """Read a two-column `t,<value>` CSV into a TimeSeries."""
    header, (t, values) = read_numeric_csv(path, n_columns=2)
    rate = uniform_rate(t, context=f"{path}")
    return TimeSeries(rate=rate, t0=float(t[0]), values=values, label=header[1], stamps=t)


def save_trace(path, series: TimeSeries, label: str | None = None) -> None:
    """Write a TimeSeries as a two-column `t,<value>` CSV."""
    write_csv(path, ("t", label or series.label), (series.times, series.values))
