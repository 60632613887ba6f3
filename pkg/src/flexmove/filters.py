"""Zero-phase Butterworth low-pass filtering for tip-motion traces.

Designs are cascades of second-order sections obtained from the analog
Butterworth prototype through the bilinear transform with frequency
prewarping.  Filtering runs the cascade forward and then backward over the
signal, so the combined pass squares the magnitude response and leaves no
phase shift: waveform features stay where they happened.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .timeseries import TimeSeries

ALLOWED_ORDERS = (2, 4, 6, 8)

#: odd-reflection pad length per end, in multiples of the filter order
PAD_FACTOR = 3


@dataclass(frozen=True)
class Biquad:
    """One second-order section, denominator normalised to a0 = 1."""

    b0: float
    b1: float
    b2: float
    a1: float
    a2: float

    def is_stable(self) -> bool:
        # Schur triangle: both poles strictly inside the unit circle.
        return abs(self.a2) < 1.0 and abs(self.a1) < 1.0 + self.a2


@dataclass(frozen=True)
class FilterDesign:
    """Low-pass design as cascaded biquads, tied to one sample rate."""

    order: int
    cutoff_hz: float
    rate_hz: float
    sections: tuple[Biquad, ...]

    def __post_init__(self) -> None:
        if self.order not in ALLOWED_ORDERS:
            raise ValueError(f"filter order must be one of {ALLOWED_ORDERS}, got {self.order}")
        if not 0.0 < self.cutoff_hz < 0.5 * self.rate_hz:
            raise ValueError(
                f"cutoff must lie strictly between 0 and the Nyquist frequency "
                f"{0.5 * self.rate_hz:g} Hz, got {self.cutoff_hz:g} Hz")
        if len(self.sections) != self.order // 2:
            raise ValueError("cascade must hold order/2 sections")
        if not all(sec.is_stable() for sec in self.sections):
            raise ValueError("unstable section: poles must lie inside the unit circle")


def design_butterworth(order: int, cutoff_hz: float, rate_hz: float) -> FilterDesign:
    """Butterworth low-pass as second-order sections (bilinear, prewarped).

    Each analog pole pair with damping sin((2i+1)*pi/(2*order)) maps to one
    biquad; every section has unit DC gain, so the cascade does too.
    """
    if order not in ALLOWED_ORDERS:
        raise ValueError(f"filter order must be one of {ALLOWED_ORDERS}, got {order}")
    if rate_hz <= 0.0:
        raise ValueError("sample rate must be positive")
    if not 0.0 < cutoff_hz < 0.5 * rate_hz:
        raise ValueError(
            f"cutoff must lie strictly between 0 and the Nyquist frequency "
            f"{0.5 * rate_hz:g} Hz, got {cutoff_hz:g} Hz")
    warp = math.tan(math.pi * cutoff_hz / rate_hz)
    w2 = warp * warp
    sections = []
    for i in range(order // 2):
        damp = math.sin(math.pi * (2 * i + 1) / (2 * order))
        norm = w2 + 2.0 * warp * damp + 1.0
        sections.append(Biquad(
            b0=w2 / norm, b1=2.0 * w2 / norm, b2=w2 / norm,
            a1=2.0 * (w2 - 1.0) / norm, a2=(w2 - 2.0 * warp * damp + 1.0) / norm))
    return FilterDesign(order=order, cutoff_hz=cutoff_hz, rate_hz=rate_hz,
                        sections=tuple(sections))


def transfer(design: FilterDesign, freq_hz):
    """Single-pass frequency response of the cascade at the given frequencies."""
    f = np.asarray(freq_hz, dtype=float)
    z1 = np.exp(-2j * np.pi * f / design.rate_hz)
    z2 = z1 * z1
    h = np.ones_like(z1, dtype=complex)
    for sec in design.sections:
        h = h * (sec.b0 + sec.b1 * z1 + sec.b2 * z2) / (1.0 + sec.a1 * z1 + sec.a2 * z2)
    return complex(h) if np.ndim(freq_hz) == 0 else h


def magnitude_response(design: FilterDesign, freq_hz):
    """Single-pass gain |H(f)|; the forward-backward pass applies its square."""
    h = transfer(design, freq_hz)
    return abs(h) if np.ndim(freq_hz) == 0 else np.abs(h)


def _biquad_pass(sec: Biquad, x: np.ndarray) -> np.ndarray:
    # Transposed direct form II with zero initial state.
    b0, b1, b2, a1, a2 = sec.b0, sec.b1, sec.b2, sec.a1, sec.a2
    y = np.empty_like(x)
    z1 = 0.0
    z2 = 0.0
    for i, xi in enumerate(x):
        yi = b0 * xi + z1
        z1 = b1 * xi + z2 - a1 * yi
        z2 = b2 * xi - a2 * yi
        y[i] = yi
    return y


def _cascade(design: FilterDesign, x: np.ndarray) -> np.ndarray:
    # Filter the deviation from the first sample: with unit DC gain the zero
    # state is then the exact steady state for the leading value, so constant
    # signals pass through bit exact and start-up transients stay small.
    offset = x[0]
    y = x - offset
    for sec in design.sections:
        y = _biquad_pass(sec, y)
    return y + offset


def filtfilt(design: FilterDesign, series: TimeSeries) -> TimeSeries:
    """Forward-backward pass of the cascade: squared magnitude, zero phase.

    Both ends are extended with odd reflections (PAD_FACTOR * order samples
    each) before filtering and trimmed afterwards, which keeps boundary
    transients out of the returned signal.
    """
    if not math.isclose(series.rate, design.rate_hz, rel_tol=1e-6):
        raise ValueError(
            f"series rate {series.rate:g} Hz does not match the design rate "
            f"{design.rate_hz:g} Hz")
    x = np.asarray(series.values, dtype=float)
    pad = PAD_FACTOR * design.order
    if len(x) <= pad:
        raise ValueError(f"series too short to filter: need more than {pad} samples, got {len(x)}")
    head = 2.0 * x[0] - x[pad:0:-1]
    tail = 2.0 * x[-1] - x[-2:-pad - 2:-1]
    padded = np.concatenate((head, x, tail))
    forward = _cascade(design, padded)
    backward = _cascade(design, forward[::-1])[::-1]
    return TimeSeries(rate=series.rate, t0=series.t0,
                      values=backward[pad:-pad].copy(), label=series.label,
                      stamps=series.stamps)
