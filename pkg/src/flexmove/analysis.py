"""Sweeps and comparisons: residual amplitude versus move timing, drive cost,
and the matched-versus-mistimed amplitude table across carried masses."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .beam import BeamSpec
from .motion import DEFAULT_QUAD_INTERVALS, MotionSpec, simpson_grid
from .oscillator import ResidualReport, final_relative_state
from .timeseries import write_csv

#: how close a swept multiple must sit to an integer to count as matched
INTEGER_N_TOL = 1e-9


def _spec_for(L: float, k: float, m: float, n: float) -> MotionSpec:
    """Strict spec at integer multiples, exploratory spec elsewhere."""
    rounded = round(n)
    if abs(n - rounded) <= INTEGER_N_TOL * max(1.0, abs(n)) and rounded >= 2:
        return MotionSpec(L=L, k=k, n=float(rounded), m=m)
    return MotionSpec(L=L, k=k, n=float(n), m=m, exploratory=True)


def residual_amplitude(L: float, k: float, n: float) -> float:
    """Closed-form end-of-move oscillation amplitude; mass independent."""
    x_end, v_end = final_relative_state(_spec_for(L, k, 1.0, n))
    return math.hypot(x_end, v_end / k)


@dataclass(frozen=True)
class SweepRow:
    n: float
    t1: float
    residual: float
    energy: float
    quiescent: bool


@dataclass(frozen=True)
class SweepResult:
    """Residual amplitude and drive cost over a grid of period multiples."""

    L: float
    k: float
    m: float
    rows: tuple[SweepRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def write_csv(self, path) -> None:
        write_csv(
            path, ("n", "t1", "residual", "energy", "quiescent"),
            ([r.n for r in self.rows], [r.t1 for r in self.rows],
             [r.residual for r in self.rows], [r.energy for r in self.rows],
             [int(r.quiescent) for r in self.rows]))


def sweep_n(L: float, k: float, m: float, n_from: float, n_to: float,
            step: float) -> SweepResult:
    """Closed-form residual and energy figure on a uniform grid of multiples.

    Rows at integer n >= 2 are flagged quiescent; all grid points must stay
    above the resonant multiple n = 1.
    """
    if n_from <= 1.0:
        raise ValueError("sweep range must stay above n = 1 (resonant multiple)")
    if step <= 0.0:
        raise ValueError("sweep step must be positive")
    if n_to < n_from:
        raise ValueError("need n_to >= n_from")
    count = int(math.floor((n_to - n_from) / step + 1e-9)) + 1
    rows = []
    for i in range(count):
        n = n_from + i * step
        spec = _spec_for(L, k, m, n)
        x_end, v_end = final_relative_state(spec)
        rows.append(SweepRow(
            n=n, t1=spec.t1, residual=math.hypot(x_end, v_end / k),
            energy=energy_figure(spec), quiescent=spec.guarantees_quiescence))
    return SweepResult(L=L, k=k, m=m, rows=tuple(rows))


def energy_figure(spec: MotionSpec, step: float | None = None) -> float:
    """Drive-cost figure: integral of m * |u(t) * v(t)| over the move [J].

    For the sine control the magnitude of the instantaneous drive power
    integrates to m * L**2 * p**2 / pi**2; quadrature keeps the figure honest
    under resampling or perturbed laws.
    """
    if step is None:
        step = spec.t1 / DEFAULT_QUAD_INTERVALS
    grid = simpson_grid(spec.t1, step)
    power = np.abs(spec.acceleration(grid) * spec.velocity(grid))
    return float(spec.m * simpson(power, x=grid))


def suppression_ratio(matched: ResidualReport, unmatched: ResidualReport) -> float:
    """How much larger the mistimed residual is, floored at the matched tolerance."""
    for attr in ("L", "k", "m"):
        a, b = getattr(matched.spec, attr), getattr(unmatched.spec, attr)
        if not math.isclose(a, b, rel_tol=1e-12):
            raise ValueError(f"reports describe different moves: {attr} differs ({a} vs {b})")
    return unmatched.amplitude / max(matched.amplitude, matched.tolerance)


TABLE_CAPTION = ("noise-free simulation; matched moves end quiescent by construction. "
                 "Bench measurements (sensor noise, drive ripple) are not reproduced here.")


@dataclass(frozen=True)
class AmplitudeTable:
    """Matched versus mistimed residual amplitudes across carried masses."""

    masses: tuple[float, ...]
    frequencies: tuple[float, ...]
    matched_n: float
    unmatched_n: float
    matched: tuple[float, ...]
    unmatched: tuple[float, ...]
    caption: str = TABLE_CAPTION

    def to_text(self) -> str:
        width = 12
        label_width = 24

        def line(label, values, fmt="{:>{w}.4g}"):
            cells = "".join(fmt.format(v, w=width) for v in values)
            return f"{label:<{label_width}}{cells}"

        rows = [
            "residual tip oscillation amplitude [m] per carried mass",
            line("mass [kg]", self.masses),
            line("k [rad/s]", self.frequencies),
            line(f"n={self.unmatched_n:g} (mistimed)", self.unmatched, "{:>{w}.3e}"),
            line(f"n={self.matched_n:g} (matched)", self.matched, "{:>{w}.3e}"),
            f"note: {self.caption}",
        ]
        return "\n".join(rows)

    def write_csv(self, path) -> None:
        write_csv(path, ("mass", "k", "matched_amplitude", "unmatched_amplitude"),
                  (self.masses, self.frequencies, self.matched, self.unmatched))


def amplitude_table(masses, beam: BeamSpec, L: float, n: float = 2.0,
                    unmatched_n: float = 2.5) -> AmplitudeTable:
    """Residual amplitude per carried mass, matched timing versus mistimed.

    Each mass gets its own natural frequency from the beam geometry; the
    matched column uses the integer multiple n, the mistimed column the
    non-integer unmatched_n with the same control shape.
    """
    masses = tuple(float(m) for m in masses)
    if not masses:
        raise ValueError("at least one carried mass is required")
    if any(m <= 0.0 for m in masses):
        raise ValueError("carried masses must be positive")
    freqs, matched_amps, unmatched_amps = [], [], []
    for m in masses:
        k = BeamSpec(l=beam.l, b=beam.b, h=beam.h, E=beam.E, m_tip=m).frequency
        freqs.append(k)
        matched_amps.append(residual_amplitude(L, k, n))
        unmatched_amps.append(residual_amplitude(L, k, unmatched_n))
    return AmplitudeTable(masses=masses, frequencies=tuple(freqs),
                          matched_n=float(n), unmatched_n=float(unmatched_n),
                          matched=tuple(matched_amps), unmatched=tuple(unmatched_amps))
