"""Frequency-matched translational motion law for carrying flexible payloads.

The carrier accelerates with a single-period sine control u(t) = a*sin(p*t)
whose rate p is the payload's natural angular frequency k divided by the
period multiple n = t1/t_c.  When n is an integer >= 2 the move spans a whole
number of natural oscillation periods and the payload arrives with zero
relative displacement and velocity; any other timing leaves a residual
oscillation at the end of the move.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import simpson

from .timeseries import read_numeric_csv, uniform_rate, write_csv

TWO_PI = 2.0 * math.pi

#: default quadrature resolution: intervals per move
DEFAULT_QUAD_INTERVALS = 100_000


def simpson_grid(t_end: float, step: float) -> np.ndarray:
    """Uniform quadrature grid on [0, t_end] with an even number of intervals."""
    if step <= 0.0:
        raise ValueError("quadrature step must be positive")
    n = max(2, math.ceil(t_end / step))
    if n % 2:
        n += 1
    return np.linspace(0.0, t_end, n + 1)


def timing_residual(n: float) -> tuple[float, float]:
    """Residual pair (cos(2*pi*n) - 1, sin(2*pi*n)) of the quiescence timing equations.

    Both terms vanish exactly when the period multiple n is an integer.  The
    angle is reduced through the fractional part of n before evaluation, so
    integer n yields machine zeros instead of rounding noise from cos/sin of
    large arguments.
    """
    if n <= 1.0:
        raise ValueError("period multiple n must exceed 1")
    theta = TWO_PI * (n - math.floor(n))
    return math.cos(theta) - 1.0, math.sin(theta)


def _like(t, values) -> float | np.ndarray:
    """Return a scalar for scalar input, an array otherwise."""
    return float(values) if np.ndim(t) == 0 else np.asarray(values)


class MomentIntegrals(NamedTuple):
    """Quadrature moments of one move, taken over [0, t1]."""

    impulse: float      # integral of a(t) dt; zero for any whole control period
    distance: float     # integral of v(t) dt; equals the displacement L
    cos_moment: float   # integral of a(t) cos(k t) dt; vanishes iff n is an integer
    sin_moment: float   # integral of a(t) sin(k t) dt; vanishes iff n is an integer


@dataclass(frozen=True)
class MotionSample:
    """Kinematic state of the carrier at one instant."""

    t: float
    s: float
    v: float
    a: float


@dataclass(frozen=True, eq=False)
class SetpointTable:
    """Uniformly sampled motion setpoints (time, position, velocity, acceleration)."""

    rate: float
    t: np.ndarray
    s: np.ndarray
    v: np.ndarray
    a: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def row(self, i: int) -> MotionSample:
        return MotionSample(float(self.t[i]), float(self.s[i]),
                            float(self.v[i]), float(self.a[i]))

    def write_csv(self, path) -> None:
        write_csv(path, ("t", "s", "v", "a"), (self.t, self.s, self.v, self.a))

    def acceleration_interpolant(self) -> Callable:
        """Piecewise-linear acceleration lookup, usable as integrator forcing."""
        t, a = self.t, self.a

        def forcing(q):
            return np.interp(q, t, a)

        return forcing


def load_setpoints(path) -> SetpointTable:
    """Read a `t,s,v,a` setpoint CSV written by :meth:`SetpointTable.write_csv`."""
    _, (t, s, v, a) = read_numeric_csv(path, n_columns=4)
    rate = uniform_rate(t, context=f"{path}")
    return SetpointTable(rate=rate, t=t, s=s, v=v, a=a)


@dataclass(frozen=True)
class MotionSpec:
    """One point-to-point move of a flexible payload.

    Parameters
    ----------
    L : float
        Total displacement of the carried object [m].
    k : float
        Natural angular frequency of the payload's relative oscillation [rad/s].
    n : float
        Period multiple t1/t_c.  Must be an integer >= 2 unless
        ``exploratory=True``, which admits any real n > 1 for studying
        mistimed moves.  Exploratory specs are never labelled quiescent.
    m : float
        Carried mass [kg].  The motion law itself is mass independent; the
        mass enters the action and energy figures.

    Derived attributes: ``p`` (forcing angular frequency k/n), ``t1`` (total
    motion time 2*pi/p) and ``t_c`` (natural period 2*pi/k).
    """

    L: float
    k: float
    n: float
    m: float
    exploratory: bool = False
    p: float = field(init=False, repr=False)
    t1: float = field(init=False, repr=False)
    t_c: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("L", "k", "n", "m"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.exploratory:
            if self.n <= 1.0:
                raise ValueError(
                    "period multiple n must exceed 1 (n = 1 forces the payload at "
                    "resonance, n < 1 above it)")
        else:
            if not float(self.n).is_integer():
                raise ValueError(
                    f"period multiple n = {self.n} is not an integer; pass "
                    "exploratory=True to study mistimed moves")
            if self.n < 2.0:
                raise ValueError(
                    "period multiple n must be at least 2; n = 1 is the resonant multiple")
        object.__setattr__(self, "p", self.k / self.n)
        object.__setattr__(self, "t1", TWO_PI / self.p)
        object.__setattr__(self, "t_c", TWO_PI / self.k)

    @classmethod
    def from_beam(cls, beam, L: float, n: float, exploratory: bool = False) -> "MotionSpec":
        """Build a spec whose frequency and mass come from a cantilever payload."""
        return cls(L=L, k=beam.frequency, n=n, m=beam.m_tip, exploratory=exploratory)

    @property
    def guarantees_quiescence(self) -> bool:
        """True for strict specs (integer n >= 2); exploratory moves never qualify."""
        return not self.exploratory

    @property
    def peak_acceleration(self) -> float:
        """Control amplitude a = L * p**2 / (2*pi) [m/s^2]."""
        return self.L * self.p**2 / TWO_PI

    def _times(self, t) -> np.ndarray:
        arr = np.asarray(t, dtype=float)
        slack = 1e-12 * self.t1
        if np.any(arr < -slack) or np.any(arr > self.t1 + slack):
            raise ValueError(f"time outside the motion interval [0, {self.t1:.12g}] s")
        return arr

    def position(self, t) -> float | np.ndarray:
        """Carrier position s(t) = L/(2*pi) * (p*t - sin(p*t)) for t in [0, t1]."""
        arr = self._times(t)
        return _like(t, self.L / TWO_PI * (self.p * arr - np.sin(self.p * arr)))

    def velocity(self, t) -> float | np.ndarray:
        """Carrier velocity v(t) = L*p/(2*pi) * (1 - cos(p*t)); non-negative."""
        arr = self._times(t)
        return _like(t, self.L * self.p / TWO_PI * (1.0 - np.cos(self.p * arr)))

    def acceleration(self, t) -> float | np.ndarray:
        """Carrier acceleration u(t) = L*p**2/(2*pi) * sin(p*t); skew symmetric."""
        arr = self._times(t)
        return _like(t, self.L * self.p**2 / TWO_PI * np.sin(self.p * arr))

    def sample(self, t: float) -> MotionSample:
        return MotionSample(float(t), self.position(t), self.velocity(t), self.acceleration(t))

    def sample_uniform(self, rate: float) -> SetpointTable:
        """Sample the motion law on the grid i/rate, i = 0 .. floor(rate*t1)."""
        if rate <= 0.0:
            raise ValueError("sample rate must be positive")
        count = math.floor(rate * self.t1) + 1
        t = np.arange(count) / rate
        return SetpointTable(rate=rate, t=t, s=self.position(t),
                             v=self.velocity(t), a=self.acceleration(t))

    def moment_integrals(self, step: float | None = None) -> MomentIntegrals:
        """Composite-Simpson moments of the control and velocity over the move."""
        if step is None:
            step = self.t1 / DEFAULT_QUAD_INTERVALS
        if step > self.t_c / 10.0:
            raise ValueError(
                "quadrature step must resolve the natural period (step <= t_c/10)")
        grid = simpson_grid(self.t1, step)
        u = self.acceleration(grid)
        v = self.velocity(grid)
        return MomentIntegrals(
            impulse=float(simpson(u, x=grid)),
            distance=float(simpson(v, x=grid)),
            cos_moment=float(simpson(u * np.cos(self.k * grid), x=grid)),
            sin_moment=float(simpson(u * np.sin(self.k * grid), x=grid)),
        )
