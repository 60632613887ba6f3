"""Relative motion of the payload while the carrier executes a motion law.

In the carrier frame the payload is an undamped oscillator driven by the
negative of the carrier acceleration:

    x_r'' + k**2 * x_r = -u(t),    x_r(0) = 0,  x_r'(0) = 0.

Both routes to the solution live here: the closed form, and a fixed-step
classical RK4 integrator that serves as an independent numerical check.  The
end-of-move state condenses into a ResidualReport whose phasor amplitude
sqrt(x**2 + (v/k)**2) is the size of the oscillation left behind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .motion import (DEFAULT_QUAD_INTERVALS, TWO_PI, MotionSpec, _like,
                     simpson_grid, timing_residual)
from .timeseries import TimeSeries, write_csv

#: default number of RK4 steps across one move
DEFAULT_RK4_STEPS = 20_000

#: coarsest admissible RK4 step, as a fraction of the oscillation period
MIN_STEPS_PER_PERIOD = 50

#: residual amplitudes below this fraction of the displacement count as quiescent
QUIESCENCE_TOL_FACTOR = 1e-6


def relative_motion(spec: MotionSpec, t):
    """Closed-form relative displacement, velocity and acceleration at time t.

    All three share the gain L*p**2 / (2*pi*(k**2 - p**2)); velocity and
    acceleration carry one extra factor p.
    """
    arr = spec._times(t)
    k, p = spec.k, spec.p
    gain = spec.L * p * p / (TWO_PI * (k * k - p * p))
    sin_k, sin_p = np.sin(k * arr), np.sin(p * arr)
    x = gain * (p / k * sin_k - sin_p)
    v = gain * p * (np.cos(k * arr) - np.cos(p * arr))
    a = gain * p * (p * sin_p - k * sin_k)
    return _like(t, x), _like(t, v), _like(t, a)


def final_relative_state(spec: MotionSpec) -> tuple[float, float]:
    """Relative displacement and velocity at t1, via angle-reduced evaluation.

    k*t1 = 2*pi*n and p*t1 = 2*pi, so the endpoint needs only the reduced
    residuals of the timing equations; integer n gives exact zeros.
    """
    cos_term, sin_term = timing_residual(spec.n)
    gain = spec.L * spec.p**2 / (TWO_PI * (spec.k**2 - spec.p**2))
    return gain * (spec.p / spec.k) * sin_term, gain * spec.p * cos_term


def oscillator_ode(k: float, forcing, state, t: float) -> tuple[float, float]:
    """Right side of the first-order system (x, v)' = (v, -k**2 * x - u(t))."""
    x, v = state
    return v, -k * k * x - forcing(t)


@dataclass(frozen=True, eq=False)
class OscillatorTrace:
    """Oscillator states on a uniform time grid."""

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    @property
    def final_state(self) -> tuple[float, float]:
        return float(self.x[-1]), float(self.v[-1])


def _forcing_values(forcing, times: np.ndarray) -> np.ndarray:
    """Evaluate forcing on a grid, vectorised when the callable allows it."""
    try:
        values = np.asarray(forcing(times), dtype=float)
        if values.shape == times.shape:
            return values
    except Exception:
        pass
    return np.array([float(forcing(t)) for t in times])


def integrate(forcing, k: float, t_end: float, step: float,
              initial_state: tuple[float, float] = (0.0, 0.0)) -> OscillatorTrace:
    """Fixed-step classical RK4 trajectory of the driven oscillator.

    The requested step is shrunk, if needed, so that a whole number of steps
    lands exactly on t_end.  Steps coarser than a fiftieth of the oscillation
    period are rejected.
    """
    if k <= 0.0 or t_end <= 0.0:
        raise ValueError("k and t_end must be positive")
    coarsest = TWO_PI / k / MIN_STEPS_PER_PERIOD
    if step <= 0.0 or step > coarsest:
        raise ValueError(
            f"integration step too coarse: need 0 < step <= {coarsest:.6g} s "
            f"({MIN_STEPS_PER_PERIOD} steps per oscillation period)")
    n_steps = max(1, math.ceil(t_end / step - 1e-9))
    times = t_end * np.arange(n_steps + 1) / n_steps
    mids = 0.5 * (times[:-1] + times[1:])
    u_nodes = _forcing_values(forcing, times)
    u_mids = _forcing_values(forcing, mids)
    h = t_end / n_steps
    ksq = k * k
    xs = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    x, v = float(initial_state[0]), float(initial_state[1])
    xs[0], vs[0] = x, v
    for i in range(n_steps):
        u0, um, u1 = u_nodes[i], u_mids[i], u_nodes[i + 1]
        k1x = v
        k1v = -ksq * x - u0
        k2x = v + 0.5 * h * k1v
        k2v = -ksq * (x + 0.5 * h * k1x) - um
        k3x = v + 0.5 * h * k2v
        k3v = -ksq * (x + 0.5 * h * k2x) - um
        k4x = v + h * k3v
        k4v = -ksq * (x + h * k3x) - u1
        x += h * (k1x + 2.0 * (k2x + k3x) + k4x) / 6.0
        v += h * (k1v + 2.0 * (k2v + k3v) + k4v) / 6.0
        xs[i + 1] = x
        vs[i + 1] = v
    return OscillatorTrace(t=times, x=xs, v=vs)


def simulate_relative(spec: MotionSpec, step: float | None = None) -> OscillatorTrace:
    """RK4 trace of the relative motion over the full move of a spec."""
    if step is None:
        step = spec.t1 / DEFAULT_RK4_STEPS
    return integrate(spec.acceleration, spec.k, spec.t1, step)


@dataclass(frozen=True)
class ResidualReport:
    """End-of-move quiescence summary for one motion spec."""

    spec: MotionSpec
    x_end: float       # relative displacement at t1 [m]
    v_end: float       # relative velocity at t1 [m/s]
    amplitude: float   # free-oscillation phasor sqrt(x_end**2 + (v_end/k)**2) [m]
    quiescent: bool
    action: float      # action value of the executed motion law [J*s]
    tolerance: float   # quiescence threshold on the amplitude [m]

    def as_dict(self) -> dict:
        return {
            "L": self.spec.L, "k": self.spec.k, "n": self.spec.n, "m": self.spec.m,
            "p": self.spec.p, "t1": self.spec.t1,
            "x_end": self.x_end, "v_end": self.v_end, "amplitude": self.amplitude,
            "quiescent": self.quiescent, "action": self.action,
            "tolerance": self.tolerance,
        }


def residual_report(spec: MotionSpec, trace: OscillatorTrace | None = None,
                    tolerance: float | None = None) -> ResidualReport:
    """Quiescence metrics at the end of the move.

    With a trace, the endpoint state comes from the integrator; otherwise from
    the closed form.  A report is quiescent only when the spec guarantees it
    (integer period multiple) and the residual amplitude is inside tolerance.
    """
    if tolerance is None:
        tolerance = QUIESCENCE_TOL_FACTOR * spec.L
    if trace is None:
        x_end, v_end = final_relative_state(spec)
    else:
        if trace.t[-1] < spec.t1 * (1.0 - 1e-9):
            raise ValueError("trace does not cover the whole move [0, t1]")
        idx = int(np.argmin(np.abs(trace.t - spec.t1)))
        x_end, v_end = float(trace.x[idx]), float(trace.v[idx])
    amplitude = math.hypot(x_end, v_end / spec.k)
    return ResidualReport(
        spec=spec, x_end=x_end, v_end=v_end, amplitude=amplitude,
        quiescent=spec.guarantees_quiescence and amplitude <= tolerance,
        action=action_value(spec), tolerance=tolerance)


def tip_trace(spec: MotionSpec, rate: float, kind: str = "acceleration") -> TimeSeries:
    """Absolute tip signal (carrier plus relative component), noise free.

    ``kind="acceleration"`` emulates an accelerometer riding on the payload
    tip; ``kind="position"`` gives the absolute tip position.
    """
    if rate <= 0.0:
        raise ValueError("sample rate must be positive")
    count = math.floor(rate * spec.t1) + 1
    t = np.arange(count) / rate
    x, _, a = relative_motion(spec, t)
    if kind == "acceleration":
        return TimeSeries(rate=rate, t0=0.0, values=spec.acceleration(t) + a, label="a_tip")
    if kind == "position":
        return TimeSeries(rate=rate, t0=0.0, values=spec.position(t) + x, label="x_tip")
    raise ValueError(f"unknown tip trace kind {kind!r}; use 'acceleration' or 'position'")


def action_value(spec: MotionSpec, position_fn=None, velocity_fn=None,
                 step: float | None = None) -> float:
    """Action of a trajectory under the move's mass, stiffness and drive work.

    The integrand is m*v**2/2 - m*p**2*s**2/2 + (m*L*p**3/(2*pi)) * t * s,
    with the effective stiffness recovered as m*k**2 so the softened term
    becomes m*p**2.  Defaults to the executed motion law; pass array-aware
    callables to evaluate perturbed trajectories.
    """
    s_fn = position_fn if position_fn is not None else spec.position
    v_fn = velocity_fn if velocity_fn is not None else spec.velocity
    if step is None:
        step = spec.t1 / DEFAULT_QUAD_INTERVALS
    grid = simpson_grid(spec.t1, step)
    s = np.asarray(s_fn(grid), dtype=float)
    v = np.asarray(v_fn(grid), dtype=float)
    drive = spec.m * spec.L * spec.p**3 / TWO_PI
    integrand = 0.5 * spec.m * v * v - 0.5 * spec.m * spec.p**2 * s * s + drive * grid * s
    return float(simpson(integrand, x=grid))


def euler_lagrange_residual(spec: MotionSpec, t, position_fn=None, accel_fn=None):
    """Residual s'' + p**2 * s - (L*p**3/(2*pi)) * t of the stationarity condition.

    Identically zero for the executed motion law; nonzero for any other
    trajectory, e.g. a constant-acceleration ramp.
    """
    s_fn = position_fn if position_fn is not None else spec.position
    a_fn = accel_fn if accel_fn is not None else spec.acceleration
    arr = np.asarray(t, dtype=float)
    res = (np.asarray(a_fn(arr), dtype=float)
           + spec.p**2 * np.asarray(s_fn(arr), dtype=float)
           - spec.L * spec.p**3 / TWO_PI * arr)
    return _like(t, res)


def write_relative_trace(path, spec: MotionSpec, trace: OscillatorTrace) -> None:
    """CSV of an integrated relative motion with header t,x_r,v_r,a_r."""
    u = _forcing_values(spec.acceleration, trace.t)
    a = -spec.k**2 * trace.x - u
    write_csv(path, ("t", "x_r", "v_r", "a_r"), (trace.t, trace.x, trace.v, a))
