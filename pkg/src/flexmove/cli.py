"""Command-line surface: plan setpoints, simulate, sweep, filter and report.

All quantities are SI.  Flags override values from an optional JSON config
document (--config), whose keys equal the long flag names with dashes turned
into underscores.  Every validation failure exits with status 2 and a
one-line diagnostic; I/O failures exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import amplitude_table, sweep_n
from .beam import load_beam
from .filters import design_butterworth, filtfilt
from .motion import MotionSpec
from .oscillator import residual_report, simulate_relative, write_relative_trace
from .timeseries import fmt, load_trace, save_trace


def _load_config(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    return doc


class _Options:
    """Flag values with config-file fallback (flags win when given)."""

    def __init__(self, args: argparse.Namespace):
        self._args = args
        self._config = _load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, key, default=None):
        value = getattr(self._args, key, None)
        if value is not None:
            return value
        return self._config.get(key, default)

    def require(self, key, flag: str):
        value = self.get(key)
        if value is None:
            raise ValueError(f"missing required option {flag}")
        return value

    def flag(self, key) -> bool:
        return bool(getattr(self._args, key, False) or self._config.get(key, False))


def _resolve_spec(opt: _Options) -> MotionSpec:
    L = float(opt.require("L", "--L"))
    n = float(opt.require("n", "--n"))
    exploratory = opt.flag("exploratory")
    k = opt.get("k")
    beam_path = opt.get("beam")
    mass = opt.get("mass")
    if k is not None and beam_path is not None:
        raise ValueError("give exactly one frequency source: --k or --beam, not both")
    if beam_path is not None:
        beam = load_beam(beam_path, tip_mass=None if mass is None else float(mass))
        return MotionSpec.from_beam(beam, L=L, n=n, exploratory=exploratory)
    if k is None:
        raise ValueError("a frequency source is required: --k or --beam")
    if mass is None:
        raise ValueError("missing required option --mass (carried object mass)")
    return MotionSpec(L=L, k=float(k), n=n, m=float(mass), exploratory=exploratory)


def _cmd_plan(args) -> int:
    opt = _Options(args)
    spec = _resolve_spec(opt)
    rate = float(opt.get("rate", 1500.0))
    table = spec.sample_uniform(rate)
    table.write_csv(opt.require("out", "--out"))
    print(f"t1 = {fmt(spec.t1)} s")
    print(f"p = {fmt(spec.p)} rad/s")
    print(f"peak acceleration = {fmt(spec.peak_acceleration)} m/s^2")
    return 0


def _cmd_simulate(args) -> int:
    opt = _Options(args)
    spec = _resolve_spec(opt)
    step = opt.get("step")
    trace = simulate_relative(spec, None if step is None else float(step))
    report = residual_report(spec, trace)
    trace_out = opt.get("trace_out")
    if trace_out is not None:
        write_relative_trace(trace_out, spec, trace)
    print(json.dumps(report.as_dict(), indent=2))
    return 0


def _cmd_sweep(args) -> int:
    opt = _Options(args)
    L = float(opt.require("L", "--L"))
    mass = float(opt.require("mass", "--mass"))
    k = opt.get("k")
    beam_path = opt.get("beam")
    if k is not None and beam_path is not None:
        raise ValueError("give exactly one frequency source: --k or --beam, not both")
    if beam_path is not None:
        k = load_beam(beam_path, tip_mass=mass).frequency
    elif k is None:
        raise ValueError("a frequency source is required: --k or --beam")
    result = sweep_n(L=L, k=float(k), m=mass,
                     n_from=float(opt.require("n_from", "--n-from")),
                     n_to=float(opt.require("n_to", "--n-to")),
                     step=float(opt.require("step", "--step")))
    out = opt.require("out", "--out")
    result.write_csv(out)
    print(f"wrote {len(result)} rows to {out}")
    return 0


def _cmd_filter(args) -> int:
    opt = _Options(args)
    series = load_trace(opt.require("infile", "--in"))
    design = design_butterworth(order=int(opt.get("order", 4)),
                                cutoff_hz=float(opt.get("cutoff_hz", 20.0)),
                                rate_hz=series.rate)
    save_trace(opt.require("out", "--out"), filtfilt(design, series))
    return 0


def _cmd_report(args) -> int:
    opt = _Options(args)
    beam_path = opt.require("beam", "--beam")
    masses_raw = opt.require("masses", "--masses")
    if isinstance(masses_raw, str):
        masses = [float(item) for item in masses_raw.split(",") if item.strip()]
    else:
        masses = [float(item) for item in masses_raw]
    table = amplitude_table(
        masses, load_beam(beam_path, tip_mass=masses[0] if masses else None),
        L=float(opt.require("L", "--L")),
        n=float(opt.get("n", 2.0)),
        unmatched_n=float(opt.get("unmatched_n", 2.5)))
    out = opt.get("out")
    if out is not None:
        table.write_csv(out)
    print(table.to_text())
    return 0


def _add_motion_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--L", type=float, help="displacement of the move [m]")
    parser.add_argument("--k", type=float, help="payload natural angular frequency [rad/s]")
    parser.add_argument("--beam", help="JSON beam document supplying the frequency")
    parser.add_argument("--mass", type=float, help="carried object mass [kg]")
    parser.add_argument("--n", type=float, help="period multiple t1/t_c (integer >= 2 unless --exploratory)")
    parser.add_argument("--exploratory", action="store_true",
                        help="allow non-integer n > 1 (move will not end quiescent)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexmove",
        description="Plan and analyse oscillation-free moves of flexible payloads.")
    sub = parser.add_subparsers(dest="command", required=True)

    plan = sub.add_parser("plan", help="write a t,s,v,a setpoint CSV for one move")
    _add_motion_arguments(plan)
    plan.add_argument("--rate", type=float, help="setpoint sample rate [Hz] (default 1500)")
    plan.add_argument("--out", help="output CSV path")
    plan.add_argument("--config", help="JSON config document; flags override it")
    plan.set_defaults(handler=_cmd_plan)

    simulate = sub.add_parser("simulate", help="integrate the relative motion and report quiescence")
    _add_motion_arguments(simulate)
    simulate.add_argument("--step", type=float, help="RK4 time step [s] (default t1/20000)")
    simulate.add_argument("--trace-out", dest="trace_out", help="optional t,x_r,v_r,a_r CSV path")
    simulate.add_argument("--config", help="JSON config document; flags override it")
    simulate.set_defaults(handler=_cmd_simulate)

    sweep = sub.add_parser("sweep", help="scan the period multiple and tabulate residuals")
    sweep.add_argument("--L", type=float, help="displacement of the move [m]")
    sweep.add_argument("--k", type=float, help="payload natural angular frequency [rad/s]")
    sweep.add_argument("--beam", help="JSON beam document supplying the frequency")
    sweep.add_argument("--mass", type=float, help="carried object mass [kg]")
    sweep.add_argument("--n-from", dest="n_from", type=float, help="first period multiple (> 1)")
    sweep.add_argument("--n-to", dest="n_to", type=float, help="last period multiple")
    sweep.add_argument("--step", type=float, help="multiple increment")
    sweep.add_argument("--out", help="output CSV path")
    sweep.add_argument("--config", help="JSON config document; flags override it")
    sweep.set_defaults(handler=_cmd_sweep)

    filt = sub.add_parser("filter", help="zero-phase low-pass a t,<value> trace CSV")
    filt.add_argument("--in", dest="infile", help="input trace CSV")
    filt.add_argument("--out", help="output trace CSV")
    filt.add_argument("--order", type=int, help="filter order (2, 4, 6 or 8; default 4)")
    filt.add_argument("--cutoff-hz", dest="cutoff_hz", type=float, help="cutoff frequency [Hz] (default 20)")
    filt.add_argument("--config", help="JSON config document; flags override it")
    filt.set_defaults(handler=_cmd_filter)

    report = sub.add_parser("report", help="matched vs mistimed amplitude table across masses")
    report.add_argument("--beam", help="JSON beam document (geometry and material)")
    report.add_argument("--masses", help="comma-separated carried masses [kg]")
    report.add_argument("--L", type=float, help="displacement of the move [m]")
    report.add_argument("--n", type=float, help="matched period multiple (default 2)")
    report.add_argument("--unmatched-n", dest="unmatched_n", type=float,
                        help="mistimed period multiple (default 2.5)")
    report.add_argument("--out", help="optional CSV output path")
    report.add_argument("--config", help="JSON config document; flags override it")
    report.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
