"""Command-line front end.

Angles are accepted as multiples of pi (``pi/2``, ``0.765pi``, ``3pi/8``)
or as plain radians. Grids: ``start:stop:step`` (inclusive, angle tokens
allowed), ``log:start:stop:count``, ``lin:start:stop:count``, or a comma
list. Horizons: a time in 1/J, or ``<m>N`` meaning m*N/J. A JSON config
file provides defaults; command-line flags override file values. Every
parameter used is echoed into the artifact metadata.

Exit codes: 0 success, 2 configuration errors, 3 numerical failures.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import __version__
from . import io as artifact_io
from .bessel import bessel_j, bessel_j0_zero
from .errors import ConfigError, NumericalError
from .evolution import SamplingPolicy, average_fidelity, evolve
from .ring import RingConfig, momentum_grid, validate_config
from .states import canonical_state_spec, parse_state_spec, to_site_basis
from .sweeps import (
    DESK_SITES,
    PAPER_SITES,
    SINE_CURVE_AMPLITUDES,
    SQUARE_CURVE_AMPLITUDES,
    fidelity_vs_frequency,
    sweep_amp_freq,
    threshold_curves,
)
from .waveforms import FluxWaveform

_ANGLE_RE = re.compile(
    r"^(?P<sign>[+-])?(?P<coef>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?"
    r"pi(?:/(?P<den>\d+(?:\.\d*)?))?$"
)


def parse_angle(text: str) -> float:
    """Parse ``pi/2``, ``0.765pi``, ``3pi/8``, or plain radians."""
    s = str(text).strip().replace(" ", "")
    m = _ANGLE_RE.match(s)
    if m:
        value = math.pi
        if m.group("coef"):
            value *= float(m.group("coef"))
        if m.group("den"):
            value /= float(m.group("den"))
        if m.group("sign") == "-":
            value = -value
        return value
    try:
        return float(s)
    except ValueError:
        raise ConfigError(f"unparseable angle {text!r}") from None


def parse_grid(text: str) -> np.ndarray:
    """Parse a grid spec into an ascending array of floats."""
    s = str(text).strip()
    if s.startswith("log:") or s.startswith("lin:"):
        kind, a, b, n = s.split(":")
        a, b, n = parse_angle(a), parse_angle(b), int(n)
        if n < 1:
            raise ConfigError(f"grid count must be >= 1, got {n}")
        space = np.geomspace if kind == "log" else np.linspace
        return space(a, b, n)
    if "," in s:
        return np.array([parse_angle(p) for p in s.split(",")])
    parts = s.split(":")
    if len(parts) == 3:
        a, b, step = (parse_angle(p) for p in parts)
        if step <= 0:
            raise ConfigError(f"grid step must be > 0 in {text!r}")
        n = int(math.floor((b - a) / step + 1e-9)) + 1
        vals = a + step * np.arange(max(n, 1))
        if abs(vals[-1] - b) < 1e-9 * max(abs(b), 1.0):
            vals[-1] = b
        return vals
    return np.array([parse_angle(s)])


def parse_horizon(text: str, config: RingConfig) -> float:
    s = str(text).strip()
    m = re.match(r"^(\d+(?:\.\d*)?)\s*N$", s, re.IGNORECASE)
    if m:
        return float(m.group(1)) * config.n_sites / config.hopping
    try:
        return float(s)
    except ValueError:
        raise ConfigError(f"unparseable horizon {text!r}") from None


def _add_common(p):
    p.add_argument("--config", help="JSON file with defaults for these flags")
    p.add_argument("--n", type=int, default=DESK_SITES, help="ring sites N")
    p.add_argument("--j", type=float, default=1.0, help="hopping energy J")
    p.add_argument("--phi0", default="0", help="static flux phase (angle)")
    p.add_argument("--threads", type=int, default=None, help="worker cap")
    p.add_argument(
        "--preset",
        choices=["desk", "paper"],
        default=None,
        help=f"shortcut for N: desk={DESK_SITES}, paper={PAPER_SITES}",
    )
    p.add_argument("--steps-per-period", type=int, default=64)
    p.add_argument("--coarse-dt", type=float, default=0.05)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fluxring",
        description="flux-driven ring dynamics: sweeps, curves, thresholds",
    )
    ap.add_argument("--version", action="version", version=f"fluxring {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="average fidelity over an amplitude x frequency grid")
    _add_common(p)
    p.add_argument("--waveform", choices=["square", "sine"], required=True)
    p.add_argument("--state", default="gaussian:k0=0,alpha=50")
    p.add_argument("--amp", default="0:pi:pi/100", help="amplitude grid")
    p.add_argument("--freq", default="log:0.01:3:60", help="frequency grid")
    p.add_argument("--T", default="25N", help="averaging horizon")
    p.add_argument("--out", required=True)

    p = sub.add_parser("curve", help="average fidelity vs frequency per amplitude")
    _add_common(p)
    p.add_argument("--waveform", choices=["square", "sine"], required=True)
    p.add_argument("--state", default="gaussian:k0=0,alpha=50")
    p.add_argument("--amps", default=None, help="amplitude list (default: standard set)")
    p.add_argument("--freq", default="log:0.01:3:60")
    p.add_argument("--T", default="25N")
    p.add_argument("--out", required=True)

    p = sub.add_parser("threshold", help="threshold frequency vs packet width")
    _add_common(p)
    p.add_argument("--waveform", choices=["square", "sine"], default="square")
    p.add_argument("--amp", default="pi/2", help="drive amplitude (angle)")
    p.add_argument("--alphas", default="1:50:1", help="width grid")
    p.add_argument("--target", type=float, default=0.9)
    p.add_argument("--targets", default=None, help="comma list of target fidelities")
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--T", default="25N")
    p.add_argument("--out", required=True)

    p = sub.add_parser("evolve", help="propagate a state and dump amplitudes")
    _add_common(p)
    p.add_argument("--waveform", choices=["constant", "square", "sine"], required=True)
    p.add_argument("--amp", default="0")
    p.add_argument("--freq", type=float, default=None, help="drive frequency nu")
    p.add_argument("--state", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--basis", choices=["momentum", "site"], default="momentum")
    p.add_argument("--out", required=True)

    p = sub.add_parser("fidelity", help="fidelity time series and running average")
    _add_common(p)
    p.add_argument("--waveform", choices=["constant", "square", "sine"], required=True)
    p.add_argument("--amp", default="0")
    p.add_argument("--freq", type=float, default=None)
    p.add_argument("--state", required=True)
    p.add_argument("--T", default="25N")
    p.add_argument("--stride", type=int, default=1, help="series row decimation")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="cross-check against real-space propagation")
    _add_common(p)
    p.set_defaults(n=16)  # oracle scale
    p.add_argument("--dt", type=float, default=2.5e-4)
    p.add_argument("--tolerance", type=float, default=1e-7)

    p = sub.add_parser("bessel", help="Bessel function values and zeros of J0")
    p.add_argument("--config", help=argparse.SUPPRESS)
    p.add_argument("--zero", type=int, default=None, help="print the i-th zero of J0")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--x", type=float, default=None)
    return ap


def _apply_config_file(ap, argv):
    """Load --config JSON as parser defaults, then re-parse so flags win."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return ap.parse_args(argv)
    with open(known.config) as fh:
        defaults = json.load(fh)
    if not isinstance(defaults, dict):
        raise ConfigError(f"{known.config}: config file must hold a JSON object")
    # apply to every subparser; unknown keys are an error to avoid silent typos
    subparsers = ap._subparsers._group_actions[0].choices.values()
    actions = {a.dest for sp in subparsers for a in sp._actions}
    dests = {k.replace("-", "_"): v for k, v in defaults.items()}
    for key, dest in zip(defaults, dests):
        if dest not in actions:
            raise ConfigError(f"{known.config}: unknown config key {key!r}")
    for sp in subparsers:
        sp.set_defaults(**dests)
        for action in sp._actions:
            if action.dest in dests:
                action.required = False  # satisfied by the config file
    return ap.parse_args(argv)


def _ring(args) -> RingConfig:
    n = args.n
    if args.preset == "desk":
        n = DESK_SITES
    elif args.preset == "paper":
        n = PAPER_SITES
    return validate_config(RingConfig(n_sites=n, hopping=args.j, phi0=parse_angle(args.phi0)))


def _policy(args) -> SamplingPolicy:
    return SamplingPolicy(steps_per_period=args.steps_per_period, coarse_dt=args.coarse_dt)


def _waveform(args, cfg) -> FluxWaveform:
    amp = parse_angle(args.amp)
    if args.waveform == "constant":
        return FluxWaveform.constant(offset=cfg.phi0)
    if args.freq is None:
        raise ConfigError("--freq is required for driven waveforms")
    if args.waveform == "square":
        return FluxWaveform.square(amp, frequency=args.freq, offset=cfg.phi0)
    return FluxWaveform.sine(amp, frequency=args.freq, offset=cfg.phi0)


def _cmd_sweep(args) -> int:
    cfg = _ring(args)
    horizon = parse_horizon(args.T, cfg)
    grid = sweep_amp_freq(
        args.state,
        args.waveform,
        parse_grid(args.amp),
        parse_grid(args.freq),
        cfg,
        horizon,
        policy=_policy(args),
        threads=args.threads,
    )
    artifact_io.write_sweep_csv(args.out, grid, _policy(args))
    print(f"wrote {args.out}")
    return 0


def _cmd_curve(args) -> int:
    cfg = _ring(args)
    horizon = parse_horizon(args.T, cfg)
    if args.amps is None:
        amps = (
            SQUARE_CURVE_AMPLITUDES
            if args.waveform == "square"
            else SINE_CURVE_AMPLITUDES
        )
    else:
        amps = parse_grid(args.amps)
    grid = fidelity_vs_frequency(
        args.state,
        args.waveform,
        amps,
        parse_grid(args.freq),
        cfg,
        horizon,
        policy=_policy(args),
        threads=args.threads,
    )
    artifact_io.write_sweep_csv(args.out, grid, _policy(args))
    print(f"wrote {args.out}")
    return 0


def _cmd_threshold(args) -> int:
    cfg = _ring(args)
    horizon = parse_horizon(args.T, cfg)
    targets = (
        [float(x) for x in args.targets.split(",")]
        if args.targets
        else [args.target]
    )
    curves = threshold_curves(
        parse_grid(args.alphas),
        targets,
        cfg,
        waveform_kind=args.waveform,
        amplitude=parse_angle(args.amp),
        tol=args.tol,
        horizon=horizon,
        policy=_policy(args),
    )
    meta = {
        "waveform": args.waveform,
        "N": str(cfg.n_sites),
        "J": repr(cfg.hopping),
        "phi0": repr(cfg.phi0),
        "T": repr(horizon),
        "state": "gaussian:k0=0",
        "amplitude": repr(parse_angle(args.amp)),
    }
    artifact_io.write_threshold_csv(args.out, curves, meta)
    print(f"wrote {args.out}")
    return 0


def _cmd_evolve(args) -> int:
    cfg = _ring(args)
    w = _waveform(args, cfg)
    state = parse_state_spec(args.state, momentum_grid(cfg))
    final = evolve(state, cfg, w, args.t)
    amp = final.amplitudes if args.basis == "momentum" else to_site_basis(final).amplitudes
    meta = {
        "waveform": w.kind,
        "N": cfg.n_sites,
        "J": repr(cfg.hopping),
        "phi0": repr(cfg.phi0),
        "state": canonical_state_spec(args.state),
        "t": repr(args.t),
        "basis": args.basis,
    }
    artifact_io.write_state_csv(args.out, amp, meta)
    print(f"wrote {args.out}")
    return 0


def _cmd_fidelity(args) -> int:
    cfg = _ring(args)
    w = _waveform(args, cfg)
    horizon = parse_horizon(args.T, cfg)
    state = parse_state_spec(args.state, momentum_grid(cfg))
    avg, series = average_fidelity(state, cfg, w, horizon, _policy(args))
    meta = {
        "waveform": w.kind,
        "N": str(cfg.n_sites),
        "J": repr(cfg.hopping),
        "phi0": repr(cfg.phi0),
        "T": repr(horizon),
        "state": canonical_state_spec(args.state),
    }
    artifact_io.write_series_csv(args.out, series, meta, stride=args.stride)
    print(f"wrote {args.out}  avg_fidelity={avg!r}")
    return 0


def _cmd_verify(args) -> int:
    cfg = _ring(args)
    from .verify import run_verification

    report = run_verification(cfg, dt=args.dt)
    worst = 0.0
    for name, dev in report:
        status = "PASS" if dev <= args.tolerance else "FAIL"
        print(f"{status} {name}: max deviation {dev:.3e}")
        worst = max(worst, dev)
    if worst > args.tolerance:
        print(f"verification failed: worst deviation {worst:.3e} > {args.tolerance:g}")
        return 3
    print(f"all checks passed (worst deviation {worst:.3e})")
    return 0


def _cmd_bessel(args) -> int:
    if args.zero is not None:
        print(repr(bessel_j0_zero(args.zero)))
        return 0
    if args.order is not None and args.x is not None:
        print(repr(bessel_j(args.order, args.x)))
        return 0
    raise ConfigError("bessel needs either --zero I or both --order M and --x X")


_COMMANDS = {
    "sweep": _cmd_sweep,
    "curve": _cmd_curve,
    "threshold": _cmd_threshold,
    "evolve": _cmd_evolve,
    "fidelity": _cmd_fidelity,
    "verify": _cmd_verify,
    "bessel": _cmd_bessel,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = _apply_config_file(ap, argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
