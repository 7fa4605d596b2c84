"""CSV artifacts with '#'-prefixed metadata headers.

Schemas (one artifact per file):

* sweep / curve:      ``amplitude,frequency,avg_fidelity``
* threshold:          ``alpha,nu_c,source,target,tol``
* fidelity series:    ``t,F,running_average``
* state dump:         ``index,re,im``

The first header line of a sweep artifact is always

    # waveform=<kind> N=<N> J=<J> phi0=<phi0> T=<T> state=<spec>

followed by further ``# key=value`` lines (tool version, sampling policy,
axis units). Floats are written with ``repr`` so re-parsing reproduces the
exact binary values; re-running a sweep from a parsed header reproduces
the artifact byte for byte.
"""

from __future__ import annotations

import numpy as np

from . import __version__
from .errors import ConfigError
from .evolution import FidelitySeries, SamplingPolicy
from .sweeps import SweepGrid, ThresholdCurve

SWEEP_COLUMNS = "amplitude,frequency,avg_fidelity"
THRESHOLD_COLUMNS = "alpha,nu_c,source,target,tol"
SERIES_COLUMNS = "t,F,running_average"
STATE_COLUMNS = "index,re,im"

AMPLITUDE_UNIT = "rad"
FREQUENCY_UNIT = "J"


def _fmt(x: float) -> str:
    return repr(float(x))


def _policy_lines(policy: SamplingPolicy | None) -> list[str]:
    p = policy or SamplingPolicy()
    line = f"# steps_per_period={p.steps_per_period} coarse_dt={_fmt(p.coarse_dt)}"
    if p.dt is not None:
        line += f" dt={_fmt(p.dt)}"
    return [line]


def _common_lines() -> list[str]:
    return [
        f"# tool=fluxring version={__version__}",
        f"# amplitude_unit={AMPLITUDE_UNIT} frequency_unit={FREQUENCY_UNIT}",
    ]


def sweep_header(meta: dict) -> str:
    return (
        f"# waveform={meta['waveform']} N={meta['N']} J={meta['J']} "
        f"phi0={meta['phi0']} T={meta['T']} state={meta['state']}"
    )


def write_sweep_csv(path, grid: SweepGrid, policy: SamplingPolicy | None = None):
    lines = [sweep_header(grid.metadata)]
    lines += _common_lines()
    lines += _policy_lines(policy)
    lines.append(SWEEP_COLUMNS)
    for i, a in enumerate(grid.amplitudes):
        for j, f in enumerate(grid.frequencies):
            lines.append(f"{_fmt(a)},{_fmt(f)},{_fmt(grid.values[i, j])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_metadata(lines: list[str]) -> dict:
    meta: dict[str, str] = {}
    for line in lines:
        for token in line.lstrip("#").strip().split():
            if "=" in token:
                key, val = token.split("=", 1)
                meta[key] = val
    return meta


def read_sweep_csv(path) -> SweepGrid:
    header_lines, rows = _read_artifact(path, SWEEP_COLUMNS)
    meta = parse_metadata(header_lines)
    data = np.array([[float(x) for x in r] for r in rows])
    amps = np.unique(data[:, 0])
    freqs = np.unique(data[:, 1])
    values = np.full((len(amps), len(freqs)), np.nan)
    ai = np.searchsorted(amps, data[:, 0])
    fj = np.searchsorted(freqs, data[:, 1])
    values[ai, fj] = data[:, 2]
    if np.any(np.isnan(values)):
        raise ConfigError(f"{path}: sweep rows do not fill the grid")
    return SweepGrid(amplitudes=amps, frequencies=freqs, values=values, metadata=meta)


def write_threshold_csv(path, curves: list[ThresholdCurve], meta: dict):
    lines = [sweep_header(meta)] if "waveform" in meta else []
    lines += _common_lines()
    lines.append(THRESHOLD_COLUMNS)
    for c in curves:
        for a, nu in zip(c.alphas, c.nu_values):
            lines.append(
                f"{_fmt(a)},{_fmt(nu)},{c.source},{_fmt(c.target)},{_fmt(c.tol)}"
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_threshold_csv(path) -> list[ThresholdCurve]:
    _, rows = _read_artifact(path, THRESHOLD_COLUMNS)
    groups: dict[tuple, list] = {}
    for r in rows:
        key = (r[2], float(r[3]), float(r[4]))
        groups.setdefault(key, []).append((float(r[0]), float(r[1])))
    curves = []
    for (source, target, tol), pts in groups.items():
        arr = np.array(pts)
        curves.append(
            ThresholdCurve(
                alphas=arr[:, 0],
                nu_values=arr[:, 1],
                source=source,
                target=target,
                tol=tol,
            )
        )
    return curves


def write_series_csv(path, series: FidelitySeries, meta: dict, stride: int = 1):
    lines = [sweep_header(meta)] if "waveform" in meta else []
    lines += _common_lines()
    lines.append(SERIES_COLUMNS)
    for i in range(0, len(series.times), max(1, stride)):
        lines.append(
            f"{_fmt(series.times[i])},{_fmt(series.values[i])},"
            f"{_fmt(series.running_average[i])}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_state_csv(path, amplitudes: np.ndarray, meta: dict):
    lines = _common_lines()
    for key, val in meta.items():
        lines.append(f"# {key}={val}")
    lines.append(STATE_COLUMNS)
    for i, c in enumerate(amplitudes):
        lines.append(f"{i},{_fmt(c.real)},{_fmt(c.imag)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_artifact(path, expected_columns):
    with open(path) as fh:
        content = fh.read().splitlines()
    header = [ln for ln in content if ln.startswith("#")]
    body = [ln for ln in content if ln and not ln.startswith("#")]
    if not body or body[0] != expected_columns:
        raise ConfigError(
            f"{path}: expected column header {expected_columns!r}, "
            f"got {body[0]!r}" if body else f"{path}: empty artifact"
        )
    rows = [ln.split(",") for ln in body[1:]]
    if not rows:
        raise ConfigError(f"{path}: artifact has a header but no data rows")
    return header, rows
