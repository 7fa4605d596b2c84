"""Parsing of the fluxring CSV artifact schemas.

Artifacts carry '#'-prefixed ``key=value`` metadata lines followed by a
column header. Units are validated against the metadata, never silently
relabelled: the producer declares ``amplitude_unit``/``frequency_unit``
and a mismatch with what the figure expects is an error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SWEEP_COLUMNS = "amplitude,frequency,avg_fidelity"
THRESHOLD_COLUMNS = "alpha,nu_c,source,target,tol"

EXPECTED_AMPLITUDE_UNIT = "rad"
EXPECTED_FREQUENCY_UNIT = "J"


class SchemaMismatch(ValueError):
    """The file does not follow the documented artifact schema."""


class UnitMismatch(ValueError):
    """Axis units declared in the artifact differ from the figure's."""


@dataclass(frozen=True)
class SweepTable:
    amplitudes: np.ndarray  # radians
    frequencies: np.ndarray  # units of J
    values: np.ndarray  # (n_amplitudes, n_frequencies)
    metadata: dict


@dataclass(frozen=True)
class ThresholdTable:
    rows: np.ndarray  # structured: alpha, nu_c per (source, target) group
    groups: dict  # (source, target) -> (alphas, nu_values)
    metadata: dict


def _read_lines(path):
    with open(path) as fh:
        content = fh.read().splitlines()
    header = [ln for ln in content if ln.startswith("#")]
    body = [ln for ln in content if ln and not ln.startswith("#")]
    return header, body


def _metadata(header_lines) -> dict:
    meta = {}
    for line in header_lines:
        for token in line.lstrip("#").strip().split():
            if "=" in token:
                key, val = token.split("=", 1)
                meta[key] = val
    return meta


def _check_units(meta, path):
    amp_unit = meta.get("amplitude_unit", EXPECTED_AMPLITUDE_UNIT)
    freq_unit = meta.get("frequency_unit", EXPECTED_FREQUENCY_UNIT)
    if amp_unit != EXPECTED_AMPLITUDE_UNIT or freq_unit != EXPECTED_FREQUENCY_UNIT:
        raise UnitMismatch(
            f"{path}: artifact declares amplitude_unit={amp_unit!r}, "
            f"frequency_unit={freq_unit!r}; this renderer expects "
            f"{EXPECTED_AMPLITUDE_UNIT!r} and {EXPECTED_FREQUENCY_UNIT!r}"
        )


def read_sweep(path) -> SweepTable:
    header, body = _read_lines(path)
    if not body or body[0] != SWEEP_COLUMNS:
        raise SchemaMismatch(
            f"{path}: expected column header {SWEEP_COLUMNS!r}"
            + (f", got {body[0]!r}" if body else " in an empty file")
        )
    meta = _metadata(header)
    _check_units(meta, path)
    try:
        data = np.array([[float(x) for x in ln.split(",")] for ln in body[1:]])
    except ValueError as exc:
        raise SchemaMismatch(f"{path}: non-numeric sweep row ({exc})") from None
    if data.size == 0 or data.shape[1] != 3:
        raise SchemaMismatch(f"{path}: sweep artifact has no valid data rows")
    amps = np.unique(data[:, 0])
    freqs = np.unique(data[:, 1])
    values = np.full((len(amps), len(freqs)), np.nan)
    values[np.searchsorted(amps, data[:, 0]), np.searchsorted(freqs, data[:, 1])] = (
        data[:, 2]
    )
    if np.any(np.isnan(values)):
        raise SchemaMismatch(f"{path}: sweep rows do not fill a full grid")
    return SweepTable(amplitudes=amps, frequencies=freqs, values=values, metadata=meta)


def read_threshold(path) -> ThresholdTable:
    header, body = _read_lines(path)
    if not body or body[0] != THRESHOLD_COLUMNS:
        raise SchemaMismatch(
            f"{path}: expected column header {THRESHOLD_COLUMNS!r}"
            + (f", got {body[0]!r}" if body else " in an empty file")
        )
    meta = _metadata(header)
    _check_units(meta, path)
    groups: dict[tuple, list] = {}
    for ln in body[1:]:
        parts = ln.split(",")
        if len(parts) != 5:
            raise SchemaMismatch(f"{path}: malformed threshold row {ln!r}")
        source = parts[2]
        if source not in ("numeric", "theory"):
            raise SchemaMismatch(f"{path}: unknown threshold source {source!r}")
        try:
            alpha, nu = float(parts[0]), float(parts[1])
            target = float(parts[3])
        except ValueError as exc:
            raise SchemaMismatch(f"{path}: non-numeric threshold row ({exc})") from None
        groups.setdefault((source, target), []).append((alpha, nu))
    if not groups:
        raise SchemaMismatch(f"{path}: threshold artifact has no data rows")
    packed = {
        key: (np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))
        for key, pts in groups.items()
    }
    rows = np.array([[a, n] for pts in groups.values() for a, n in pts])
    return ThresholdTable(rows=rows, groups=packed, metadata=meta)
