"""Parameter studies: amplitude-frequency fidelity maps, frequency curves,
and threshold frequencies with the closed-form comparison.

Cells of a sweep are independent work items; they are dispatched to a
thread pool (the averaging kernel releases the GIL) and written into the
result matrix by index, so results are bit-identical for any worker count.

The closed-form threshold frequency for a zero-momentum Gaussian packet of
width coefficient alpha at target average fidelity Fc is

    nu_c = J * sqrt((1 - exp(-1/alpha^2)) / (12 * (1 - Fc))),

the small-period limit in which the average fidelity deficit is
(J^2/12 nu^2) * (1 - e^{-1/alpha^2}).
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import (
    AsymmetricState,
    ConfigError,
    NoBracket,
    NonMonotoneWarning,
    TargetOutOfRange,
)
from .evolution import SamplingPolicy, average_fidelity_value
from .ring import RingConfig, momentum_grid, validate_config
from .states import MomentumState, canonical_state_spec, gaussian_packet, parse_state_spec
from .waveforms import FluxWaveform

# amplitude sets used for the frequency curves; the sinusoidal set swaps
# 3*pi/4 for the rounded optimum 0.765*pi
SQUARE_CURVE_AMPLITUDES = tuple(
    np.pi * f for f in (1 / 8, 1 / 4, 3 / 8, 1 / 2, 5 / 8, 3 / 4, 7 / 8)
)
SINE_CURVE_AMPLITUDES = tuple(
    np.pi * f for f in (1 / 8, 1 / 4, 3 / 8, 1 / 2, 5 / 8, 0.765, 7 / 8)
)

# rounded optimal sinusoidal amplitude, handy next to bessel_j0_zero(1)
SINE_OPTIMAL_AMPLITUDE_ROUNDED = 0.765 * math.pi

DESK_SITES = 200
PAPER_SITES = 1000

SEARCH_RANGE = (0.01, 100.0)  # threshold search window, units of J


def default_horizon(config: RingConfig) -> float:
    """The averaging window used throughout: T = 25 N / J."""
    return 25.0 * config.n_sites / config.hopping


def default_amplitude_grid() -> np.ndarray:
    """phi_A from 0 to pi in steps of pi/100."""
    return np.arange(101) * (np.pi / 100.0)


def default_frequency_grid() -> np.ndarray:
    """60 log-spaced frequencies over [0.01 J, 3 J]."""
    return np.geomspace(0.01, 3.0, 60)


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """Average fidelity over an amplitude x frequency grid."""

    amplitudes: np.ndarray
    frequencies: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (len(self.amplitudes), len(self.frequencies)):
            raise ConfigError("sweep matrix shape does not match the grids")

    def column(self, frequency: float) -> np.ndarray:
        j = int(np.argmin(np.abs(self.frequencies - frequency)))
        return self.values[:, j]

    def argmax_amplitude(self, frequency: float) -> float:
        """Amplitude maximising the average; first (smallest) wins on ties."""
        return float(self.amplitudes[int(np.argmax(self.column(frequency)))])


@dataclass(frozen=True, eq=False)
class ThresholdCurve:
    """nu_c over packet widths for one target band and one source."""

    alphas: np.ndarray
    nu_values: np.ndarray
    source: str  # "numeric" | "theory"
    target: float
    tol: float

    def __post_init__(self):
        if self.source not in ("numeric", "theory"):
            raise ConfigError(f"unknown threshold source {self.source!r}")
        if len(self.alphas) != len(self.nu_values):
            raise ConfigError("threshold curve arrays differ in length")


def _resolve_state(state, grid) -> MomentumState:
    if isinstance(state, MomentumState):
        return state
    return parse_state_spec(str(state), grid)


def _state_label(state) -> str:
    if isinstance(state, MomentumState):
        return "custom"
    return canonical_state_spec(str(state))


def _make_waveform(kind, amplitude, frequency, offset):
    if kind == "square":
        return FluxWaveform.square(amplitude, frequency=frequency, offset=offset)
    if kind == "sine":
        return FluxWaveform.sine(amplitude, frequency=frequency, offset=offset)
    raise ConfigError(f"sweeps support square or sine drives, got {kind!r}")


def _cell_values(state, cfg, kind, amps, freqs, horizon, policy, threads):
    values = np.empty((len(amps), len(freqs)))

    def run(ij):
        i, j = ij
        w = _make_waveform(kind, amps[i], freqs[j], cfg.phi0)
        return i, j, average_fidelity_value(state, cfg, w, horizon, policy)

    cells = [(i, j) for i in range(len(amps)) for j in range(len(freqs))]
    if threads is not None and threads <= 1:
        results = map(run, cells)
        for i, j, v in results:
            values[i, j] = v
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for i, j, v in pool.map(run, cells):
                values[i, j] = v
    return values


def sweep_amp_freq(
    state: Union[str, MomentumState],
    waveform_kind: str,
    amplitudes,
    frequencies,
    config: RingConfig,
    horizon: Optional[float] = None,
    *,
    policy: Optional[SamplingPolicy] = None,
    threads: Optional[int] = None,
) -> SweepGrid:
    """Average fidelity per (amplitude, frequency) cell; deterministic."""
    cfg = validate_config(config)
    amps = np.asarray(amplitudes, dtype=float)
    freqs = np.asarray(frequencies, dtype=float)
    if amps.size == 0 or freqs.size == 0:
        raise ConfigError("amplitude and frequency grids must be nonempty")
    horizon = default_horizon(cfg) if horizon is None else float(horizon)
    st = _resolve_state(state, momentum_grid(cfg))
    values = _cell_values(st, cfg, waveform_kind, amps, freqs, horizon, policy, threads)
    meta = {
        "waveform": waveform_kind,
        "N": str(cfg.n_sites),
        "J": repr(cfg.hopping),
        "phi0": repr(cfg.phi0),
        "T": repr(horizon),
        "state": _state_label(state),
    }
    return SweepGrid(amplitudes=amps, frequencies=freqs, values=values, metadata=meta)


def fidelity_vs_frequency(
    state,
    waveform_kind: str,
    amplitudes=None,
    frequencies=None,
    config: RingConfig = None,
    horizon: Optional[float] = None,
    *,
    policy: Optional[SamplingPolicy] = None,
    threads: Optional[int] = None,
) -> SweepGrid:
    """One average-fidelity-vs-frequency curve per amplitude.

    Defaults to the standard amplitude sets (SQUARE_CURVE_AMPLITUDES or
    SINE_CURVE_AMPLITUDES) and the default log frequency grid.
    """
    if amplitudes is None:
        amplitudes = (
            SQUARE_CURVE_AMPLITUDES
            if waveform_kind == "square"
            else SINE_CURVE_AMPLITUDES
        )
    if frequencies is None:
        frequencies = default_frequency_grid()
    return sweep_amp_freq(
        state,
        waveform_kind,
        amplitudes,
        frequencies,
        config,
        horizon,
        policy=policy,
        threads=threads,
    )


def threshold_theory(alpha: float, target: float, config: RingConfig) -> float:
    """Closed-form nu_c for a zero-momentum Gaussian packet of width alpha."""
    if not (0.0 < target < 1.0):
        raise TargetOutOfRange(f"target fidelity must be in (0, 1), got {target!r}")
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ConfigError(f"alpha must be positive and finite, got {alpha!r}")
    cfg = validate_config(config)
    return cfg.hopping * math.sqrt(
        (1.0 - math.exp(-1.0 / alpha**2)) / (12.0 * (1.0 - target))
    )


def smalltau_theory(state: MomentumState, tau: float, config: RingConfig) -> float:
    """Small-period average fidelity 1 - (1/6) J^2 tau^2 sum_k |c_k|^2 sin^2 k.

    Valid for square drives at amplitude pi/2 and |c_k|^2 symmetric about
    k = 0; the symmetry is checked, the smallness of J*tau is documented
    but not enforced.
    """
    cfg = validate_config(config)
    w = state.weights
    k = state.grid.k_values
    # weight of -k for every k via the mode numbers; pi (even N) is self-paired
    m = state.grid.mode_numbers
    pos = {int(mm): i for i, mm in enumerate(m)}
    mirrored = np.empty_like(w)
    for i, mm in enumerate(m):
        mirrored[i] = w[pos.get(-int(mm), i)]
    if np.max(np.abs(w - mirrored)) > 1e-10:
        raise AsymmetricState("|c_k|^2 is not symmetric about k = 0")
    s2 = float(np.sum(w * np.sin(k) ** 2))
    return 1.0 - (cfg.hopping**2) * tau**2 * s2 / 6.0


def sin2_weight(state: MomentumState) -> float:
    """sum_k |c_k|^2 sin^2 k, the curvature of the small-period deficit."""
    return float(np.sum(state.weights * np.sin(state.grid.k_values) ** 2))


def threshold_frequency_numeric(
    state,
    waveform_kind: str,
    amplitude: float,
    target: float,
    tol: float,
    config: RingConfig,
    horizon: Optional[float] = None,
    *,
    policy: Optional[SamplingPolicy] = None,
    search=SEARCH_RANGE,
) -> float:
    """Smallest frequency at which the average fidelity reaches the target.

    Brackets the crossing (seeded by the small-period estimate, expanded
    geometrically within ``search``), verifies approximate monotonicity
    across the bracket (warns NonMonotoneWarning otherwise), then bisects
    on log-frequency until |Fbar(nu) - target| <= tol.
    """
    if not (0.0 < target < 1.0):
        raise TargetOutOfRange(f"target fidelity must be in (0, 1), got {target!r}")
    cfg = validate_config(config)
    horizon = default_horizon(cfg) if horizon is None else float(horizon)
    st = _resolve_state(state, momentum_grid(cfg))
    lo_lim, hi_lim = search

    cache: dict[float, float] = {}

    def fbar(nu):
        if nu not in cache:
            w = _make_waveform(waveform_kind, amplitude, nu, cfg.phi0)
            cache[nu] = average_fidelity_value(st, cfg, w, horizon, policy)
        return cache[nu]

    # seed from the quadratic deficit with the state's own grid moment
    s2 = sin2_weight(st)
    if s2 > 0:
        seed = cfg.hopping * math.sqrt(s2 / (6.0 * (1.0 - target)))
    else:
        seed = 1.0
    seed = min(max(seed, lo_lim), hi_lim)

    lo, hi = max(lo_lim, seed / 2.0), min(hi_lim, seed * 2.0)
    while fbar(lo) >= target and lo > lo_lim:
        lo = max(lo_lim, lo / 2.0)
    while fbar(hi) < target and hi < hi_lim:
        hi = min(hi_lim, hi * 2.0)
    if fbar(hi) < target:
        raise NoBracket(
            f"average fidelity stays below {target} up to nu = {hi_lim} J"
        )
    if fbar(lo) >= target:
        raise NoBracket(
            f"average fidelity already exceeds {target} at the search floor "
            f"nu = {lo_lim} J; the threshold lies below the search range"
        )

    probes = np.geomspace(lo, hi, 5)
    probe_vals = [fbar(float(p)) for p in probes]
    if any(b < a - 1e-3 for a, b in zip(probe_vals, probe_vals[1:])):
        warnings.warn(
            "average fidelity is not monotone across the threshold bracket",
            NonMonotoneWarning,
        )

    for _ in range(80):
        mid = math.sqrt(lo * hi)
        v = fbar(mid)
        if abs(v - target) <= tol:
            return mid
        if v < target:
            lo = mid
        else:
            hi = mid
        if hi / lo < 1.0 + 1e-9:
            break
    raise NoBracket(
        f"bisection failed to land within +-{tol} of {target}; "
        "the crossing may be non-monotone at this resolution"
    )


def threshold_curves(
    alphas,
    targets,
    config: RingConfig,
    *,
    waveform_kind: str = "square",
    amplitude: float = math.pi / 2,
    tol: float = 0.01,
    horizon: Optional[float] = None,
    policy: Optional[SamplingPolicy] = None,
) -> list[ThresholdCurve]:
    """Numeric and closed-form threshold curves for Gaussian k0 = 0 packets."""
    cfg = validate_config(config)
    grid = momentum_grid(cfg)
    alphas = np.asarray(alphas, dtype=float)
    out = []
    for target in targets:
        numeric = np.array(
            [
                threshold_frequency_numeric(
                    gaussian_packet(grid, 0.0, a),
                    waveform_kind,
                    amplitude,
                    target,
                    tol,
                    cfg,
                    horizon,
                    policy=policy,
                )
                for a in alphas
            ]
        )
        theory = np.array([threshold_theory(a, target, cfg) for a in alphas])
        out.append(
            ThresholdCurve(
                alphas=alphas, nu_values=numeric, source="numeric", target=target, tol=tol
            )
        )
        out.append(
            ThresholdCurve(
                alphas=alphas, nu_values=theory, source="theory", target=target, tol=tol
            )
        )
    return out
