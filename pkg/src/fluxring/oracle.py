"""Brute-force real-space propagation used to cross-check the k-space path.

Crank-Nicolson (implicit midpoint) steps on the dense N x N hopping matrix:

    (1 + i dt H(t_mid)/2) psi_{n+1} = (1 - i dt H(t_mid)/2) psi_n,

with the flux phase evaluated at each step's midpoint. The update is a
Cayley transform, exactly unitary for Hermitian H up to solver roundoff, so
a drifting norm flags a genuine failure rather than an accuracy problem.
For square drives the step grid is aligned to the flux jumps: every
half-period holds an integer number of steps and no step straddles a jump.

This module is deliberately independent of the closed-form phase integrals
and the Bessel machinery; the only shared ingredient is the Hamiltonian
definition itself.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError, StepTooLarge, UnitarityLoss
from .ring import RingConfig, validate_config
from .states import SiteState
from .waveforms import FluxWaveform, flux_at

MAX_ORACLE_SITES = 64

_NORM_DRIFT_TOL = 1e-9


def hopping_matrix(config: RingConfig, phi: float) -> np.ndarray:
    """Dense ring Hamiltonian at flux phase phi: -J e^{i phi} on j -> j+1 bonds."""
    cfg = validate_config(config)
    n = cfg.n_sites
    h = np.zeros((n, n), dtype=np.complex128)
    fwd = -cfg.hopping * np.exp(1j * phi)
    idx = np.arange(n)
    h[idx, (idx + 1) % n] = fwd
    h[(idx + 1) % n, idx] = np.conj(fwd)
    return h


def _cayley_step_matrix(config, phi, dt):
    h = hopping_matrix(config, phi)
    eye = np.eye(config.n_sites, dtype=np.complex128)
    a = eye + 0.5j * dt * h
    b = eye - 0.5j * dt * h
    return np.linalg.solve(a, b)


def _check_preconditions(config, w, dt):
    if config.n_sites > MAX_ORACLE_SITES:
        raise ConfigError(
            f"oracle runs are limited to N <= {MAX_ORACLE_SITES}, got {config.n_sites}"
        )
    if dt > 0.01 / config.hopping:
        raise StepTooLarge(f"dt={dt!r} exceeds 0.01/J")
    if w.period is not None and dt > w.period / 200.0:
        raise StepTooLarge(f"dt={dt!r} exceeds period/200")


def evolve_realspace(
    state: SiteState, config: RingConfig, w: FluxWaveform, t: float, dt: float
) -> SiteState:
    """Step the site-basis state to time t with midpoint Crank-Nicolson."""
    cfg = validate_config(config)
    if state.n_sites != cfg.n_sites:
        raise ConfigError("state size does not match the ring configuration")
    if not (dt > 0 and math.isfinite(dt)):
        raise StepTooLarge(f"dt must be positive and finite, got {dt!r}")
    _check_preconditions(cfg, w, dt)
    psi = np.array(state.amplitudes, dtype=np.complex128)
    if t < 0:
        raise ConfigError(f"t must be >= 0, got {t!r}")
    if t > 0:
        if w.kind == "square":
            psi = _run_square(psi, cfg, w, t, dt)
        elif w.kind == "constant":
            n = max(1, math.ceil(t / dt))
            step = _cayley_step_matrix(cfg, w.offset, t / n)
            for _ in range(n):
                psi = step @ psi
        else:
            n = max(1, math.ceil(t / dt))
            h = t / n
            eye = np.eye(cfg.n_sites, dtype=np.complex128)
            for i in range(n):
                hm = hopping_matrix(cfg, float(flux_at(w, (i + 0.5) * h)))
                psi = np.linalg.solve(eye + 0.5j * h * hm, psi - 0.5j * h * (hm @ psi))
    drift = abs(float(np.linalg.norm(psi)) - 1.0)
    if drift > _NORM_DRIFT_TOL:
        raise UnitarityLoss(f"norm drifted by {drift:.3e}; reduce dt")
    return SiteState(amplitudes=psi)


def _run_square(psi, cfg, w, t, dt):
    """Walk half-period windows so steps never straddle a flux jump."""
    half = 0.5 * w.period
    up = w.offset + w.amplitude
    down = w.offset - w.amplitude
    steps_cache = {}

    def apply_window(psi, phi, duration):
        n = max(1, math.ceil(duration / dt - 1e-12))
        h = duration / n
        key = (phi, h)
        if key not in steps_cache:
            steps_cache[key] = _cayley_step_matrix(cfg, phi, h)
        m = steps_cache[key]
        for _ in range(n):
            psi = m @ psi
        return psi

    remaining = t
    window = 0
    while remaining > 1e-15 * max(t, 1.0):
        phi = up if window % 2 == 0 else down
        span = min(half, remaining)
        psi = apply_window(psi, phi, span)
        remaining -= span
        window += 1
    return psi


def fidelity_realspace(
    state: SiteState, config: RingConfig, w: FluxWaveform, t: float, dt: float
) -> float:
    """|<psi(0)|psi(t)>| from the brute-force evolution."""
    evolved = evolve_realspace(state, config, w, t, dt)
    return float(abs(np.vdot(state.amplitudes, evolved.amplitudes)))
