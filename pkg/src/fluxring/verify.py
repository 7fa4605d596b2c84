"""Cross-checks between the k-space propagator and the real-space oracle.

Each check evolves the same initial state along both routes on a small ring
and reports the largest site-amplitude (or fidelity) deviation. Used by the
``verify`` CLI command and by the acceptance tests.
"""

from __future__ import annotations

import numpy as np

from .evolution import evolve, fidelity
from .oracle import evolve_realspace, fidelity_realspace
from .ring import RingConfig, momentum_grid
from .states import MomentumState, single_site, to_site_basis
from .waveforms import FluxWaveform


def _random_state(grid, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=grid.n_sites) + 1j * rng.normal(size=grid.n_sites)
    return MomentumState(grid, c / np.linalg.norm(c))


def _amplitude_deviation(state, cfg, w, t, dt):
    site0 = to_site_basis(state)
    brute = evolve_realspace(site0, cfg, w, t, dt).amplitudes
    exact = to_site_basis(evolve(state, cfg, w, t)).amplitudes
    return float(np.abs(brute - exact).max())


def run_verification(cfg: RingConfig, dt: float = 2.5e-4):
    """Return [(check name, max deviation), ...] for the standard suite."""
    grid = momentum_grid(cfg)
    state = _random_state(grid, seed=20240901)
    checks = []

    w = FluxWaveform.constant(offset=cfg.phi0)
    single = single_site(grid, 1)
    checks.append(
        (
            "constant-flux single site, t=2/J",
            _amplitude_deviation(single, cfg, w, 2.0 / cfg.hopping, dt),
        )
    )

    w = FluxWaveform.square(np.pi / 2, angular_frequency=4.0 * cfg.hopping, offset=cfg.phi0)
    site0 = to_site_basis(state)
    revived = evolve_realspace(site0, cfg, w, w.period, dt).amplitudes
    checks.append(
        ("square pi/2 revival at t=tau", float(np.abs(revived - site0.amplitudes).max()))
    )

    w = FluxWaveform.square(0.8, angular_frequency=4.0 * cfg.hopping, offset=cfg.phi0)
    checks.append(
        (
            "square amp=0.8, t=5*tau",
            _amplitude_deviation(state, cfg, w, 5 * w.period, dt),
        )
    )

    w = FluxWaveform.sine(1.0, angular_frequency=4.0 * cfg.hopping, offset=cfg.phi0)
    checks.append(
        ("sine amp=1, t=5*tau", _amplitude_deviation(state, cfg, w, 5 * w.period, dt))
    )
    f_brute = fidelity_realspace(to_site_basis(state), cfg, w, 3.7 / cfg.hopping, dt)
    f_exact = fidelity(state, cfg, w, 3.7 / cfg.hopping)
    checks.append(("sine amp=1 fidelity, t=3.7/J", abs(f_brute - f_exact)))
    return checks
