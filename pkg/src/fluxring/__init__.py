"""fluxring: exact dynamics of a tight-binding ring threaded by a
time-periodic magnetic flux.

The propagator is diagonal in the momentum basis, so arbitrary-time
evolution reduces to the phase integral of cos(k + phi(t)). The package
covers the drive waveforms (square, sinusoidal, tabulated), fidelity and
average-fidelity measures, amplitude/frequency sweeps, threshold-frequency
analysis, and an independent real-space Crank-Nicolson oracle.
"""

__version__ = "0.1.0"

from . import errors
from .bessel import bessel_j, bessel_j0_zero
from .evolution import (
    FidelitySeries,
    SamplingPolicy,
    average_fidelity,
    average_fidelity_value,
    evolve,
    fidelity,
    stroboscopic_fidelity,
)
from .oracle import evolve_realspace, fidelity_realspace, hopping_matrix
from .ring import MomentumGrid, RingConfig, momentum_grid, reduce_angle, validate_config
from .states import (
    MomentumState,
    SiteState,
    from_site_basis,
    gaussian_packet,
    parse_state_spec,
    plane_wave,
    single_site,
    to_site_basis,
)
from .sweeps import (
    SweepGrid,
    ThresholdCurve,
    default_horizon,
    fidelity_vs_frequency,
    smalltau_theory,
    sweep_amp_freq,
    threshold_curves,
    threshold_frequency_numeric,
    threshold_theory,
)
from .waveforms import (
    FluxWaveform,
    PhaseTable,
    flux_at,
    phase_integral,
    phase_table,
    stroboscopic_rate,
)

__all__ = [
    "__version__",
    "errors",
    "bessel_j",
    "bessel_j0_zero",
    "FidelitySeries",
    "SamplingPolicy",
    "average_fidelity",
    "average_fidelity_value",
    "evolve",
    "fidelity",
    "stroboscopic_fidelity",
    "evolve_realspace",
    "fidelity_realspace",
    "hopping_matrix",
    "MomentumGrid",
    "RingConfig",
    "momentum_grid",
    "reduce_angle",
    "validate_config",
    "MomentumState",
    "SiteState",
    "from_site_basis",
    "gaussian_packet",
    "parse_state_spec",
    "plane_wave",
    "single_site",
    "to_site_basis",
    "SweepGrid",
    "ThresholdCurve",
    "default_horizon",
    "fidelity_vs_frequency",
    "smalltau_theory",
    "sweep_amp_freq",
    "threshold_curves",
    "threshold_frequency_numeric",
    "threshold_theory",
    "FluxWaveform",
    "PhaseTable",
    "flux_at",
    "phase_integral",
    "phase_table",
    "stroboscopic_rate",
]
