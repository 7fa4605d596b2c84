"""Ring lattice definition and the discrete momentum grid.

An N-site ring with nearest-neighbour hopping J and periodic boundary
conditions has single-particle momentum modes k_n = 2*pi*n/N. Momenta are
stored reduced to (-pi, pi] and sorted ascending, so a packet symmetric
about k = 0 is symmetric in the stored arrays as well (the +k/-k entries
are exact floating-point negations of each other).

Conventions: hbar = 1; energies in units of the hopping J, times in 1/J,
flux phases in radians. The user-facing drive frequency is nu = omega/2pi
in units of J; the angular frequency omega is internal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteField, NonPositiveHopping, NonPositiveSites


def reduce_angle(phi: float) -> float:
    """Reduce an angle modulo 2*pi into the interval (-pi, pi]."""
    r = phi - 2.0 * math.pi * round(phi / (2.0 * math.pi))
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


@dataclass(frozen=True)
class RingConfig:
    """Static ring parameters: site count N, hopping J, flux offset phi0."""

    n_sites: int
    hopping: float = 1.0
    phi0: float = 0.0


@dataclass(frozen=True, eq=False)
class MomentumGrid:
    """The N momenta k = 2*pi*m/N reduced to (-pi, pi], ascending.

    ``mode_numbers`` holds the integers m, running from -(N//2 - 1) (even N)
    or -(N-1)//2 (odd N) up to N//2; they index the same modes in FFT order
    via m mod N.
    """

    n_sites: int
    k_values: np.ndarray
    mode_numbers: np.ndarray

    @classmethod
    def of(cls, n_sites: int) -> "MomentumGrid":
        if n_sites < 2:
            raise NonPositiveSites(f"n_sites must be >= 2, got {n_sites}")
        n = int(n_sites)
        if n % 2 == 0:
            m = np.arange(-(n // 2) + 1, n // 2 + 1)
        else:
            m = np.arange(-(n - 1) // 2, (n - 1) // 2 + 1)
        k = (2.0 * np.pi / n) * m
        if n % 2 == 0:
            # pin the edge mode to pi exactly so the grid stays inside (-pi, pi]
            k[-1] = np.pi
        k.setflags(write=False)
        m.setflags(write=False)
        return cls(n_sites=n, k_values=k, mode_numbers=m)

    def __len__(self) -> int:
        return self.n_sites


def validate_config(config: RingConfig) -> RingConfig:
    """Return a normalized copy of ``config`` or raise a named error.

    Normalization reduces phi0 into (-pi, pi]. Validation is idempotent:
    a config that already passed comes back unchanged.
    """
    n = config.n_sites
    if isinstance(n, float) and not float(n).is_integer():
        raise NonFiniteField(f"n_sites must be an integer, got {n!r}")
    n = int(n)
    if n < 2:
        raise NonPositiveSites(f"n_sites must be >= 2, got {config.n_sites!r}")

    j = config.hopping
    if not math.isfinite(j):
        raise NonFiniteField(f"hopping must be finite, got {j!r}")
    if j <= 0:
        raise NonPositiveHopping(f"hopping must be > 0, got {j!r}")

    phi0 = config.phi0
    if not math.isfinite(phi0):
        raise NonFiniteField(f"phi0 must be finite, got {phi0!r}")

    return RingConfig(n_sites=n, hopping=float(j), phi0=reduce_angle(float(phi0)))


def momentum_grid(config: RingConfig) -> MomentumGrid:
    """Momentum grid of the validated ring configuration."""
    cfg = validate_config(config)
    return MomentumGrid.of(cfg.n_sites)
