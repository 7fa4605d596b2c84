"""Initial states in the momentum basis and the site<->momentum transforms.

The momentum eigenstates |k> = N^{-1/2} sum_j e^{ikj} |j> fix the transform
conventions: site amplitudes a_j = N^{-1/2} sum_k e^{ikj} c_k and back with
the conjugate kernel. Sites are indexed j = 1..N.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DegenerateWidth,
    IndexOutOfRange,
    SiteOutOfRange,
)
from .ring import MomentumGrid

_NORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class MomentumState:
    """Normalized amplitudes c_k on a momentum grid (sorted-k order)."""

    grid: MomentumGrid
    amplitudes: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.amplitudes, dtype=np.complex128)
        if c.shape != (self.grid.n_sites,):
            raise ConfigError(
                f"amplitude count {c.shape} does not match N={self.grid.n_sites}"
            )
        n = np.sum(np.abs(c) ** 2)
        if abs(n - 1.0) > _NORM_TOL:
            raise ConfigError(f"state not normalized: sum |c_k|^2 = {n!r}")
        c.setflags(write=False)
        object.__setattr__(self, "amplitudes", c)

    @property
    def weights(self) -> np.ndarray:
        """|c_k|^2 per grid point."""
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class SiteState:
    """Normalized amplitudes a_j for sites j = 1..N (stored at index j-1)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=np.complex128)
        n = np.sum(np.abs(a) ** 2)
        if abs(n - 1.0) > _NORM_TOL:
            raise ConfigError(f"state not normalized: sum |a_j|^2 = {n!r}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def n_sites(self) -> int:
        return len(self.amplitudes)


def gaussian_packet(grid: MomentumGrid, k0: float, alpha: float) -> MomentumState:
    """Gaussian packet c_k proportional to exp(-(alpha^2/2) d(k, k0)^2).

    d is the wrapped momentum difference on the circle, so packets centred
    near +-pi stay intact. Normalization is by exact summation over the
    grid, never by a large-N asymptotic.
    """
    if not (0.0 < alpha <= grid.n_sites):
        raise DegenerateWidth(
            f"width coefficient must satisfy 0 < alpha <= N, got {alpha!r}"
        )
    raw = grid.k_values - k0
    # minimal-image reduction that leaves already-reduced values untouched,
    # so a k0 = 0 packet is symmetric to the last bit
    d = raw - 2.0 * np.pi * np.round(raw / (2.0 * np.pi))
    env = np.exp(-0.5 * alpha**2 * d**2)
    norm2 = float(np.sum(env**2))
    if norm2 == 0.0 or not math.isfinite(norm2):
        raise DegenerateWidth(f"normalization underflow for alpha={alpha!r}")
    return MomentumState(grid=grid, amplitudes=(env / math.sqrt(norm2)).astype(complex))


def single_site(grid: MomentumGrid, l: int) -> MomentumState:
    """The particle pinned on site l: c_k = e^{-ikl} / sqrt(N)."""
    if l != int(l) or not 1 <= int(l) <= grid.n_sites:
        raise SiteOutOfRange(f"site index must be in [1, {grid.n_sites}], got {l!r}")
    c = np.exp(-1j * grid.k_values * int(l)) / math.sqrt(grid.n_sites)
    return MomentumState(grid=grid, amplitudes=c)


def plane_wave(grid: MomentumGrid, index: int) -> MomentumState:
    """The momentum eigenstate at the given grid index (0-based, sorted k)."""
    if index != int(index) or not 0 <= int(index) < grid.n_sites:
        raise IndexOutOfRange(
            f"grid index must be in [0, {grid.n_sites - 1}], got {index!r}"
        )
    c = np.zeros(grid.n_sites, dtype=complex)
    c[int(index)] = 1.0
    return MomentumState(grid=grid, amplitudes=c)


def to_site_basis(state: MomentumState) -> SiteState:
    """a_j = N^{-1/2} sum_k e^{ikj} c_k for j = 1..N."""
    n = state.grid.n_sites
    x = np.zeros(n, dtype=np.complex128)
    x[state.grid.mode_numbers % n] = state.amplitudes
    y = np.fft.ifft(x) * math.sqrt(n)  # y[j'] = N^{-1/2} sum_m x_m e^{2pi i m j'/N}
    return SiteState(amplitudes=np.roll(y, -1))  # site j lives at y[j mod N]


def from_site_basis(state: SiteState) -> MomentumState:
    """Inverse transform, c_k = N^{-1/2} sum_j e^{-ikj} a_j."""
    n = state.n_sites
    grid = MomentumGrid.of(n)
    y = np.roll(np.asarray(state.amplitudes), 1)
    x = np.fft.fft(y) / math.sqrt(n)
    return MomentumState(grid=grid, amplitudes=x[grid.mode_numbers % n])


_STATE_RE = re.compile(r"^(?P<name>[a-z-]+)(?::(?P<args>.*))?$")


def parse_state_spec(spec: str, grid: MomentumGrid) -> MomentumState:
    """Build a state from a compact text spec.

    Forms: ``gaussian:k0=<angle>,alpha=<float>``, ``single-site:l=<int>``
    (or ``single-site``, meaning l=1), ``plane-wave:index=<int>``. Angles
    accept multiples of pi such as ``pi/2`` or ``0.25pi``.
    """
    from .cli import parse_angle  # local import; the grammar lives with the CLI

    m = _STATE_RE.match(spec.strip())
    if not m:
        raise ConfigError(f"unparseable state spec {spec!r}")
    name = m.group("name")
    kv = {}
    if m.group("args"):
        for part in m.group("args").split(","):
            if "=" not in part:
                raise ConfigError(f"state spec argument {part!r} is not key=value")
            key, val = part.split("=", 1)
            kv[key.strip()] = val.strip()
    if name == "gaussian":
        return gaussian_packet(
            grid, k0=parse_angle(kv.get("k0", "0")), alpha=float(kv.get("alpha", "10"))
        )
    if name == "single-site":
        return single_site(grid, int(kv.get("l", "1")))
    if name == "plane-wave":
        return plane_wave(grid, int(kv.get("index", "0")))
    raise ConfigError(f"unknown state kind {name!r}")


def canonical_state_spec(spec: str) -> str:
    """Normalized one-token echo of a state spec for artifact metadata."""
    return re.sub(r"\s+", "", spec.strip())
