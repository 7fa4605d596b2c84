import math

import numpy as np
import pytest

from fluxring.bessel import bessel_j, bessel_j0_zero
from fluxring.errors import ConfigError, QuadratureFailure
from fluxring.ring import MomentumGrid
from fluxring.waveforms import (
    FluxWaveform,
    flux_at,
    phase_integral,
    phase_table,
    stroboscopic_rate,
)

from oracles import phase_integral_quadrature, square_segment_walk

# int_0^0.3 cos(sin(2 pi t)) dt, frozen from scipy.integrate.quad at 1e-14
SINE_F_AT_03 = 0.21899659249889766


def test_flux_at_square():
    w = FluxWaveform.square(np.pi / 2, angular_frequency=2 * np.pi)
    assert flux_at(w, 0.25) == np.pi / 2
    assert flux_at(w, 0.75) == -np.pi / 2
    assert flux_at(w, 0.0) == np.pi / 2  # boundary convention: +amp on [0, tau/2)
    assert flux_at(w, 0.5) == -np.pi / 2
    assert flux_at(w, 17.25) == np.pi / 2  # periodic extension


def test_flux_at_sine():
    w = FluxWaveform.sine(0.765 * np.pi, angular_frequency=2 * np.pi)
    assert flux_at(w, 0.25) == pytest.approx(0.765 * np.pi, abs=1e-12)


def test_flux_at_offset_and_constant():
    w = FluxWaveform.square(1.0, angular_frequency=1.0, offset=0.3)
    assert flux_at(w, 0.1) == pytest.approx(1.3)
    assert flux_at(FluxWaveform.constant(0.7), 5.0) == 0.7


def test_constant_phase_integral():
    w = FluxWaveform.constant(0.4)
    for k in (-2.0, 0.0, 1.1):
        assert phase_integral(w, k, 3.7) == pytest.approx(3.7 * math.cos(k + 0.4))


def test_square_cancels_over_period_at_half_pi():
    w = FluxWaveform.square(np.pi / 2, angular_frequency=5.0)
    k = MomentumGrid.of(64).k_values
    assert np.abs(phase_integral(w, k, w.period)).max() < 1e-15


def test_square_against_segment_walker(rng):
    for _ in range(50):
        amp = float(rng.uniform(0, np.pi))
        offset = float(rng.uniform(-np.pi, np.pi))
        omega = float(rng.uniform(0.3, 20.0))
        w = FluxWaveform.square(amp, angular_frequency=omega, offset=offset)
        k = float(rng.uniform(-np.pi, np.pi))
        t = float(rng.uniform(0.0, 10 * w.period))
        walked = square_segment_walk(amp, w.period, offset, k, t)
        assert phase_integral(w, k, t) == pytest.approx(walked, abs=1e-10)


def test_sine_frozen_value():
    w = FluxWaveform.sine(1.0, angular_frequency=2 * np.pi)
    assert phase_integral(w, 0.0, 0.3) == pytest.approx(SINE_F_AT_03, abs=1e-10)


def test_sine_against_adaptive_quadrature(rng):
    # Jacobi-Anger closed form vs direct quadrature of cos(k + phi(t))
    for _ in range(25):
        amp = float(rng.uniform(0.0, 3 * np.pi))
        offset = float(rng.uniform(-np.pi, np.pi))
        omega = float(rng.uniform(0.5, 10.0))
        w = FluxWaveform.sine(amp, angular_frequency=omega, offset=offset)
        k = float(rng.uniform(-np.pi, np.pi))
        t = float(rng.uniform(0.0, 10 * w.period))
        ref = phase_integral_quadrature(
            lambda tt: offset + amp * np.sin(omega * tt), k, t, period=w.period
        )
        assert phase_integral(w, k, t) == pytest.approx(ref, abs=1e-10)


def test_sine_stroboscopic_closed_form():
    w = FluxWaveform.sine(2.2, angular_frequency=0.9)
    k = MomentumGrid.of(32).k_values
    for n in (1, 3, 11):
        got = phase_integral(w, k, n * w.period)
        want = n * w.period * np.cos(k) * bessel_j(0, 2.2)
        assert np.abs(got - want).max() < 1e-11 * max(1.0, n * w.period)


def test_additivity_split_points(rng):
    w_sq = FluxWaveform.square(0.9, angular_frequency=3.0, offset=0.2)
    w_sn = FluxWaveform.sine(1.7, angular_frequency=3.0, offset=-0.4)
    for w in (w_sq, w_sn):
        for _ in range(25):
            k = float(rng.uniform(-np.pi, np.pi))
            t2 = float(rng.uniform(0.1, 8.0))
            t1 = float(rng.uniform(0.0, t2))
            whole = phase_integral(w, k, t2)
            split = phase_integral(w, k, t1) + phase_integral(w, k, t2, start=t1)
            assert whole == pytest.approx(split, abs=1e-12)


def test_periodic_increment(rng):
    for w in (
        FluxWaveform.square(1.1, angular_frequency=2.0, offset=0.5),
        FluxWaveform.sine(2.9, angular_frequency=2.0, offset=0.5),
    ):
        tau = w.period
        k = float(rng.uniform(-np.pi, np.pi))
        base = phase_integral(w, k, tau)
        for n in (1, 2, 7, 23):
            inc = phase_integral(w, k, (n + 1) * tau) - phase_integral(w, k, n * tau)
            assert inc == pytest.approx(base, abs=1e-12 * max(1.0, n))


def test_integral_bound(rng):
    for w in (
        FluxWaveform.square(0.7, angular_frequency=1.3),
        FluxWaveform.sine(5.0, angular_frequency=0.7),
        FluxWaveform.constant(0.2),
    ):
        for _ in range(40):
            k = float(rng.uniform(-np.pi, np.pi))
            t = float(rng.uniform(0.0, 20.0))
            assert abs(phase_integral(w, k, t)) <= t + 1e-12


def test_stroboscopic_rates():
    k = MomentumGrid.of(16).k_values
    w = FluxWaveform.sine(0.765 * np.pi, angular_frequency=1.0)
    got = stroboscopic_rate(w, k)
    assert np.abs(got - np.cos(k) * bessel_j(0, 0.765 * np.pi)).max() < 1e-15
    assert bessel_j(0, 0.765 * np.pi) == pytest.approx(7.8e-4, rel=5e-3)

    w_zero = FluxWaveform.sine(bessel_j0_zero(1), angular_frequency=1.0)
    assert np.abs(stroboscopic_rate(w_zero, k)).max() < 1e-12

    w_sq = FluxWaveform.square(np.pi / 2, angular_frequency=1.0)
    assert np.abs(stroboscopic_rate(w_sq, k)).max() < 1e-15

    w_const = FluxWaveform.constant(0.3)
    assert np.abs(stroboscopic_rate(w_const, k) - np.cos(k + 0.3)).max() == 0.0


def test_tabulated_matches_sine_second_order():
    omega = 2.0
    tau = 2 * np.pi / omega
    w_exact = FluxWaveform.sine(1.4, angular_frequency=omega)
    errs = []
    for ns in (64, 128, 256):
        ts = np.arange(ns) / ns * tau
        w_tab = FluxWaveform.tabulated(ts, 1.4 * np.sin(omega * ts), tau)
        errs.append(
            abs(phase_integral(w_tab, 0.6, 3.3) - phase_integral(w_exact, 0.6, 3.3))
        )
    # trapezoid: halving the sample spacing cuts the error ~4x
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.3)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.3)


def test_tabulated_rate_and_flux():
    tau = 3.0
    ts = np.linspace(0.0, tau, 40, endpoint=False)
    w = FluxWaveform.tabulated(ts, np.cos(2 * np.pi * ts / tau), tau, offset=0.1)
    assert flux_at(w, 0.0) == pytest.approx(1.1)
    r = stroboscopic_rate(w, 0.5)
    assert r == pytest.approx(phase_integral(w, 0.5, tau) / tau)


def test_tabulated_needs_four_samples():
    with pytest.raises(QuadratureFailure):
        FluxWaveform.tabulated([0.0, 0.5, 1.0], [0.0, 1.0, 0.0], 2.0)


def test_waveform_validation():
    with pytest.raises(ConfigError):
        FluxWaveform.square(1.0, angular_frequency=-1.0)
    with pytest.raises(ConfigError):
        FluxWaveform.sine(1.0)  # no frequency given
    with pytest.raises(ConfigError):
        FluxWaveform(kind="sawtooth")


def test_phase_table_invariants():
    grid = MomentumGrid.of(12)
    w = FluxWaveform.sine(1.0, angular_frequency=2.0)
    times = np.linspace(0.0, 5.0, 11)
    table = phase_table(w, grid, times)
    assert np.all(table.phases[0] == 0.0)
    bound = times[:, None] + 1e-12
    assert np.all(np.abs(table.phases) <= bound)
