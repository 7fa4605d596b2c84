#!/usr/bin/env python3
"""Benchmark the averaging kernel: numba fast path vs pure-numpy fallback.

The workload is one desk-scale sweep cell: average fidelity of a Gaussian
packet under a square drive over T = 25 N / J. Run with

    python benchmarks/bench_kernels.py [--n 200] [--repeat 3]

The numpy path can also be forced package-wide with FLUXRING_NUMBA=0.
"""

import argparse
import time

import numpy as np

from fluxring import _kernels
from fluxring.evolution import SamplingPolicy, average_fidelity_value
from fluxring.ring import RingConfig, momentum_grid
from fluxring.states import gaussian_packet, single_site
from fluxring.waveforms import FluxWaveform


def run_case(state, cfg, w, horizon, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = average_fidelity_value(state, cfg, w, horizon)
        best = min(best, time.perf_counter() - t0)
    return value, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cfg = RingConfig(args.n)
    grid = momentum_grid(cfg)
    horizon = 25.0 * args.n
    cases = {
        "gaussian alpha=50, square pi/2, nu=3": (
            gaussian_packet(grid, 0.0, 50.0),
            FluxWaveform.square(np.pi / 2, frequency=3.0),
        ),
        "single-site, square pi/2, nu=3": (
            single_site(grid, 1),
            FluxWaveform.square(np.pi / 2, frequency=3.0),
        ),
        "single-site, sine 0.765pi, nu=0.5": (
            single_site(grid, 1),
            FluxWaveform.sine(0.765 * np.pi, frequency=0.5),
        ),
    }

    # warm up the JIT before timing
    if _kernels.USING_NUMBA:
        st, w = next(iter(cases.values()))
        average_fidelity_value(st, cfg, w, 10.0)

    print(f"N={args.n}, horizon T={horizon:g}/J, best of {args.repeat}")
    print(f"{'case':45s} {'numba' if _kernels.USING_NUMBA else 'numpy':>10s}   numpy    speedup")
    for name, (st, w) in cases.items():
        v_fast, t_fast = run_case(st, cfg, w, horizon, args.repeat)
        saved = _kernels.USING_NUMBA
        if saved:
            _kernels.USING_NUMBA = False
        try:
            v_slow, t_slow = run_case(st, cfg, w, horizon, args.repeat)
        finally:
            _kernels.USING_NUMBA = saved
        agree = abs(v_fast - v_slow)
        print(
            f"{name:45s} {t_fast * 1e3:8.1f}ms {t_slow * 1e3:8.1f}ms "
            f"{t_slow / t_fast:7.1f}x   |diff|={agree:.1e}"
        )


if __name__ == "__main__":
    main()
