"""Hot numeric kernels: numba fast path with a pure-numpy fallback.

The time-average of |sum_k w_k e^{i theta_k(t)}| over long horizons is the
cost centre of every sweep. Phases are accumulated incrementally: within a
drive period the factors e^{i 2J f_k(s_j)} are precomputed once, and the
per-period factor advances a base phase, so the cost is one complex
multiply-accumulate per (time sample, mode) instead of a fresh integral.

Set FLUXRING_NUMBA=0 in the environment to force the numpy path. The two
paths differ only in summation order; agreement is ~1e-12 over millions of
samples and is checked in the tests. ``benchmarks/bench_kernels.py``
compares their throughput.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("FLUXRING_NUMBA", "1").strip().lower()
_want_numba = _flag not in ("0", "false", "no", "off")
if _want_numba:
    try:
        from numba import njit
    except ImportError:
        _want_numba = False

USING_NUMBA = _want_numba


def _avg_abs_overlap_py(w, ucum, uper, n_steps, out):
    m, _ = ucum.shape
    wc = w.astype(np.complex128)
    z = np.ones(ucum.shape[1], dtype=np.complex128)
    store = out.size > 0
    total = 0.0
    first = last = 0.0
    i = 0
    while i <= n_steps:
        cnt = min(m, n_steps + 1 - i)
        vals = np.abs((ucum[:cnt] * z) @ wc)
        if store:
            out[i : i + cnt] = vals
        total += float(vals.sum())
        if i == 0:
            first = float(vals[0])
        if i + cnt - 1 == n_steps:
            last = float(vals[-1])
        z = z * uper
        i += cnt
    return (total - 0.5 * (first + last)) / n_steps


if USING_NUMBA:

    @njit(cache=True, nogil=True)
    def _avg_abs_overlap_nb(w, ucum, uper, n_steps, out):  # pragma: no cover
        m, nk = ucum.shape
        zr = np.ones(nk)
        zi = np.zeros(nk)
        store = out.shape[0] > 0
        total = 0.0
        first = 0.0
        last = 0.0
        j = 0
        for i in range(n_steps + 1):
            if i > 0 and j == 0:
                for k in range(nk):
                    re = zr[k] * uper[k].real - zi[k] * uper[k].imag
                    zi[k] = zr[k] * uper[k].imag + zi[k] * uper[k].real
                    zr[k] = re
            sr = 0.0
            si = 0.0
            for k in range(nk):
                ur = ucum[j, k].real
                ui = ucum[j, k].imag
                sr += w[k] * (zr[k] * ur - zi[k] * ui)
                si += w[k] * (zr[k] * ui + zi[k] * ur)
            f = np.sqrt(sr * sr + si * si)
            total += f
            if i == 0:
                first = f
            if i == n_steps:
                last = f
            if store:
                out[i] = f
            j += 1
            if j == m:
                j = 0
        return (total - 0.5 * (first + last)) / n_steps


def average_abs_overlap(w, ucum, uper, n_steps, want_series=False):
    """Trapezoid mean of F_i = |sum_k w_k z_k(i)| over i = 0..n_steps.

    z_k(i) = uper_k^(i // m) * ucum[i % m, k] with m = ucum.shape[0].
    Returns (average, series_or_None); the series has n_steps + 1 entries.
    """
    w = np.ascontiguousarray(w, dtype=np.float64)
    ucum = np.ascontiguousarray(ucum, dtype=np.complex128)
    uper = np.ascontiguousarray(uper, dtype=np.complex128)
    out = np.empty(n_steps + 1 if want_series else 0, dtype=np.float64)
    if USING_NUMBA:
        avg = _avg_abs_overlap_nb(w, ucum, uper, int(n_steps), out)
    else:
        avg = _avg_abs_overlap_py(w, ucum, uper, int(n_steps), out)
    return avg, (out if want_series else None)
