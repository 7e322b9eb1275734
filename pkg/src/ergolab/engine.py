"""Compiled orbit kernels.

One scalar step/evaluation path feeds every consumer (single-point traces,
batched probes), so a reported escaper replays to bit-identical averages.
Running sums use Kahan compensation; horizons up to 1e7 stay well inside
the accumulation tolerance.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

SYS_DOUBLING = 0
SYS_ROTATION = 1
SYS_SKEW = 2
SYS_VIANA = 3

_EMPTY = np.empty(0, dtype=np.float64)


@njit(cache=True, inline="always")
def _obs_eval(code, oparams, kx, ky, x, y):
    if code == 0:  # cos(2 pi x)
        return np.cos(2.0 * np.pi * x)
    if code == 1:  # fiber height
        return y
    if code == 2:  # constant
        return oparams[0]
    # piecewise linear with endpoint clamping
    if x <= kx[0]:
        return ky[0]
    n = kx.shape[0]
    if x >= kx[n - 1]:
        return ky[n - 1]
    lo = 0
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if kx[mid] <= x:
            lo = mid
        else:
            hi = mid
    slope = (ky[lo + 1] - ky[lo]) / (kx[lo + 1] - kx[lo])
    return ky[lo] + slope * (x - kx[lo])


@njit(cache=True, inline="always")
def _sys_step(code, sparams, x, y):
    """One map application; returns (x', y', escaped)."""
    if code == SYS_DOUBLING:
        return (sparams[0] * x) % 1.0, y, False
    if code == SYS_ROTATION:
        return (x + sparams[0]) % 1.0, y, False
    if code == SYS_SKEW:
        if sparams[1] == 0.0:
            g = np.cos(2.0 * np.pi * x)
        else:
            g = x
        return (x + sparams[0]) % 1.0, (y + g) % 1.0, False
    # Viana: sparams = (d, a0, alpha, y_lo, y_hi)
    y_new = sparams[1] + sparams[2] * np.sin(2.0 * np.pi * x) - y * y
    escaped = y_new < sparams[3] or y_new > sparams[4]
    return (sparams[0] * x) % 1.0, y_new, escaped


@njit(cache=True)
def orbit_psi_series(sys_code, sparams, obs_code, oparams, kx, ky, x0, y0, horizon):
    """psi_n for n = 1..horizon along the orbit of a single float state.

    Returns (psi, escape_step); escape_step = -1 when the orbit stays in.
    """
    psi = np.empty(horizon, dtype=np.float64)
    x = x0
    y = y0
    s = 0.0
    c = 0.0
    for n in range(1, horizon + 1):
        v = _obs_eval(obs_code, oparams, kx, ky, x, y)
        t = v - c
        u = s + t
        c = (u - s) - t
        s = u
        psi[n - 1] = s / n
        x, y, escaped = _sys_step(sys_code, sparams, x, y)
        if escaped:
            return psi[: n], n
    return psi, -1


@njit(cache=True, parallel=True)
def orbit_tail_stats(sys_code, sparams, obs_code, oparams, kx, ky,
                     xs, ys, tail_start, horizon):
    """Tail min/max of psi_n over n in [tail_start, horizon], batched.

    Performs the identical scalar arithmetic as orbit_psi_series, so the
    min/max equal those of the stored series for the same start.
    """
    m = xs.shape[0]
    lo = np.empty(m, dtype=np.float64)
    hi = np.empty(m, dtype=np.float64)
    escape = np.empty(m, dtype=np.int64)
    for i in prange(m):
        x = xs[i]
        y = ys[i]
        s = 0.0
        c = 0.0
        lo_i = np.inf
        hi_i = -np.inf
        esc = -1
        for n in range(1, horizon + 1):
            v = _obs_eval(obs_code, oparams, kx, ky, x, y)
            t = v - c
            u = s + t
            c = (u - s) - t
            s = u
            if n >= tail_start:
                p = s / n
                if p < lo_i:
                    lo_i = p
                if p > hi_i:
                    hi_i = p
            x, y, escaped = _sys_step(sys_code, sparams, x, y)
            if escaped:
                esc = n
                break
        lo[i] = lo_i
        hi[i] = hi_i
        escape[i] = esc
    return lo, hi, escape


@njit(cache=True)
def kahan_cumsum(values):
    """Compensated running sums of a precomputed value array."""
    n = values.shape[0]
    out = np.empty(n, dtype=np.float64)
    s = 0.0
    c = 0.0
    for i in range(n):
        t = values[i] - c
        u = s + t
        c = (u - s) - t
        s = u
        out[i] = s
    return out


def system_kernel_args(system):
    """(sys_code, params) for the compiled kernels; None if the system has
    no float-orbit kernel (shift spaces are handled exactly elsewhere)."""
    kind = system.kind
    if kind == "doubling":
        return SYS_DOUBLING, np.array([float(system.d), 0.0, 0.0, 0.0, 0.0])
    if kind == "rotation":
        return SYS_ROTATION, np.array([float(system.theta), 0.0, 0.0, 0.0, 0.0])
    if kind == "skew":
        fib = 0.0 if system.fiber == "cos_circle" else 1.0
        return SYS_SKEW, np.array([float(system.theta), fib, 0.0, 0.0, 0.0])
    if kind == "viana":
        y_lo, y_hi = system.y_domain
        return SYS_VIANA, np.array(
            [float(system.d), float(system.a0), float(system.alpha),
             float(y_lo), float(y_hi)]
        )
    return None


def observable_kernel_args(observable):
    """(obs_code, params, knots_x, knots_y) or None if not kernel-capable."""
    if observable.kernel_code < 0:
        return None
    if observable.kernel_code == 3:
        xs, ys = observable.table
        return (3, _EMPTY, np.asarray(xs, dtype=np.float64),
                np.asarray(ys, dtype=np.float64))
    params = np.asarray(observable.kernel_params, dtype=np.float64)
    if params.size == 0:
        params = _EMPTY
    return observable.kernel_code, params, _EMPTY, _EMPTY
