"""numba-compiled kernels; same signatures as ``_np``."""
import math

import numpy as np
from numba import njit

EOS, ARCTAN, ERF = 0, 1, 2
MAP_F, MAP_G, MAP_HYBRID = 0, 1, 2


@njit(cache=True)
def g(kind, a, x):
    if kind == EOS:
        e = math.exp(-a * abs(x))
        if x >= 0.0:
            return 1.0 / (1.0 + e)
        return e / (1.0 + e)
    if kind == ARCTAN:
        if x >= 0.0:
            return 0.5 + math.atan(a * x) / math.pi
        return -math.atan(1.0 / (a * x)) / math.pi
    if x >= 0.0:
        return 0.5 + 0.5 * math.erf(a * x)
    return 0.5 * math.erfc(-a * x)


@njit(cache=True)
def dg1(kind, a, x):
    if kind == EOS:
        e = math.exp(-a * abs(x))
        return a * e / ((1.0 + e) * (1.0 + e))
    if kind == ARCTAN:
        return a / (math.pi * (1.0 + (a * x) ** 2))
    return a / math.sqrt(math.pi) * math.exp(-(a * x) ** 2)


@njit(cache=True)
def step(kind, a, b, mode, inv_n, x):
    if mode == MAP_F or (mode == MAP_HYBRID and abs(x) <= inv_n):
        return x + b - g(kind, a, x)
    if x < 0.0:
        return x + b
    if x > 0.0:
        return x + b - 1.0
    return math.nan


@njit(cache=True)
def advance(kind, a_arr, b, mode, inv_n, x0, steps):
    out = np.empty(x0.size)
    for i in range(x0.size):
        x = x0[i]
        a = a_arr[i]
        for _ in range(steps):
            x = step(kind, a, b, mode, inv_n, x)
        out[i] = x
    return out


@njit(cache=True)
def trajectory(kind, a, b, mode, inv_n, x0, steps):
    out = np.empty(steps + 1)
    x = x0
    out[0] = x
    for t in range(1, steps + 1):
        x = step(kind, a, b, mode, inv_n, x)
        out[t] = x
    return out


@njit(cache=True)
def _recurrence(buf, max_period, tol):
    x0 = buf[0]
    for p in range(1, max_period + 1):
        if abs(buf[p] - x0) < tol:
            for d in range(1, p):
                if p % d == 0 and abs(buf[d] - x0) < 10.0 * tol:
                    return d
            return p
    return 0


@njit(cache=True)
def scan_block(kind, a_arr, b, mode, inv_n, x0, transient, n_samples, max_period, tol):
    m = max(n_samples, max_period + 1)
    samples = np.empty((a_arr.size, n_samples))
    periods = np.zeros(a_arr.size, dtype=np.int64)
    buf = np.empty(m)
    for i in range(a_arr.size):
        a = a_arr[i]
        x = x0[i]
        for _ in range(transient):
            x = step(kind, a, b, mode, inv_n, x)
        buf[0] = x
        for t in range(1, m):
            x = step(kind, a, b, mode, inv_n, x)
            buf[t] = x
        samples[i, :] = buf[:n_samples]
        periods[i] = _recurrence(buf, max_period, tol)
    return samples, periods


@njit(cache=True)
def _distance(orbit_sorted, x):
    j = np.searchsorted(orbit_sorted, x)
    d = math.inf
    if j < orbit_sorted.size:
        d = abs(orbit_sorted[j] - x)
    if j > 0:
        d = min(d, abs(x - orbit_sorted[j - 1]))
    return d


@njit(cache=True)
def basin_block(kind, a, b, mode, inv_n, x0, orbit_sorted, period, max_iters, tol):
    done = np.zeros(x0.size, dtype=np.bool_)
    for i in range(x0.size):
        x = x0[i]
        run = 0
        for _ in range(max_iters + period + 1):
            if _distance(orbit_sorted, x) < tol:
                run += 1
                if run > period:
                    done[i] = True
                    break
            else:
                run = 0
            x = step(kind, a, b, mode, inv_n, x)
    return done
