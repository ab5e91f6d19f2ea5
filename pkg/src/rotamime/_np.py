"""Pure-numpy kernels.

Every function here is vectorized over its array arguments. The batch loops
mirror the ones in ``_nb`` with the same signatures so the backend can swap
them; the numpy versions vectorize across elements and loop over time.
"""
import numpy as np
from scipy.special import erf, erfc

EOS, ARCTAN, ERF = 0, 1, 2
MAP_F, MAP_G, MAP_HYBRID = 0, 1, 2

_SQRT_PI = np.sqrt(np.pi)


def g(kind, a, x):
    x = np.asarray(x, dtype=float)
    if kind == EOS:
        e = np.exp(-a * np.abs(x))
        return np.where(x >= 0.0, 1.0 / (1.0 + e), e / (1.0 + e))
    if kind == ARCTAN:
        with np.errstate(divide="ignore", over="ignore"):
            neg = -np.arctan(1.0 / (a * x)) / np.pi
        return np.where(x >= 0.0, 0.5 + np.arctan(a * x) / np.pi, neg)
    return np.where(x >= 0.0, 0.5 + 0.5 * erf(a * x), 0.5 * erfc(-a * x))


def dg(kind, a, x, order):
    """Closed-form derivative of order 1, 2 or 3 of the kernel."""
    x = np.asarray(x, dtype=float)
    if kind == EOS:
        e = np.exp(-a * np.abs(x))
        s = e / (1.0 + e) ** 2
        if order == 1:
            return a * s
        if order == 2:
            # 1 - 2g = -sign(x) (1 - e) / (1 + e)
            return -(a * a) * s * np.sign(x) * (1.0 - e) / (1.0 + e)
        return a ** 3 * s * (1.0 - 6.0 * s)
    if kind == ARCTAN:
        u = (a * x) ** 2
        if order == 1:
            return a / (np.pi * (1.0 + u))
        if order == 2:
            return -2.0 * a ** 3 * x / (np.pi * (1.0 + u) ** 2)
        return -2.0 * a ** 3 * (1.0 - 3.0 * u) / (np.pi * (1.0 + u) ** 3)
    ph = a / _SQRT_PI * np.exp(-(a * x) ** 2)
    if order == 1:
        return ph
    if order == 2:
        return -2.0 * a * a * x * ph
    return (4.0 * a ** 4 * x * x - 2.0 * a * a) * ph


def step(kind, a, b, mode, inv_n, x):
    x = np.asarray(x, dtype=float)
    f = x + b - g(kind, a, x)
    if mode == MAP_F:
        return f
    rot = np.where(x < 0.0, x + b, np.where(x > 0.0, x + b - 1.0, np.nan))
    if mode == MAP_G:
        return rot
    return np.where(np.abs(x) <= inv_n, f, rot)


def advance(kind, a_arr, b, mode, inv_n, x0, steps):
    x = np.array(x0, dtype=float)
    for _ in range(steps):
        x = step(kind, a_arr, b, mode, inv_n, x)
    return x


def trajectory(kind, a, b, mode, inv_n, x0, steps):
    out = np.empty(steps + 1)
    x = float(x0)
    out[0] = x
    for t in range(1, steps + 1):
        x = float(step(kind, a, b, mode, inv_n, x))
        out[t] = x
    return out


def _recurrence_rows(buf, max_period, tol):
    # buf: (m, L) trajectories, one per row
    diff = np.abs(buf[:, 1:max_period + 1] - buf[:, :1])
    hit = diff < tol
    periods = np.where(hit.any(axis=1), hit.argmax(axis=1) + 1, 0)
    for i, p in enumerate(periods):
        for d in range(1, p):
            if p % d == 0 and abs(buf[i, d] - buf[i, 0]) < 10.0 * tol:
                periods[i] = d
                break
    return periods.astype(np.int64)


def scan_block(kind, a_arr, b, mode, inv_n, x0, transient, n_samples, max_period, tol):
    a_arr = np.asarray(a_arr, dtype=float)
    x = advance(kind, a_arr, b, mode, inv_n, x0, transient)
    m = max(n_samples, max_period + 1)
    buf = np.empty((a_arr.size, m))
    buf[:, 0] = x
    for t in range(1, m):
        x = step(kind, a_arr, b, mode, inv_n, x)
        buf[:, t] = x
    periods = _recurrence_rows(buf, max_period, tol)
    return buf[:, :n_samples].copy(), periods


def basin_block(kind, a, b, mode, inv_n, x0, orbit_sorted, period, max_iters, tol):
    x = np.array(x0, dtype=float)
    run = np.zeros(x.size, dtype=np.int64)
    done = np.zeros(x.size, dtype=bool)
    last = orbit_sorted.size - 1
    for _ in range(max_iters + period + 1):
        j = np.clip(np.searchsorted(orbit_sorted, x), 1, last) if last > 0 else np.zeros(x.size, int)
        d = np.abs(x - orbit_sorted[j])
        if last > 0:
            d = np.minimum(d, np.abs(x - orbit_sorted[j - 1]))
        close = d < tol
        run = np.where(close, run + 1, 0)
        done |= run > period
        if done.all():
            break
        x = step(kind, a, b, mode, inv_n, x)
    return done
