"""Iteration, attracting-orbit search, and the constructive period-n certificate."""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend
from ._parallel import map_chunks
from .conditions import check_membership, critical_points
from .errors import (
    CertificateFailed,
    DegenerateOrbitError,
    DomainError,
    NoCriticalPointsError,
    NoOrbitFoundError,
    NumericError,
    UndefinedPointError,
)
from .maps import Interval, MapSpec, eval_F, eval_F_deriv

TRANSIENT = 100_000
MAX_PERIOD = 2000
RECURRENCE_TOL = 1e-9
REFINE_TOL = 1e-12


def _fmt(x):
    return format(x, ".17g")


def _map_args(spec: MapSpec, which: str):
    try:
        mode = backend.MAP_CODES[which]
    except KeyError:
        raise DomainError(f"unknown map {which!r}; expected F, G or hybrid") from None
    return spec.kernel.code, spec.a, spec.b, mode, 1.0 / spec.n


def iterate(spec: MapSpec, x0: float, steps: int, which: str = "F") -> np.ndarray:
    """Trajectory x0, f(x0), ..., f^steps(x0) for f in {F, G, hybrid}."""
    if steps < 0:
        raise DomainError("steps must be non-negative")
    x0 = float(x0)
    if not math.isfinite(x0):
        raise DomainError("x0 must be finite")
    traj = backend.trajectory(*_map_args(spec, which), x0, int(steps))
    if np.isnan(traj).any():
        raise UndefinedPointError(f"trajectory of {x0!r} under {which} hits 0")
    return traj


def _power_and_slope(spec, x, p):
    """F^p(x) together with (F^p)'(x) by the chain rule."""
    slope = 1.0
    for _ in range(p):
        slope *= eval_F_deriv(spec, x, 1)
        x = eval_F(spec, x)
    return x, slope


def refine_fixed_point(spec: MapSpec, x0: float, p: int, tol: float = REFINE_TOL,
                       max_iter: int = 200) -> float:
    """Solve F^p(x) = x near x0.

    Newton on F^p(x) - x inside a sign-change bracket; a step that would
    leave the bracket is halved until it fits.
    """
    def h(x):
        return _power_and_slope(spec, x, p)[0] - x

    h0 = h(x0)
    if abs(h0) < tol * 1e-3:
        return x0
    lo = hi = None
    delta = 1e-11
    while delta < 1e-2:
        xl, xr = x0 - delta, x0 + delta
        hl, hr = h(xl), h(xr)
        if hl * hr <= 0:
            lo, hi = (xl, xr) if hl > 0 or hr < 0 else (xr, xl)
            break
        delta *= 4.0
    if lo is None:
        raise NumericError(f"no sign change of F^{p}(x) - x found near {x0!r}")
    # lo carries h >= 0, hi carries h <= 0 (they may be in either spatial order)
    x = x0
    for _ in range(max_iter):
        fx, slope = _power_and_slope(spec, x, p)
        hx = fx - x
        if abs(hx) < tol and abs(hi - lo) < 1e-6:
            return x
        if hx > 0:
            lo = x
        else:
            hi = x
        left, right = min(lo, hi), max(lo, hi)
        d = slope - 1.0
        step = -hx / d if d != 0 else 0.5 * (lo + hi) - x
        for _ in range(60):
            if left < x + step < right:
                break
            step *= 0.5
        else:
            step = 0.5 * (left + right) - x
        x_new = x + step
        if x_new == x:
            if abs(hx) < tol:
                return x
            x_new = 0.5 * (left + right)
        x = x_new
    if abs(h(x)) < tol:
        return x
    raise NumericError(f"refinement of the period-{p} point did not reach {tol}")


def detect_period(traj: np.ndarray, max_period: int, tol: float) -> int:
    """Smallest p <= max_period with |traj[p] - traj[0]| < tol; 0 if none.

    A divisor d of the first hit that closes within 10 tol is preferred, so a
    slowly converging orbit is not reported at a multiple of its period.
    """
    x0 = traj[0]
    for p in range(1, min(max_period, traj.size - 1) + 1):
        if abs(traj[p] - x0) < tol:
            for d in range(1, p):
                if p % d == 0 and abs(traj[d] - x0) < 10.0 * tol:
                    return d
            return p
    return 0


def rotation_order_check(points, k: int, n: int) -> bool:
    """True when consecutive points advance by k places in the spatial order mod n."""
    pts = np.asarray(points, dtype=float)
    if pts.size != n:
        return False
    order = np.argsort(pts, kind="stable")
    if np.any(np.diff(pts[order]) < 1e-12):
        raise DegenerateOrbitError("orbit points coincide within 1e-12")
    rank = np.empty(n, dtype=int)
    rank[order] = np.arange(n)
    steps = (np.roll(rank, -1) - rank) % n
    return bool(np.all(steps == k % n))


def lap_of(x: float, y_minus: Optional[float], y_plus: Optional[float]) -> int:
    if y_minus is None:
        return 1
    if x < y_minus:
        return 1
    if x > y_plus:
        return 3
    return 2


def basic_index(spec: MapSpec, x: float) -> int:
    """Which of the n intervals of width 1/n, numbered from b-1, holds x."""
    i = math.floor(x * spec.n) - (spec.k - spec.n)
    return min(max(i, 0), spec.n - 1)


@dataclass(frozen=True)
class PeriodicOrbit:
    points: tuple
    period: int
    multiplier: float
    laps: tuple
    basic_indices: tuple
    rotation_ok: bool

    def lap_count(self, lap: int) -> int:
        return sum(1 for L in self.laps if L == lap)

    def to_dict(self):
        return {
            "points": [_fmt(x) for x in self.points],
            "period": self.period,
            "multiplier": _fmt(self.multiplier),
            "laps": list(self.laps),
            "basic_indices": list(self.basic_indices),
            "rotation_ok": self.rotation_ok,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            points=tuple(float(x) for x in d["points"]),
            period=int(d["period"]),
            multiplier=float(d["multiplier"]),
            laps=tuple(int(L) for L in d["laps"]),
            basic_indices=tuple(int(i) for i in d["basic_indices"]),
            rotation_ok=bool(d["rotation_ok"]),
        )


def _seed_value(spec, seed):
    if isinstance(seed, str):
        cp = critical_points(spec)
        if seed in ("plus", "y+", "y_plus"):
            return cp.y_plus
        if seed in ("minus", "y-", "y_minus"):
            return cp.y_minus
        raise DomainError(f"unknown seed {seed!r}")
    return float(seed)


def _start_index(points):
    nonneg = [i for i, x in enumerate(points) if x >= 0]
    if nonneg:
        return min(nonneg, key=lambda i: points[i])
    return int(np.argmax(points))


def orbit_from_point(spec: MapSpec, z: float, p: int) -> PeriodicOrbit:
    """Fill in the bookkeeping for the period-p orbit through z."""
    pts = [z]
    for _ in range(p - 1):
        pts.append(eval_F(spec, pts[-1]))
    s = _start_index(pts)
    pts = pts[s:] + pts[:s]
    try:
        cp = critical_points(spec)
        ym, yp = cp.y_minus, cp.y_plus
    except NoCriticalPointsError:
        ym = yp = None
    mult = 1.0
    for x in pts:
        mult *= eval_F_deriv(spec, x, 1)
    rotation_ok = False
    if p == spec.n:
        try:
            rotation_ok = rotation_order_check(pts, spec.k, spec.n)
        except DegenerateOrbitError:
            rotation_ok = False
    return PeriodicOrbit(
        points=tuple(pts),
        period=p,
        multiplier=mult,
        laps=tuple(lap_of(x, ym, yp) for x in pts),
        basic_indices=tuple(basic_index(spec, x) for x in pts),
        rotation_ok=rotation_ok,
    )


def find_attracting_orbit(spec: MapSpec, seed="plus", transient: int = TRANSIENT,
                          max_period: int = MAX_PERIOD, tol: float = RECURRENCE_TOL,
                          refine_tol: float = REFINE_TOL) -> PeriodicOrbit:
    """Follow a seed (a critical point by default) onto its attracting orbit.

    Points are listed in time order starting from the smallest non-negative
    point of the orbit (the largest point if all are negative).
    """
    x0 = _seed_value(spec, seed)
    code, a, b, mode, inv_n = _map_args(spec, "F")
    x = backend.advance(code, np.array([a]), b, mode, inv_n, np.array([x0]), int(transient))[0]
    traj = backend.trajectory(code, a, b, mode, inv_n, x, int(max_period))
    p = detect_period(traj, max_period, tol)
    if p == 0:
        raise NoOrbitFoundError(
            f"no recurrence within period {max_period} at a={spec.a!r}, b={spec.b_exact}"
        )
    s = _start_index(list(traj[:p]))
    z = refine_fixed_point(spec, float(traj[s]), p, refine_tol)
    return orbit_from_point(spec, z, p)


def period_at(spec: MapSpec, seed="plus", **kw) -> int:
    """Detected period of the attractor reached from ``seed``; 0 if none."""
    try:
        return find_attracting_orbit(spec, seed, **kw).period
    except (NoOrbitFoundError, NumericError):
        return 0


@dataclass(frozen=True)
class Certificate:
    u: float
    v: float
    images_u: tuple
    images_v: tuple
    basic_trace: tuple
    sign_u: float
    sign_v: float
    valid: bool
    hit_step: int = 0

    def to_dict(self):
        return {
            "u": _fmt(self.u),
            "v": _fmt(self.v),
            "images_u": [_fmt(x) for x in self.images_u],
            "images_v": [_fmt(x) for x in self.images_v],
            "basic_trace": list(self.basic_trace),
            "sign_u": _fmt(self.sign_u),
            "sign_v": _fmt(self.sign_v),
            "valid": self.valid,
            "hit_step": self.hit_step,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            u=float(d["u"]),
            v=float(d["v"]),
            images_u=tuple(float(x) for x in d["images_u"]),
            images_v=tuple(float(x) for x in d["images_v"]),
            basic_trace=tuple(int(i) for i in d["basic_trace"]),
            sign_u=float(d["sign_u"]),
            sign_v=float(d["sign_v"]),
            valid=bool(d["valid"]),
            hit_step=int(d["hit_step"]),
        )


def _invert_on(spec, target, lo, hi, tol=1e-13):
    """x in [lo, hi] with F(x) = target, F increasing there."""
    flo, fhi = eval_F(spec, lo) - target, eval_F(spec, hi) - target
    if flo > 0 or fhi < 0:
        raise NumericError(f"F - {target!r} does not change sign on [{lo!r}, {hi!r}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if eval_F(spec, mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lemma_certificate(spec: MapSpec, require_member: bool = True,
                      lap_tol: float = 1e-10) -> Certificate:
    """Build the witness pair u < v in [0, 1/n] bracketing a fixed point of F^n.

    u is the right critical point. Its forward orbit is followed through the
    basic intervals [i/n, (i+1)/n] until it enters [-1/n, 0] at step i; v is
    the point of [u, 1/n] whose i-th image, along the same itinerary on the
    increasing laps, is the left critical point. Valid means
    F^n(u) - u > 0 > F^n(v) - v, both orbits stay in laps 1 and 3, each pair
    F^j(u), F^j(v) shares a basic interval, and the u-orbit (v-orbit) stays
    within 1/(2n) of the left (right) end of its basic interval.
    """
    if require_member and not check_membership(spec).member:
        raise DomainError("spec is not a member; pass require_member=False to force")
    n = spec.n
    half = 1.0 / (2 * n)
    try:
        cp = critical_points(spec)
    except NoCriticalPointsError as exc:
        raise CertificateFailed(str(exc), step=0) from None
    ym, yp = cp.y_minus, cp.y_plus
    u = yp
    if not 0.0 < u < 1.0 / n:
        raise CertificateFailed(f"u = y+ = {u!r} is outside (0, 1/n)", step=0)

    def cell(x):
        return math.floor(x * n)

    def outer_lap(x):
        return x <= ym + lap_tol or x >= yp - lap_tol

    # forward orbit of u until it enters [-1/n, 0]
    trace = [0]
    x = u
    hit = None
    for step in range(1, n + 1):
        x = eval_F(spec, x)
        if not outer_lap(x):
            raise CertificateFailed(f"F^{step}(u) = {x!r} lies in the middle lap", step=step)
        trace.append(cell(x))
        if trace[-1] == -1:
            hit = step
            break
    if hit is None:
        raise CertificateFailed("orbit of u never reaches [-1/n, 0]", step=n)

    # pull y- back along the recorded itinerary
    target = ym
    for step in range(hit - 1, -1, -1):
        c = trace[step]
        lo, hi = c / n, (c + 1) / n
        if c == 0:
            lo = yp
        target = _invert_on(spec, target, lo, hi)
    v = target

    images_u, images_v = [u], [v]
    for _ in range(n):
        images_u.append(eval_F(spec, images_u[-1]))
        images_v.append(eval_F(spec, images_v[-1]))
    sign_u = images_u[n] - u
    sign_v = images_v[n] - v
    images_u, images_v = images_u[:n], images_v[:n]
    basic_trace = [cell(x) for x in images_u]

    ok = sign_u > 0 > sign_v and u < v
    for j in range(n):
        xu, xv = images_u[j], images_v[j]
        if j != 0 and not outer_lap(xu):
            raise CertificateFailed(f"F^{j}(u) = {xu!r} lies in the middle lap", step=j)
        if j != hit and not outer_lap(xv):
            raise CertificateFailed(f"F^{j}(v) = {xv!r} lies in the middle lap", step=j)
        left = basic_trace[j] / n
        same_cell = cell(xv) == basic_trace[j] or abs(xv - (left + 1.0 / n)) < lap_tol
        near_left = xu - left < half
        near_right = left + 1.0 / n - xv < half
        ok = ok and same_cell and near_left and near_right
    return Certificate(
        u=u,
        v=v,
        images_u=tuple(images_u),
        images_v=tuple(images_v),
        basic_trace=tuple(basic_trace),
        sign_u=sign_u,
        sign_v=sign_v,
        valid=bool(ok),
        hit_step=hit,
    )


def _basin_chunk(args):
    code, a, b, mode, inv_n, xs, orbit_sorted, period, max_iters, tol = args
    return backend.basin_block(code, a, b, mode, inv_n, xs, orbit_sorted, period, max_iters, tol)


def basin_fraction(spec: MapSpec, orbit: PeriodicOrbit, n_samples: int = 10_000,
                   sample_interval: Interval = Interval(-5.0, 5.0), max_iters: int = 100_000,
                   tol: float = 1e-9, jobs: int = 1) -> float:
    """Fraction of equally spaced samples whose trajectories settle on ``orbit``.

    Samples are the midpoints of n_samples equal cells of the interval. A
    sample counts once it comes within tol of an orbit point and stays there
    for one more full period.
    """
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1")
    w = sample_interval.width / n_samples
    xs = sample_interval.lo + (np.arange(n_samples) + 0.5) * w
    code, a, b, mode, inv_n = _map_args(spec, "F")
    orbit_sorted = np.sort(np.asarray(orbit.points, dtype=float))

    def make(chunk):
        return (code, a, b, mode, inv_n, chunk, orbit_sorted, orbit.period, int(max_iters), float(tol))

    flags = map_chunks(_basin_chunk, xs, make, jobs)
    return float(np.count_nonzero(flags)) / n_samples
