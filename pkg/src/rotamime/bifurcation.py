"""Parameter sweeps in the steepness a, periodic windows, and return maps."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import backend
from ._parallel import map_chunks
from .conditions import critical_points, critical_threshold
from .errors import (
    BracketError,
    DegenerateConfigurationError,
    DomainError,
    NoOrbitFoundError,
    NumericError,
)
from .farey import farey_parents, format_rational, is_farey_neighbor
from .maps import Interval, KernelFamily, MapSpec, eval_g, eval_hybrid
from .orbit import MAX_PERIOD, RECURRENCE_TOL, TRANSIENT, find_attracting_orbit, period_at

SEEDS = ("minus", "plus")
MIN_WINDOW_POINTS = 3
GRAPH_POINTS = 512


@dataclass(frozen=True)
class ScanRecord:
    a: float
    seed_id: str
    attractor_points: tuple
    detected_period: Optional[int]

    @property
    def is_marker(self) -> bool:
        return not self.attractor_points and self.detected_period is None


@dataclass(frozen=True)
class PeriodicWindow:
    a_range: Interval
    q: int
    p: Optional[int]
    farey_verdict: str

    def to_dict(self):
        return {
            "a_lo": format(self.a_range.lo, ".17g"),
            "a_hi": format(self.a_range.hi, ".17g"),
            "q": self.q,
            "p": self.p,
            "verdict": self.farey_verdict,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(Interval(float(d["a_lo"]), float(d["a_hi"])), int(d["q"]),
                   None if d["p"] is None else int(d["p"]), d["verdict"])


@dataclass
class ScanResult:
    b_exact: Fraction
    kernel_tag: str
    records: list
    windows: list = field(default_factory=list)
    which: str = "F"

    def spec_at(self, a: float) -> MapSpec:
        return MapSpec(KernelFamily(self.kernel_tag, a), self.b_exact)


def a_grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise DomainError("a_step must be positive")
    if hi < lo:
        raise DomainError("empty a range")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(count), 12)


def _scan_chunk(args):
    code, a_arr, b, mode, inv_n, x0, transient, n_samples, max_period, tol = args
    return backend.scan_block(code, a_arr, b, mode, inv_n, x0, transient, n_samples, max_period, tol)


def scan(b_exact: Fraction, kernel: str = "eos", a_range: Interval = Interval(100.0, 180.0),
         a_step: float = 0.1, transient: int = TRANSIENT, n_samples: int = 100,
         max_period: int = MAX_PERIOD, tol: float = RECURRENCE_TOL, which: str = "F",
         jobs: int = 1, grid: Optional[np.ndarray] = None) -> ScanResult:
    """Attractor samples from both critical points at every grid value of a.

    Grid points at or below the kernel's critical threshold produce an empty
    marker record per seed. Records come back sorted by (a, seed).
    """
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1")
    grid = a_grid(a_range.lo, a_range.hi, a_step) if grid is None else np.asarray(grid, dtype=float)
    thr = critical_threshold(kernel)
    live = grid[grid > thr]
    code = backend.KERNEL_CODES[kernel]
    mode = backend.MAP_CODES[which]
    b = float(b_exact)
    inv_n = 1.0 / b_exact.denominator

    # one task element per (a, seed); the y- seed first
    a_rep = np.repeat(live, 2)
    seeds = np.empty_like(a_rep)
    for i, a in enumerate(live):
        cp = critical_points(MapSpec(KernelFamily(kernel, a), b_exact))
        seeds[2 * i], seeds[2 * i + 1] = cp.y_minus, cp.y_plus
    idx = np.arange(a_rep.size)

    def make(chunk):
        return (code, a_rep[chunk], b, mode, inv_n, seeds[chunk], int(transient),
                int(n_samples), int(max_period), float(tol))

    if a_rep.size:
        samples, periods = map_chunks(_scan_chunk, idx, make, jobs)
    else:
        samples, periods = np.empty((0, n_samples)), np.empty(0, dtype=np.int64)

    records = []
    j = 0
    for a in grid:
        if a <= thr:
            records.extend(ScanRecord(float(a), s, (), None) for s in SEEDS)
            continue
        for s in SEEDS:
            p = int(periods[j])
            records.append(ScanRecord(float(a), s, tuple(float(x) for x in samples[j]), p or None))
            j += 1
    return ScanResult(b_exact, kernel, records, which=which)


def grid_periods(result: ScanResult):
    """(a, q) per grid point, q = None unless both seeds report the same period."""
    by_a = {}
    for r in result.records:
        by_a.setdefault(r.a, []).append(r.detected_period)
    out = []
    for a in sorted(by_a):
        ps = by_a[a]
        q = ps[0] if len(ps) == 2 and ps[0] == ps[1] else None
        out.append((a, q))
    return out


def lap_count_p(spec: MapSpec, orbit) -> int:
    """Number of orbit points carried across the glued endpoint b-1 ~ b.

    These are the lap-3 points plus any lap-2 point with g(x) > b, i.e. right
    of the fixed point of F. For a rotation-like orbit of period q this is
    the numerator of its rotation number p/q.
    """
    b = spec.b
    return sum(1 for x, lap in zip(orbit.points, orbit.laps)
               if lap == 3 or (lap == 2 and eval_g(spec, x) > b))


def farey_verdict(pq: Fraction, b_exact: Fraction) -> str:
    if is_farey_neighbor(pq, b_exact):
        lo_den, hi_den = farey_parents(b_exact)
        if pq == hi_den:
            return "parent_larger_den"
        if pq == lo_den:
            return "parent_smaller_den"
    return "not_neighbor"


def classify(result: ScanResult, a: float, q: int):
    """(p, verdict) from the refined orbit at ``a``."""
    spec = result.spec_at(a)
    try:
        orbit = find_attracting_orbit(spec, "plus")
    except (NoOrbitFoundError, NumericError):
        return None, "not_neighbor"
    if orbit.period != q:
        return None, "not_neighbor"
    p = lap_count_p(spec, orbit)
    if p == 0 or p >= q:
        return p, "not_neighbor"
    return p, farey_verdict(Fraction(p, q), result.b_exact)


def detect_windows(result: ScanResult, min_points: int = MIN_WINDOW_POINTS) -> list:
    """Maximal runs of equal agreed period, at least ``min_points`` grid points long.

    p and the Farey verdict come from the refined orbit at the middle grid
    point of each run. The windows are also stored on ``result``.
    """
    runs = []
    for a, q in grid_periods(result):
        if q is not None and runs and runs[-1][0] == q and runs[-1][2]:
            runs[-1][1].append(a)
        else:
            runs.append((q, [a], q is not None))
    windows = []
    for q, pts, ok in runs:
        if not ok or len(pts) < max(min_points, 2):
            continue
        p, verdict = classify(result, pts[len(pts) // 2], q)
        windows.append(PeriodicWindow(Interval(pts[0], pts[-1]), q, p, verdict))
    result.windows = windows
    return windows


def birth_parameter(b_exact: Fraction, kernel: str = "eos", target_period: int = 11,
                    bracket: Interval = Interval(100.0, 180.0), tol: float = 1e-4,
                    transient: int = TRANSIENT) -> float:
    """Bisect on a for the switch to an attractor of ``target_period`` from both seeds."""
    def has_target(a):
        spec = MapSpec(KernelFamily(kernel, a), b_exact)
        return all(period_at(spec, s, transient=transient) == target_period for s in SEEDS)

    lo, hi = bracket.lo, bracket.hi
    if has_target(lo) or not has_target(hi):
        raise BracketError(
            f"period {target_period} does not switch on inside [{lo}, {hi}] for b={format_rational(b_exact)}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if has_target(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -- return maps of the hybrid map ----------------------------------------------

@dataclass(frozen=True)
class ReturnMapData:
    j: int
    J: Interval
    r: int
    K: Interval
    graph: tuple

    def to_dict(self):
        return {
            "j": self.j,
            "J": self.J.to_list(),
            "r": self.r,
            "K": self.K.to_list(),
            "graph": [[format(x, ".17g"), format(y, ".17g")] for x, y in self.graph],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["j"]), Interval.from_list(d["J"]), int(d["r"]), Interval.from_list(d["K"]),
                   tuple((float(x), float(y)) for x, y in d["graph"]))


def _cell(n, x):
    """Index j of I_j = [(j-1)/n, j/n] containing x."""
    return math.floor(x * n) + 1


def _bisect(fn, lo, hi, tol=1e-15):
    """Root of fn on [lo, hi] given a sign change."""
    f_lo = fn(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
        f_mid = fn(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _hybrid_power(spec, x, r):
    for _ in range(r):
        x = eval_hybrid(spec, x)
    return x


def hybrid_n(spec: MapSpec, x: float) -> float:
    """n-th iterate of the hybrid map."""
    return _hybrid_power(spec, x, spec.n)


def _J_interval(spec: MapSpec, j: int) -> Interval:
    """Largest piece of I_j whose F-image shares a basic interval with its G-image.

    On the right of 0, F = G + g(-x), so for j = 1 the condition is
    x + g(-x) <= 1/n, which holds on an interval around y+. J_0 = -J_1.
    """
    cp = critical_points(spec)
    w = 1.0 / spec.n

    def excess(x):
        return x + eval_g(spec, -x) - w

    if excess(cp.y_plus) >= 0:
        raise DegenerateConfigurationError("F(y+) already leaves the basic interval of G(y+)")
    J1 = Interval(_bisect(excess, 0.0, cp.y_plus), _bisect(excess, cp.y_plus, w))
    return J1 if j == 1 else Interval(-J1.hi, -J1.lo)


def _image(spec: MapSpec, lo: float, hi: float):
    """Image of [lo, hi] under the hybrid map: endpoints plus any critical point inside."""
    xs = [lo, hi]
    if min(abs(lo), abs(hi)) <= 1.0 / spec.n:
        cp = critical_points(spec)
        xs += [c for c in (cp.y_minus, cp.y_plus) if lo < c < hi]
    ys = [eval_hybrid(spec, x) for x in xs]
    return min(ys), max(ys)


def _locate(n, lo, hi, tol=1e-12):
    c = _cell(n, 0.5 * (lo + hi))
    if lo < (c - 1) / n - tol or hi > c / n + tol:
        raise DegenerateConfigurationError(f"[{lo!r}, {hi!r}] straddles a basic-interval boundary")
    return c


def _return_time(spec: MapSpec, J: Interval, j: int) -> int:
    lo, hi = J.lo, J.hi
    for r in range(1, spec.n + 1):
        lo, hi = _image(spec, lo, hi)
        if _locate(spec.n, lo, hi) == 1 - j:
            return r
    raise DegenerateConfigurationError(f"J_{j} never reaches I_{1 - j}")


def _turning_points(spec, lo, hi, r, c_here, c_there):
    """Where hybrid^n = hybrid^(n-r) o hybrid^r can turn inside [lo, hi].

    hybrid^r turns at the critical point c_here of this side; hybrid^(n-r)
    turns where hybrid^r hits the critical point c_there of the other side.
    """
    pts = [lo, hi]
    pieces = [(lo, hi)]
    if lo < c_here < hi:
        pts.append(c_here)
        pieces = [(lo, c_here), (c_here, hi)]

    def miss(x):
        return _hybrid_power(spec, x, r) - c_there

    for p, q in pieces:
        if miss(p) * miss(q) < 0:
            pts.append(_bisect(miss, p, q))
    return pts


def _invariant_hull(spec: MapSpec, J: Interval, r: int, c_here: float, c_there: float,
                    tol: float = 1e-14, max_rounds: int = 100_000) -> Interval:
    """Smallest interval containing c_here that hybrid^n maps into itself.

    Starts from the single point and grows it by its own image until the
    image stops poking out by more than ``tol``.
    """
    lo = hi = c_here
    for _ in range(max_rounds):
        ys = [hybrid_n(spec, x) for x in _turning_points(spec, lo, hi, r, c_here, c_there)]
        new_lo, new_hi = min(lo, min(ys)), max(hi, max(ys))
        if new_lo < J.lo or new_hi > J.hi:
            raise DegenerateConfigurationError("no invariant interval for the n-th iterate inside J")
        if new_lo >= lo - tol and new_hi <= hi + tol:
            return Interval(new_lo, new_hi)
        lo, hi = new_lo, new_hi
    raise NumericError("invariant interval did not settle")


def return_map(b_exact: Fraction, kernel: str, a: float, j: int,
               graph_points: int = GRAPH_POINTS) -> ReturnMapData:
    """First-return data of the hybrid map on I_0 = [-1/n, 0] (j=0) or I_1 = [0, 1/n] (j=1)."""
    if j not in (0, 1):
        raise DomainError("j must be 0 or 1")
    spec = MapSpec(KernelFamily(kernel, a), b_exact)
    J = _J_interval(spec, j)
    r = _return_time(spec, J, j)
    cp = critical_points(spec)
    c_here, c_there = (cp.y_plus, cp.y_minus) if j == 1 else (cp.y_minus, cp.y_plus)
    K = _invariant_hull(spec, J, r, c_here, c_there)
    xs = np.linspace(J.lo, J.hi, graph_points)
    graph = tuple((float(x), _hybrid_power(spec, float(x), r)) for x in xs)
    return ReturnMapData(j, J, r, K, graph)
