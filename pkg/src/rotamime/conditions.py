"""Critical points and membership in the class of rotation-like maps.

Membership is decided by checking conditions A (three laps with g' = 1 at
the critical points), B (g(b-1) < b < g(b)) and C (the correction is small
outside [-1/(2n), 1/(2n)] and near the critical points). Every check carries
an absolute margin: the slack of its inequality in double precision. No
interval arithmetic is attempted.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _np
from .errors import BracketError, NoCriticalPointsError, NumericError
from .farey import format_rational
from .maps import Interval, KernelFamily, MapSpec, eval_F, eval_g

CHECK_IDS = ("A1", "A2", "A3", "B", "C1", "C2", "C3", "C4")
LAP_SAMPLES = 10_000
_CRIT_TOL = 1e-9


def _fmt(x):
    return None if x is None else format(x, ".17g")


def _unfmt(s):
    return None if s is None else float(s)


@dataclass(frozen=True)
class CriticalPair:
    y_minus: float
    y_plus: float
    t_minus: Optional[float] = None
    t_plus: Optional[float] = None

    def to_dict(self):
        return {k: _fmt(v) for k, v in self.__dict__.items()}

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: _unfmt(v) for k, v in d.items()})


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    margin: Optional[float]

    def to_dict(self):
        return {"id": self.id, "passed": self.passed, "margin": _fmt(self.margin)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["id"], bool(d["passed"]), _unfmt(d["margin"]))


@dataclass(frozen=True)
class ConditionReport:
    spec: MapSpec
    critical: Optional[CriticalPair]
    epsilon: float
    checks: tuple
    member: bool
    y_plus_slack: Optional[float] = None

    def check(self, cid: str) -> Check:
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "critical": None if self.critical is None else self.critical.to_dict(),
            "epsilon": _fmt(self.epsilon),
            "checks": [c.to_dict() for c in self.checks],
            "member": self.member,
            "y_plus_slack": _fmt(self.y_plus_slack),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            spec=MapSpec.from_dict(d["spec"]),
            critical=None if d["critical"] is None else CriticalPair.from_dict(d["critical"]),
            epsilon=float(d["epsilon"]),
            checks=tuple(Check.from_dict(c) for c in d["checks"]),
            member=bool(d["member"]),
            y_plus_slack=_unfmt(d.get("y_plus_slack")),
        )


def critical_threshold(tag: str) -> float:
    """Smallest steepness (exclusive) at which g' = 1 has two solutions."""
    return {"eos": 4.0, "arctan": math.pi, "erf": math.sqrt(math.pi)}[tag]


def critical_points(spec: MapSpec) -> CriticalPair:
    a, tag = spec.a, spec.kernel.tag
    if a <= critical_threshold(tag):
        raise NoCriticalPointsError(
            f"{tag} kernel needs a > {critical_threshold(tag):.6g} for g' = 1, got a = {a!r}"
        )
    t_minus = t_plus = None
    if tag == "eos":
        # roots of (t + 1)^2 - a t; the product of the roots is 1
        t_minus = ((a - 2.0) + math.sqrt(a * a - 4.0 * a)) / 2.0
        t_plus = 1.0 / t_minus
        y = math.log(t_minus) / a
    elif tag == "arctan":
        y = math.sqrt(a / math.pi - 1.0) / a
    else:
        y = math.sqrt(math.log(a / math.sqrt(math.pi))) / a
    code = spec.kernel.code
    for yy in (-y, y):
        resid = abs(float(_np.dg(code, a, yy, 1)) - 1.0)
        if resid > _CRIT_TOL:
            raise NumericError(f"g'({yy!r}) - 1 = {resid:.3g} exceeds {_CRIT_TOL}")
    return CriticalPair(-y, y, t_minus, t_plus)


def epsilon_min(spec: MapSpec) -> float:
    h = 1.0 / (2 * spec.n)
    return max(eval_g(spec, -h), 1.0 - eval_g(spec, h))


def _lap_grids(spec, cp, samples):
    lo, hi = spec.b - 1.0, spec.b
    lap1 = np.linspace(lo, cp.y_minus, samples + 1)[:-1] if cp.y_minus > lo else np.empty(0)
    lap3 = np.linspace(cp.y_plus, hi, samples + 1)[1:] if cp.y_plus < hi else np.empty(0)
    lap2 = np.linspace(cp.y_minus, cp.y_plus, samples + 2)[1:-1]
    return np.concatenate([lap1, lap3]), lap2


def check_membership(spec: MapSpec, samples: int = LAP_SAMPLES) -> ConditionReport:
    """Evaluate every condition and return the report with margins.

    epsilon is the smallest value C1 and C2 allow. Because C1 and C2 bound g
    on open half-lines, that value is feasible with zero slack, so those two
    checks pass at margin >= 0 while all others need margin > 0.
    """
    n, b = spec.n, spec.b
    code, a = spec.kernel.code, spec.a
    eps = epsilon_min(spec)
    h = 1.0 / (2 * n)
    checks = {}

    c1 = eps - eval_g(spec, -h)
    c2 = eps - (1.0 - eval_g(spec, h))
    checks["C1"] = Check("C1", c1 >= 0, c1)
    checks["C2"] = Check("C2", c2 >= 0, c2)
    mb = min(b - eval_g(spec, b - 1.0), eval_g(spec, b) - b)
    checks["B"] = Check("B", mb > 0, mb)

    try:
        cp = critical_points(spec)
    except (NoCriticalPointsError, NumericError):
        cp = None

    y_plus_slack = None
    if cp is None:
        for cid in ("A1", "A2", "A3", "C3", "C4"):
            checks[cid] = Check(cid, False, None)
    else:
        outer, inner = _lap_grids(spec, cp, samples)
        if outer.size:
            d = _np.dg(code, a, outer, 1)
            m1 = float(min(d.min(), (1.0 - d).min()))
        else:
            m1 = -math.inf
        checks["A1"] = Check("A1", m1 > 0, m1)
        m2 = min(cp.y_minus - (b - 1.0), b - cp.y_plus, cp.y_plus, -cp.y_minus)
        checks["A2"] = Check("A2", m2 > 0, m2)
        m3 = float((_np.dg(code, a, inner, 1) - 1.0).min())
        checks["A3"] = Check("A3", m3 > 0, m3)

        g_plus = eval_g(spec, cp.y_plus)
        g_minus = eval_g(spec, cp.y_minus)
        budget = (n - 1) * eps
        m_c3 = min(1.0 - g_plus - budget, h - (1.0 - g_plus + cp.y_plus) - budget)
        m_c4 = min(g_minus - budget, h - (g_minus - cp.y_minus) - budget)
        checks["C3"] = Check("C3", m_c3 > 0, m_c3)
        checks["C4"] = Check("C4", m_c4 > 0, m_c4)
        y_plus_slack = h - cp.y_plus

    ordered = tuple(checks[cid] for cid in CHECK_IDS)
    return ConditionReport(
        spec=spec,
        critical=cp,
        epsilon=eps,
        checks=ordered,
        member=all(c.passed for c in ordered),
        y_plus_slack=y_plus_slack,
    )


@dataclass(frozen=True)
class InvariantIntervalCheck:
    ok: bool
    margins: dict = field(default_factory=dict)


def invariant_interval_check(spec: MapSpec) -> InvariantIntervalCheck:
    """Does F map [b-1, b] into itself?

    Extrema of F on the interval sit at the endpoints and the critical
    points, so four evaluations settle it.
    """
    b = spec.b
    margins = {
        "left_end": eval_F(spec, b - 1.0) - (b - 1.0),
        "right_end": b - eval_F(spec, b),
    }
    try:
        cp = critical_points(spec)
    except NoCriticalPointsError:
        cp = None
    if cp is not None:
        margins["local_max"] = b - eval_F(spec, cp.y_minus)
        margins["local_min"] = eval_F(spec, cp.y_plus) - (b - 1.0)
    return InvariantIntervalCheck(all(m > 0 for m in margins.values()), margins)


def membership_threshold(b_exact, kernel_tag: str = "eos", search: Interval = Interval(4.0, 200.0),
                         tol: float = 1e-6, samples: int = LAP_SAMPLES) -> float:
    """Smallest a in ``search`` where membership switches on, found by bisection.

    Membership for the eos kernel is eventually monotone in a. That is an
    empirical observation, so the result is checked once more at a + 1e-3.
    """
    spec = MapSpec(KernelFamily(kernel_tag, search.hi), b_exact)

    def member(a):
        return check_membership(spec.with_a(a), samples).member

    lo, hi = search.lo, search.hi
    if member(lo) or not member(hi):
        raise BracketError(
            f"membership for b={format_rational(b_exact)} does not switch on inside [{lo}, {hi}]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if member(mid):
            hi = mid
        else:
            lo = mid
    if not member(hi + 1e-3):
        raise NumericError(f"membership at a={hi!r} is not stable under a small increase")
    return hi
