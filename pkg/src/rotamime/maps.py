"""The interval-map family F(x) = x + b - g(x) and its companions.

``g`` is one of three symmetric sigmoids (logistic "eos", arctan, erf) with a
steepness ``a``. Alongside F this module provides the piecewise translation G
that is a rotation by b once b-1 and b are glued, the hybrid map that uses F
on [-1/n, 1/n] and G elsewhere, the correction F - G, and the multiplicative
weights map that is conjugate to F on (0, 1).

Sigmoids are evaluated branch-wise so nothing overflows; for |a x| beyond the
double exp range (about 745) the value saturates to exactly 0 or 1.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _np
from .backend import KERNEL_CODES
from .errors import CriticalPointError, DomainError, UndefinedPointError
from .farey import format_rational, make_rational

KERNEL_TAGS = tuple(KERNEL_CODES)


@dataclass(frozen=True)
class KernelFamily:
    tag: str
    a: float

    def __post_init__(self):
        if self.tag not in KERNEL_CODES:
            raise DomainError(f"unknown kernel {self.tag!r}; expected one of {KERNEL_TAGS}")
        a = float(self.a)
        if not (math.isfinite(a) and a > 0):
            raise DomainError(f"steepness must be positive and finite, got {self.a!r}")
        object.__setattr__(self, "a", a)

    @property
    def code(self) -> int:
        return KERNEL_CODES[self.tag]


@dataclass(frozen=True)
class MapSpec:
    kernel: KernelFamily
    b_exact: Fraction

    def __post_init__(self):
        b = self.b_exact
        if not isinstance(b, Fraction) or not 0 < b < 1:
            raise DomainError(f"b must be a Fraction in (0, 1), got {b!r}")

    @classmethod
    def from_kn(cls, k: int, n: int, a: float, tag: str = "eos") -> "MapSpec":
        return cls(KernelFamily(tag, a), make_rational(k, n))

    @property
    def a(self) -> float:
        return self.kernel.a

    @property
    def b(self) -> float:
        return float(self.b_exact)

    @property
    def k(self) -> int:
        return self.b_exact.numerator

    @property
    def n(self) -> int:
        return self.b_exact.denominator

    def with_a(self, a: float) -> "MapSpec":
        return MapSpec(KernelFamily(self.kernel.tag, a), self.b_exact)

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel.tag,
            "a": format(self.a, ".17g"),
            "b": format_rational(self.b_exact),
            "b_float": format(self.b, ".17g"),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MapSpec":
        k, _, n = d["b"].partition("/")
        return cls.from_kn(int(k), int(n), float(d["a"]), d["kernel"])


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_list(self) -> list:
        return [format(self.lo, ".17g"), format(self.hi, ".17g")]

    @classmethod
    def from_list(cls, pair) -> "Interval":
        return cls(float(pair[0]), float(pair[1]))


def _finite(x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    return x


def eval_g(spec: MapSpec, x: float) -> float:
    x = _finite(x)
    return float(_np.g(spec.kernel.code, spec.a, x))


def eval_g_deriv(spec: MapSpec, x: float, order: int) -> float:
    if order not in (1, 2, 3):
        raise DomainError(f"derivative order must be 1, 2 or 3, got {order!r}")
    return float(_np.dg(spec.kernel.code, spec.a, _finite(x), order))


def eval_F(spec: MapSpec, x: float) -> float:
    x = _finite(x)
    return x + spec.b - float(_np.g(spec.kernel.code, spec.a, x))


def eval_F_deriv(spec: MapSpec, x: float, order: int = 1) -> float:
    d = eval_g_deriv(spec, x, order)
    return 1.0 - d if order == 1 else -d


def schwarzian(spec: MapSpec, x: float, tol: float = 1e-12) -> float:
    """F'''/F' - 3/2 (F''/F')**2, refusing points where |F'| < tol."""
    d1 = eval_F_deriv(spec, x, 1)
    if abs(d1) < tol:
        raise CriticalPointError(f"F'({x!r}) = {d1!r} is too close to zero")
    d2 = eval_F_deriv(spec, x, 2)
    d3 = eval_F_deriv(spec, x, 3)
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


def eval_G(b: float, x: float) -> float:
    x = _finite(x)
    b = float(b)
    if x < 0:
        return x + b
    if x > 0:
        return x + b - 1.0
    raise UndefinedPointError("G is not defined at 0")


def rotation_power(b_exact: Fraction, x, i: int):
    """G^i(x) computed in exact rational arithmetic.

    A float ``x`` is converted to its exact binary value and a float comes
    back; a Fraction stays a Fraction. Either way G^n(x) == x exactly on
    [b-1, b) for b = k/n.
    """
    if i < 0:
        raise DomainError("i must be non-negative")
    exact = isinstance(x, Fraction)
    y = x if exact else Fraction(_finite(x))
    for _ in range(i):
        if y == 0:
            raise UndefinedPointError("orbit of G hits 0")
        y = y + b_exact if y < 0 else y + b_exact - 1
    return y if exact else float(y)


def eval_hybrid(spec: MapSpec, x: float) -> float:
    x = _finite(x)
    if abs(x) <= 1.0 / spec.n:
        return eval_F(spec, x)
    return eval_G(spec.b, x)


def correction(spec: MapSpec, x: float) -> float:
    """F(x) - G(x); equals sgn(x) g(-|x|) by the symmetry of g."""
    x = _finite(x)
    if x == 0:
        raise UndefinedPointError("the correction is not defined at 0")
    c = float(_np.g(spec.kernel.code, spec.a, -abs(x)))
    return c if x > 0 else -c


def _mw_parts(a, b, y):
    y = float(y)
    if not 0.0 < y < 1.0:
        raise DomainError(f"y must lie in (0, 1), got {y!r}")
    w = (1.0 - y) * math.exp(a * (y - b))
    den = y + w
    return y / den, w / den


def eval_mw(a: float, b: float, y: float) -> float:
    """Multiplicative-weights update y / (y + (1 - y) exp(a (y - b)))."""
    return _mw_parts(a, b, y)[0]


def conjugacy_residual(a: float, b: float, y: float) -> float:
    """|F(h(y)) - h(f_MW(y))| with h(y) = log(y / (1 - y)) / a (eos kernel)."""
    f, f_c = _mw_parts(a, b, y)
    h_y = math.log(y / (1.0 - y)) / a
    h_f = (math.log(f) - math.log(f_c)) / a
    g_h = float(_np.g(_np.EOS, a, h_y))
    return abs(h_y + b - g_h - h_f)


def pp_rescale(spec: MapSpec):
    """Parameters (B, kk) of f_PP(x) = x + B - kk / (1 + e^x) conjugate to F via x = kk z."""
    if spec.kernel.tag != "eos":
        raise DomainError("the predator-prey form exists for the eos kernel only")
    kk = -spec.a
    return spec.b * kk, kk


def vectorized_F(spec: MapSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x + spec.b - _np.g(spec.kernel.code, spec.a, x)
