"""Exact rational bookkeeping: reduced k/n, Farey parents and neighbors.

Fractions are :class:`fractions.Fraction`, which keeps them reduced; the
``make_rational`` constructor additionally refuses unreduced input so that
2/4 is an error rather than silently becoming 1/2.
"""
from fractions import Fraction
from math import gcd

from .errors import DomainError, NoParentsError

Rational = Fraction


def make_rational(k: int, n: int) -> Fraction:
    """Return k/n for coprime 0 < k < n; anything else is a DomainError."""
    if isinstance(k, bool) or isinstance(n, bool) or not isinstance(k, int) or not isinstance(n, int):
        raise DomainError(f"k and n must be integers, got {k!r}, {n!r}")
    if not 0 < k < n:
        raise DomainError(f"need 0 < k < n, got {k}/{n}")
    if gcd(k, n) != 1:
        raise DomainError(f"{k}/{n} is not in lowest terms")
    return Fraction(k, n)


def parse_rational(text: str) -> Fraction:
    k, _, n = text.partition("/")
    return make_rational(int(k), int(n))


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def farey_parents(r: Fraction) -> tuple:
    """Farey parents of ``r``, ordered by denominator (then by value).

    The left parent p/q solves k*q - n*p = 1 with 0 < q < n, i.e. q is the
    inverse of k modulo n; the right parent is what is left of the mediant.

    >>> farey_parents(Fraction(3, 11))
    (Fraction(1, 4), Fraction(2, 7))
    """
    k, n = r.numerator, r.denominator
    if not 0 < k < n:
        raise NoParentsError(f"{format_rational(r)} has no Farey parents")
    q = pow(k, -1, n) if n > 1 else 1
    p = (k * q - 1) // n
    left = Fraction(p, q)
    right = Fraction(k - p, n - q)
    return tuple(sorted((left, right), key=lambda f: (f.denominator, f)))


def larger_denominator_parent(r: Fraction) -> Fraction:
    return farey_parents(r)[1]


def is_farey_neighbor(x: Fraction, y: Fraction) -> bool:
    return abs(x.numerator * y.denominator - x.denominator * y.numerator) == 1
